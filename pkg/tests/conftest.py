import pytest

from ajscc import default_circuit, ideal_circuit, paper_mapping, prototype_mapping


@pytest.fixture
def params():
    return paper_mapping()


@pytest.fixture
def proto_params():
    return prototype_mapping()


@pytest.fixture
def circuit_cfg():
    return default_circuit()


@pytest.fixture
def ideal_cfg(params):
    return ideal_circuit(params)
