"""Canned parameter sets for the reference sensor pair and prototype board.

The sensor pair is an AD22100-style temperature sensor (1.375-3.625 V for
0-100 C) and an HIH4000-style humidity sensor (0.8-3.8 V for 0-100 %RH),
mapped with 10% humidity resolution (delta_h = 0.3 V), 11 levels, and a 1:5
divider (gain 0.2, so v_r = 0.45 V).
"""

from __future__ import annotations

from .circuit import CircuitConfig
from .mapping import MappingParams
from .power_cost import ComponentSpec


def paper_mapping() -> MappingParams:
    """Default mapping: connector arc length equal to delta_h (full adder formula)."""
    return MappingParams(
        delta_h=0.3,
        v_r=0.45,
        num_levels=11,
        gain=0.2,
        connector_len=0.3,
        t_offset=1.375,
        t_max_raw=3.625,
        h_offset=0.8,
        h_max_raw=3.8,
    )


def prototype_mapping() -> MappingParams:
    """Measured-board variant: connectors contribute no arc length."""
    return MappingParams(
        delta_h=0.3,
        v_r=0.45,
        num_levels=11,
        gain=0.2,
        connector_len=0.0,
        t_offset=1.375,
        t_max_raw=3.625,
        h_offset=0.8,
        h_max_raw=3.8,
    )


def default_circuit() -> CircuitConfig:
    """Behavioral circuit defaults; mux saturation input resolves to v_r."""
    return CircuitConfig()


def ideal_circuit(params: MappingParams) -> CircuitConfig:
    """Non-ideality-free config whose saturation input matches the mapping pitch."""
    return CircuitConfig(
        sat_margin=0.0,
        sat_margin_low=0.0,
        saturation_voltage=params.v_r + params.connector_len,
        threshold_tolerance=0.0,
    )


def paper_bom() -> list[ComponentSpec]:
    """Low-power IC bill of materials for the 11-level board (power only)."""
    return [
        ComponentSpec("op-amp", 16, 8e-6, 0.0),
        ComponentSpec("comparator", 17, 12.7e-9, 0.0),
        ComponentSpec("analog-multiplexer", 11, 10e-9, 0.0),
    ]


def prototype_bom() -> list[ComponentSpec]:
    """COTS prototype board: 3 mA at a 5 V supply, about $25 of parts."""
    return [ComponentSpec("ajscc-pcb (COTS)", 1, 0.003 * 5.0, 25.0)]
