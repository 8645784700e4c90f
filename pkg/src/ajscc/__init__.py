"""Desk-scale lab for rectangular-type analog joint source channel coding."""

from .channel import ChannelParams, measure_signal_power, noise_sigma, transmit
from .circuit import (
    CircuitConfig,
    LevelState,
    Region,
    SurfaceGrid,
    circuit_encode,
    circuit_encode_many,
    comparator_bank,
    level_output,
    stage_surface,
    vcvs_type1,
    vcvs_type2,
)
from .errors import BomFormatError, ParameterError, RangeError
from .experiments import (
    SweepRecord,
    SweepSpec,
    TransferPoint,
    compute_sdr,
    run_sdr_vs_csnr,
    sweep_vh_fixed_vt,
    sweep_vt_fixed_vh,
)
from .mapping import (
    DecodedReading,
    EncodedValue,
    MappingParams,
    NormalizedReading,
    SensorReading,
    decode,
    decode_many,
    encode,
    encode_bruteforce,
    encode_many,
    project_bruteforce_many,
    quantize_level,
    remove_offset,
    s_max,
)
from .power_cost import BomReport, ComponentSpec, derive_bom, estimate_cost, estimate_power, load_bom
from .presets import (
    default_circuit,
    ideal_circuit,
    paper_bom,
    paper_mapping,
    prototype_bom,
    prototype_mapping,
)

__version__ = "0.1.0"
