"""Wedge-product entanglement measures for pure multipartite states."""

from ._kernels import active_backend
from .ketlang import KetExpr, evaluate, parse_ket, pretty
from .lu import (
    InvarianceRun,
    UnitaryGate,
    apply_local,
    haar_unitary,
    invariance_experiment,
    standard_normals,
    trial_rng,
)
from .measures import (
    MeasureConfig,
    MeasureKind,
    MeasureResult,
    bipartite_concurrence,
    multipartite_measure,
    pair_coefficient,
    pair_qubit_concurrence,
    resolve_measure,
    swapped_wedge_coefficient,
    tripartite_measure,
)
from .multilinear import Permutation, TensorGrid, alt, grid_norm_sq, signature, wedge_pair
from .separability import (
    PartitionVerdict,
    SeparabilityReport,
    is_product_state,
    partition_residual,
    separability_report,
)
from .statefile import load_state, save_state
from .states import (
    Bipartition,
    DensityMatrix,
    PureState,
    enumerate_bipartitions,
    matricize,
    normalize,
    partial_trace,
    purity,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "DensityMatrix",
    "InvarianceRun",
    "KetExpr",
    "MeasureConfig",
    "MeasureKind",
    "MeasureResult",
    "Permutation",
    "PureState",
    "SeparabilityReport",
    "PartitionVerdict",
    "TensorGrid",
    "UnitaryGate",
    "active_backend",
    "alt",
    "apply_local",
    "bipartite_concurrence",
    "enumerate_bipartitions",
    "evaluate",
    "grid_norm_sq",
    "haar_unitary",
    "invariance_experiment",
    "standard_normals",
    "is_product_state",
    "load_state",
    "matricize",
    "multipartite_measure",
    "normalize",
    "pair_coefficient",
    "pair_qubit_concurrence",
    "resolve_measure",
    "parse_ket",
    "partial_trace",
    "partition_residual",
    "pretty",
    "purity",
    "save_state",
    "separability_report",
    "signature",
    "swapped_wedge_coefficient",
    "trial_rng",
    "tripartite_measure",
    "validate",
    "wedge_pair",
]
