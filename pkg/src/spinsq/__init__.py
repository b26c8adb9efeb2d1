"""Generalized spin squeezing inequalities and bound entanglement in thermal spin models.

Qubit 0 is the most significant Kronecker factor throughout.
"""

from .analysis import (
    BoundWindow,
    BracketExceededError,
    CriticalTemperature,
    SweepRow,
    bound_window,
    critical_temperature,
    detection_margin,
    j2_sweep,
    table1,
    window_from,
)
from .criteria import (
    DETECTION_TOLERANCE,
    CriterionReport,
    DirectionReport,
    ExtremePoints,
    eval_dicke_criterion,
    eval_observation1,
    eval_standard_squeezing,
    extreme_points,
    optimal_directions,
    rotate_moments,
    separable_extreme_A,
    separable_extreme_B,
)
from .linalg import (
    Bipartition,
    HermitianEig,
    bipartitions,
    expm_hermitian_normalized,
    hermitian_eig,
    kron,
    partial_trace,
    partial_transpose,
    realign,
    trace_norm,
)
from .models import ModelSpec, ThermalPoint, hamiltonian, susceptibility, thermal_state
from .separability import (
    NPT_TOLERANCE,
    BipartitionVerdicts,
    ccnr_all,
    ppt_all,
    two_qubit_ppt_margin,
)
from .spin import (
    CollectiveMoments,
    avg_two_qubit_state,
    collective_j,
    collective_rotation,
    moments_from_state,
    product_state,
    reference_state,
    rotation_matrix,
)

__version__ = "0.1.0"
