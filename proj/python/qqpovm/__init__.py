"""Order effects of binary POVM questions.

Thin Python layer over the C++ core: POVM validation, sequential outcome
probabilities, the QQ statistic and its operator, zero-state scans, Neumark
liftings and Monte Carlo estimates.
"""

from ._core import (
    BinaryMeasurement,
    Convention,
    Dilation,
    DimensionError,
    InvalidMeasurementError,
    InvalidStateError,
    ModelFile,
    ModelParseError,
    NotPsdError,
    Order,
    QuantumState,
    UnsupportedConventionError,
    ZeroProbabilityError,
    common_space_lift,
    convergence_sweep,
    dilate_binary,
    eig_hermitian,
    is_hermitian,
    lifted_qq_check,
    load_model,
    max_violation,
    outcome_distribution,
    parse_model,
    post_state,
    principal_sqrt,
    qq_operator,
    qq_statistic,
    reference,
    sequential_joint_prob,
    simulate,
    update_operator,
    validate_measurement,
    verify_dilation,
    zero_manifold_scan,
    zero_state_condition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
