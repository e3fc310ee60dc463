"""Gram searches, finite-dimensional states, sign rounding and the halting representation."""

from .gram import (
    GramCertificate,
    InfeasibleReport,
    certificate_residual,
    expand_certificate,
    read_certificate,
    sos_search,
    trace_sos_search,
    write_certificate,
)
from .halting import (
    BlockMatrix,
    BlockRep,
    StateEvaluation,
    eval_state_alpha,
    eval_sync_state_beta,
    expected_tau_pq,
    halting_rep,
    tau_pq,
)
from .inequalities import (
    CalibrationFinding,
    PropertySummary,
    calibration_report,
    run_inequality_suite,
)
from .quotients import (
    CommutativeQuotient,
    FreeStarQuotient,
    InvolutiveQuotient,
    Quotient,
    motzkin,
)
from .rounding import RoundingReport, hermitian_sign, sign_round
from .states import (
    EpsilonMode,
    FiniteState,
    TensorState,
    epsilon_of,
    synchronous_state,
    tracial_state,
    vector_state,
)

__all__ = [
    "BlockMatrix",
    "BlockRep",
    "CalibrationFinding",
    "CommutativeQuotient",
    "EpsilonMode",
    "FiniteState",
    "FreeStarQuotient",
    "GramCertificate",
    "InfeasibleReport",
    "InvolutiveQuotient",
    "PropertySummary",
    "Quotient",
    "RoundingReport",
    "StateEvaluation",
    "TensorState",
    "calibration_report",
    "certificate_residual",
    "epsilon_of",
    "eval_state_alpha",
    "eval_sync_state_beta",
    "expand_certificate",
    "expected_tau_pq",
    "halting_rep",
    "hermitian_sign",
    "motzkin",
    "read_certificate",
    "run_inequality_suite",
    "sign_round",
    "sos_search",
    "synchronous_state",
    "tau_pq",
    "trace_sos_search",
    "tracial_state",
    "vector_state",
    "write_certificate",
]
