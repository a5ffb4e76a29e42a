"""Error budgeting for phase-estimation runs.

The target total energy accuracy epsilon maps to a dimensionless circuit
error delta = epsilon / lambda.  A fixed 0.9 / 0.1 split assigns the bulk to
the finite-readout (phase-estimation) error, whose cost scales inverse
linearly, and the remainder to synthesis errors, which contribute only
logarithmically.  The synthesis share is divided equally among the
sub-errors the chosen algorithm actually has.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "AlgorithmKind",
    "ErrorBudget",
    "budget_from_target",
    "readout_digits",
    "PEA_FRACTION",
]

PEA_FRACTION = 0.9


class AlgorithmKind(Enum):
    QDRIFT = "qdrift"
    RANDOM_TROTTER2 = "random_trotter2"
    TAYLORIZATION = "taylorization"
    QUBITIZATION_SEQUENTIAL = "qubitization_sequential"
    QUBITIZATION_PRODUCT = "qubitization_product"


# synthesis sub-errors actually present, per algorithm
_SUB_ERRORS = {
    AlgorithmKind.QDRIFT: ("delta_hs", "delta_rot"),
    AlgorithmKind.RANDOM_TROTTER2: ("delta_hs", "delta_rot"),
    AlgorithmKind.TAYLORIZATION: ("delta_hs", "delta_prep"),
    AlgorithmKind.QUBITIZATION_SEQUENTIAL: ("delta_prep",),
    AlgorithmKind.QUBITIZATION_PRODUCT: ("delta_prep",),
}


@dataclass(frozen=True)
class ErrorBudget:
    epsilon: float
    lam: float
    algorithm: AlgorithmKind
    delta_total: float
    delta_pea: float
    delta_syn: float
    delta_hs: float
    delta_rot: float
    delta_prep: float
    r: int
    m: int


def readout_digits(r: int) -> int:
    """Smallest m with 2**m > r."""
    if r < 1:
        raise ValueError(f"repetition count must be >= 1, got {r}")
    return r.bit_length()


def repetitions(delta_pea: float) -> int:
    return math.ceil(math.pi / (2.0 * delta_pea))


def budget_from_target(
    epsilon: float, lam: float, algorithm: AlgorithmKind
) -> ErrorBudget:
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    delta_total = epsilon / lam
    delta_pea = PEA_FRACTION * delta_total
    delta_syn = delta_total - delta_pea
    slots = _SUB_ERRORS[algorithm]
    shares = {"delta_hs": 0.0, "delta_rot": 0.0, "delta_prep": 0.0}
    for name in slots:
        shares[name] = delta_syn / len(slots)
    r = repetitions(delta_pea)
    return ErrorBudget(
        epsilon=epsilon,
        lam=lam,
        algorithm=algorithm,
        delta_total=delta_total,
        delta_pea=delta_pea,
        delta_syn=delta_syn,
        r=r,
        m=readout_digits(r),
        **shares,
    )
