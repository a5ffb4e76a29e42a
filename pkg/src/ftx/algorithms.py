"""T-count models for the five phase-estimation back-ends.

Each back-end converts a TermTable plus an ErrorBudget into a CostReport.
Trotter-family costs are rotation counts times a synthesis cost; the
block-encoding back-ends are repetition counts times a walk-step cost built
from the coefficient-loading (PREPARE) and term-application (SELECT) oracle
closed forms.

Published comparison tables for these models mix two repetition
accountings.  Both are provided: SINGLE_SHOT reads out all m digits in one
run whose failure probability is bounded by `p_fail`; HODGES_LEHMANN uses
the median-of-runs estimate with its smaller constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .budget import AlgorithmKind, ErrorBudget, budget_from_target
from .gatecosts import (
    DEFAULT_CONSTANTS,
    SynthesisConstants,
    bits_for,
    tcount_controlled_rotation,
    tcount_mcx,
    tcount_rotation,
)
from .lattices import TermTable

__all__ = [
    "RepetitionAccounting",
    "OracleFlavor",
    "CostReport",
    "tcount_select_sequential",
    "select_cost",
    "select_cost_closed_form",
    "prepare_cost",
    "qdrift_cost",
    "trotter2_cost",
    "taylor_order",
    "taylorization_cost",
    "qubitization_cost",
    "estimate_all",
    "asp_time_estimate",
]


class RepetitionAccounting(Enum):
    SINGLE_SHOT = "single_shot"
    HODGES_LEHMANN = "hodges_lehmann"


class OracleFlavor(Enum):
    SEQUENTIAL = "sequential"
    PRODUCT = "product"


# Hodges-Lehmann rotation-count constant for stochastic compilation, and the
# single-shot constant 133 / ((3/2) p_fail)^3 it improves on.
HL_QDRIFT_CONSTANT = 35.5192
SINGLE_SHOT_CONSTANT = 133.0
DEFAULT_P_FAIL = 0.5

INTERACTION_BODIES = 2  # all three target models couple pairs of sites


@dataclass(frozen=True)
class CostReport:
    algorithm: AlgorithmKind
    n_rotations: int
    t_count_total: int
    t_count_per_select: int
    t_depth_per_select: int
    repetitions: int
    n_logical: int
    budget: ErrorBudget
    taylor_order: Optional[int] = None
    oracle_costs: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        if self.t_depth_per_select > self.t_count_per_select:
            raise ValueError("per-call T-depth cannot exceed per-call T-count")

    def to_dict(self) -> dict:
        b = self.budget
        return {
            "algorithm": self.algorithm.value,
            "n_rotations": self.n_rotations,
            "t_count_total": self.t_count_total,
            "t_count_per_select": self.t_count_per_select,
            "t_depth_per_select": self.t_depth_per_select,
            "repetitions": self.repetitions,
            "n_logical": self.n_logical,
            "taylor_order": self.taylor_order,
            "oracle_costs": dict(self.oracle_costs),
            "budget": {
                "epsilon": b.epsilon,
                "lambda": b.lam,
                "delta_total": b.delta_total,
                "delta_pea": b.delta_pea,
                "delta_syn": b.delta_syn,
                "delta_hs": b.delta_hs,
                "delta_rot": b.delta_rot,
                "delta_prep": b.delta_prep,
                "r": b.r,
                "m": b.m,
            },
        }


def _require_terms(table: TermTable) -> None:
    if table.count == 0 or table.lam <= 0:
        raise ValueError("cost model needs a non-empty term table")


# ---------------------------------------------------------------------------
# oracle closed forms


def tcount_select_sequential(n_terms: int) -> int:
    """Unary iteration applying one Pauli per index: 4L - 4 T gates."""
    if n_terms < 1:
        raise ValueError(f"need at least one term, got {n_terms}")
    return max(0, 4 * n_terms - 4)


def select_cost(table: TermTable, flavor: OracleFlavor) -> tuple[int, int]:
    """(T-count, extra ancilla) of one term-application oracle call."""
    _require_terms(table)
    if flavor is OracleFlavor.SEQUENTIAL:
        return tcount_select_sequential(table.count), table.index_bits - 1
    if table.family == "fermi_hubbard":
        t = 10 * table.n_system
    elif table.family in ("heisenberg2d", "chain"):
        # 48 S N_site - 4 written in qubit count: n_system = 2S * N_site
        t = 24 * table.n_system - 4
    else:
        raise ValueError(f"no product-form oracle for family {table.family!r}")
    return t, INTERACTION_BODIES * table.system_bits


def select_cost_closed_form(
    family: str, flavor: OracleFlavor, n_site: int, spin: float = 0.5
) -> int:
    """Periodic-lattice closed forms, used for flavor-ratio comparisons."""
    if family == "fermi_hubbard":
        n = 2 * n_site
        return 10 * n if flavor is OracleFlavor.PRODUCT else 18 * n
    if family in ("heisenberg2d", "chain"):
        if flavor is OracleFlavor.PRODUCT:
            return round(48 * spin * n_site) - 4
        factor = 192 if family == "heisenberg2d" else 48
        return round(factor * spin * spin * n_site) - 4
    raise ValueError(f"unknown family {family!r}")


# (coefficient of log N, number of synthesized rotations) per family/flavor
_PREP_FORMS = {
    ("heisenberg2d", OracleFlavor.SEQUENTIAL): (8, 4),
    ("heisenberg2d", OracleFlavor.PRODUCT): (14, 7),
    ("fermi_hubbard", OracleFlavor.SEQUENTIAL): (8, 4),
    ("fermi_hubbard", OracleFlavor.PRODUCT): (16, 6),
    ("chain", OracleFlavor.SEQUENTIAL): (8, 8),
    ("chain", OracleFlavor.PRODUCT): (12, 8),
}


def prepare_cost(
    table: TermTable,
    flavor: OracleFlavor,
    budget: ErrorBudget,
    consts: SynthesisConstants = DEFAULT_CONSTANTS,
    variant: str = "default",
) -> tuple[int, int]:
    """(T-count, ancilla) of one coefficient-loading oracle call.

    The synthesis accuracy assigns the preparation error share equally over
    the rotations of every call: delta_ss = delta_prep / (2 r n_rot).
    `variant="alternate"` selects the coarser 20 log N + 48 log(1/delta_ss)
    form quoted for the product Heisenberg oracle.
    """
    _require_terms(table)
    key = (table.family, flavor)
    if key not in _PREP_FORMS:
        raise ValueError(f"no preparation form for {key}")
    coeff, n_rot = _PREP_FORMS[key]
    delta_prep = budget.delta_prep if budget.delta_prep > 0 else budget.delta_syn
    delta_ss = delta_prep / (2 * budget.r * n_rot)
    log_n = table.system_bits
    if variant == "alternate":
        if key != ("heisenberg2d", OracleFlavor.PRODUCT):
            raise ValueError("alternate form exists only for the product Heisenberg oracle")
        t = 20 * log_n + math.ceil(48 * math.log2(1.0 / delta_ss))
    else:
        t = coeff * log_n + math.ceil(
            n_rot * consts.gamma * math.log2(1.0 / delta_ss)
        )
    index_extra = bits_for(table.n_alpha * table.n_mu)
    if flavor is OracleFlavor.SEQUENTIAL:
        ancilla = log_n + index_extra
    else:
        ancilla = (INTERACTION_BODIES + 1) * log_n + index_extra
    return t, ancilla


# ---------------------------------------------------------------------------
# Trotter family


def _qdrift_rotations(
    lam: float,
    epsilon: float,
    accounting: RepetitionAccounting,
    p_fail: float,
) -> int:
    ratio = (lam / epsilon) ** 2
    if accounting is RepetitionAccounting.HODGES_LEHMANN:
        return math.ceil(HL_QDRIFT_CONSTANT * ratio)
    if not 0.0 < p_fail < 1.0:
        raise ValueError(f"p_fail must lie in (0, 1), got {p_fail}")
    return math.ceil(SINGLE_SHOT_CONSTANT * ratio / (1.5 * p_fail) ** 3)


def qdrift_cost(
    table: TermTable,
    budget: ErrorBudget,
    consts: SynthesisConstants = DEFAULT_CONSTANTS,
    accounting: RepetitionAccounting = RepetitionAccounting.SINGLE_SHOT,
    p_fail: float = DEFAULT_P_FAIL,
) -> CostReport:
    """Stochastic compilation: rotations sampled by weight, one per step."""
    _require_terms(table)
    n_rot = _qdrift_rotations(table.lam, budget.epsilon, accounting, p_fail)
    delta_ss = budget.delta_syn / (2 * n_rot)
    per_rotation = tcount_controlled_rotation(1, delta_ss, consts)
    return CostReport(
        algorithm=AlgorithmKind.QDRIFT,
        n_rotations=n_rot,
        t_count_total=n_rot * per_rotation,
        t_count_per_select=per_rotation,
        t_depth_per_select=per_rotation,
        repetitions=budget.r,
        n_logical=table.n_system + budget.m,
        budget=budget,
        oracle_costs=(("delta_ss", delta_ss), ("t_per_rotation", per_rotation)),
    )


def trotter2_cost(
    table: TermTable,
    budget: ErrorBudget,
    consts: SynthesisConstants = DEFAULT_CONSTANTS,
) -> CostReport:
    """Randomized second-order product formula."""
    _require_terms(table)
    n_rot = math.ceil(
        16.0 * table.lam_max**3 * table.count**2 / budget.epsilon**1.5
    )
    delta_ss = budget.delta_syn / (2 * n_rot)
    per_rotation = tcount_rotation(delta_ss, consts)
    return CostReport(
        algorithm=AlgorithmKind.RANDOM_TROTTER2,
        n_rotations=n_rot,
        t_count_total=n_rot * per_rotation,
        t_count_per_select=per_rotation,
        t_depth_per_select=per_rotation,
        repetitions=budget.r,
        n_logical=table.n_system + budget.m,
        budget=budget,
        oracle_costs=(("delta_ss", delta_ss), ("t_per_rotation", per_rotation)),
    )


# ---------------------------------------------------------------------------
# block-encoding family


def taylor_order(r: int, delta_hs: float) -> int:
    """Series truncation order covering r segments at accuracy delta_hs."""
    if r < 1:
        raise ValueError(f"segment count must be >= 1, got {r}")
    if not 0.0 < delta_hs < 1.0:
        raise ValueError(f"delta_hs must lie in (0, 1), got {delta_hs}")
    x = math.log(2.0 * r / delta_hs)
    if x <= 0:
        raise ValueError("arguments make the inner logarithm non-positive")
    k = math.ceil(-1.0 + 2.0 * x / (math.log(x) + 1.0))
    if k < 1:
        raise ValueError(f"truncation order must be >= 1, got {k}")
    return k


def taylorization_cost(
    table: TermTable,
    budget: ErrorBudget,
    consts: SynthesisConstants = DEFAULT_CONSTANTS,
    flavor: OracleFlavor = OracleFlavor.PRODUCT,
) -> CostReport:
    """Truncated-series block encoding with oblivious amplitude amplification.

    Each of the r segments applies the walk three times (two preparations and
    one term application each, K-fold for truncation order K) plus two
    reflections over the segment's ancilla register.
    """
    _require_terms(table)
    k = taylor_order(budget.r, budget.delta_hs)
    c_prep, prep_anc = prepare_cost(table, flavor, budget, consts)
    c_select, _ = select_cost(table, flavor)
    order_bits = bits_for(k)
    series_ancilla = k * table.index_bits + order_bits
    c_reflect = tcount_mcx(series_ancilla + 1)
    per_segment = 3 * k * (2 * c_prep + c_select) + 2 * c_reflect
    total = budget.r * per_segment
    return CostReport(
        algorithm=AlgorithmKind.TAYLORIZATION,
        n_rotations=0,
        t_count_total=total,
        t_count_per_select=per_segment,
        t_depth_per_select=per_segment,
        repetitions=budget.r,
        n_logical=table.n_system + prep_anc + series_ancilla + budget.m,
        budget=budget,
        taylor_order=k,
        oracle_costs=(
            ("prepare", c_prep),
            ("select", c_select),
            ("reflection", c_reflect),
        ),
    )


def qubitization_cost(
    table: TermTable,
    budget: ErrorBudget,
    consts: SynthesisConstants = DEFAULT_CONSTANTS,
    flavor: OracleFlavor = OracleFlavor.SEQUENTIAL,
) -> CostReport:
    """Walk-operator phase estimation: r steps of P, P-dagger, SELECT and
    two reflections about the prepared signal state."""
    _require_terms(table)
    c_select, select_anc = select_cost(table, flavor)
    c_prep, prep_anc = prepare_cost(table, flavor, budget, consts)
    # reflection about |0> over the index register plus the readout control
    c_reflect = tcount_mcx(table.index_bits + 1)
    per_step = 2 * c_prep + c_select + 2 * c_reflect
    algorithm = (
        AlgorithmKind.QUBITIZATION_SEQUENTIAL
        if flavor is OracleFlavor.SEQUENTIAL
        else AlgorithmKind.QUBITIZATION_PRODUCT
    )
    if flavor is OracleFlavor.SEQUENTIAL:
        oracle_ancilla = table.index_bits + select_anc
    else:
        oracle_ancilla = prep_anc
    return CostReport(
        algorithm=algorithm,
        n_rotations=0,
        t_count_total=budget.r * per_step,
        t_count_per_select=c_select,
        t_depth_per_select=c_select,
        repetitions=budget.r,
        n_logical=table.n_system + oracle_ancilla + budget.m,
        budget=budget,
        oracle_costs=(
            ("prepare", c_prep),
            ("select", c_select),
            ("reflection", c_reflect),
            ("walk_step", per_step),
        ),
    )


def estimate_all(
    table: TermTable,
    epsilon: float,
    consts: SynthesisConstants = DEFAULT_CONSTANTS,
    accounting: RepetitionAccounting = RepetitionAccounting.SINGLE_SHOT,
) -> dict[AlgorithmKind, CostReport]:
    """One CostReport per back-end at the same target accuracy."""

    def budget_for(kind: AlgorithmKind) -> ErrorBudget:
        return budget_from_target(epsilon, table.lam, kind)

    return {
        AlgorithmKind.QDRIFT: qdrift_cost(
            table, budget_for(AlgorithmKind.QDRIFT), consts, accounting
        ),
        AlgorithmKind.RANDOM_TROTTER2: trotter2_cost(
            table, budget_for(AlgorithmKind.RANDOM_TROTTER2), consts
        ),
        AlgorithmKind.TAYLORIZATION: taylorization_cost(
            table, budget_for(AlgorithmKind.TAYLORIZATION), consts
        ),
        AlgorithmKind.QUBITIZATION_SEQUENTIAL: qubitization_cost(
            table,
            budget_for(AlgorithmKind.QUBITIZATION_SEQUENTIAL),
            consts,
            OracleFlavor.SEQUENTIAL,
        ),
        AlgorithmKind.QUBITIZATION_PRODUCT: qubitization_cost(
            table,
            budget_for(AlgorithmKind.QUBITIZATION_PRODUCT),
            consts,
            OracleFlavor.PRODUCT,
        ),
    }


def asp_time_estimate(
    n_sites: int,
    epsilon_f: float,
    beta: float = 1.5,
    prefactor: float = 0.3,
    alpha: float = 0.5,
) -> float:
    """Adiabatic preparation time c * N^(beta*alpha) * log(1/infidelity).

    The gap is assumed to close as N^-alpha, and the preparation time as
    1/gap^beta times a logarithmic infidelity factor.  Dimensionless model
    units.
    """
    if not 0.0 < epsilon_f < 1.0:
        raise ValueError(f"target infidelity must lie in (0, 1), got {epsilon_f}")
    if n_sites < 1:
        raise ValueError(f"site count must be >= 1, got {n_sites}")
    return prefactor * n_sites ** (beta * alpha) * math.log(1.0 / epsilon_f)
