"""Code-distance solving, physical-qubit counts, and runtime closed forms.

The code distance is the smallest odd d whose logical error rate
0.1 (p/p_th)^((d+1)/2) stays below one over the number of logical
operations.  Logical operations are counted in code cycles, so the count
itself grows linearly in d while the error rate decays geometrically; the
search is self-consistent and always terminates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .budget import AlgorithmKind, budget_from_target
from .lattices import TermTable

__all__ = [
    "HardwareSpec",
    "CodePlan",
    "SweepCell",
    "InfeasibleHardwareError",
    "logical_error_rate",
    "solve_code_distance",
    "solve_code_distance_rough",
    "physical_qubits_rough",
    "physical_qubits_detailed",
    "runtime_estimate",
    "runtime_closed_forms",
    "select_qubits_involved",
    "closed_form_beats",
    "sweep_grid",
]


class InfeasibleHardwareError(ValueError):
    """No code distance below the cap satisfies the logical error target."""


@dataclass(frozen=True)
class HardwareSpec:
    p_phys: float = 1e-3
    p_th: float = 1e-2
    t_cycle: float = 1e-6
    reaction_time: float = 10e-6
    n_factories: int = 1
    factory_area: int = 176
    distill_beats: int = 15
    threads: int = 1
    d_max: int = 99

    def __post_init__(self):
        if not 0.0 < self.p_phys < self.p_th:
            raise ValueError(
                f"need 0 < p_phys < p_th, got p_phys={self.p_phys}, p_th={self.p_th}"
            )
        for name in ("t_cycle", "reaction_time"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("n_factories", "factory_area", "distill_beats", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class CodePlan:
    d: int
    n_log: int
    n_op: float
    n_ph: int
    p_log: float


def logical_error_rate(hw: HardwareSpec, d: int) -> float:
    return 0.1 * (hw.p_phys / hw.p_th) ** ((d + 1) / 2)


def _solve(n_op_at, n_log: int, hw: HardwareSpec) -> CodePlan:
    d = 1
    while d <= hw.d_max:
        n_op = n_op_at(d)
        p_log = logical_error_rate(hw, d)
        if n_op <= 0 or p_log <= 1.0 / n_op:
            return CodePlan(
                d=d,
                n_log=n_log,
                n_op=n_op,
                n_ph=physical_qubits_rough(n_log, d),
                p_log=p_log,
            )
        d += 2
    raise InfeasibleHardwareError(
        f"no code distance up to {hw.d_max} reaches the logical error target "
        f"(physical error rate {hw.p_phys} too close to threshold {hw.p_th})"
    )


def solve_code_distance(
    n_log_involved: int, beats_per_select: int, r: int, hw: HardwareSpec
) -> CodePlan:
    """Distance for a run of r oracle calls of the given beat count.

    The operation count is (qubits involved) x (code cycles per call) x r,
    with code cycles = beats x d.
    """
    if min(n_log_involved, beats_per_select, r) < 1:
        raise ValueError("counts must all be positive")

    return _solve(
        lambda d: n_log_involved * (beats_per_select * d) * r, n_log_involved, hw
    )


def solve_code_distance_rough(n_log: int, t_count: int, hw: HardwareSpec) -> CodePlan:
    """Distance from a bare T-count at the distillation rate, no layout."""
    if n_log < 1 or t_count < 1:
        raise ValueError("counts must all be positive")
    return _solve(
        lambda d: n_log * t_count * hw.distill_beats * d, n_log, hw
    )


def physical_qubits_rough(n_log: int, d: int) -> int:
    """Two d^2 patches per logical qubit."""
    return 2 * d * d * n_log


def physical_qubits_detailed(
    n_system: int, log_l: int, hw: HardwareSpec, d: int
) -> int:
    """Floor-plan count: dilated system block, per-thread control arrays,
    and the factory region, all at 2 d^2 physical qubits per cell."""
    cells = (
        2.25 * n_system
        + 1.5 * (4 * hw.threads + 1) * log_l
        + hw.n_factories * hw.factory_area
    )
    return round(cells * 2 * d * d)


def runtime_estimate(d: int, beats_per_select: int, r: int, hw: HardwareSpec) -> float:
    """Wall-clock seconds for r calls: t_cycle x d x beats x r."""
    return hw.t_cycle * d * beats_per_select * r


def runtime_closed_forms(
    n_terms: int, d: int, b: int, hw: HardwareSpec
) -> tuple[float, float]:
    """(distillation-limited, reaction-limited) seconds per oracle call."""
    t_count = 4 * n_terms
    t_limited = hw.distill_beats * d * hw.t_cycle * t_count
    reaction_limited = hw.reaction_time * t_count / b
    return t_limited, reaction_limited


def select_qubits_involved(table: TermTable, m: int, threads: int = 1) -> int:
    """Logical qubits the term-application oracle touches: the system, one
    input-plus-carry control array per thread, and the readout register."""
    return table.n_system + threads * (2 * table.index_bits - 1) + m


def closed_form_beats(table: TermTable, hw: HardwareSpec) -> int:
    """Distillation-limited beats for one oracle call without simulating."""
    magic = max(1, 4 * table.count - 4)
    return math.ceil(hw.distill_beats * magic / hw.n_factories)


@dataclass(frozen=True)
class SweepCell:
    epsilon: float
    p_phys: float
    d: Optional[int]
    n_ph: Optional[int]
    runtime_s: Optional[float]
    feasible: bool


def sweep_grid(
    table: TermTable,
    epsilon_list: Sequence[float],
    p_list: Sequence[float],
    hw: HardwareSpec,
    beats_per_select: Optional[int] = None,
) -> list[SweepCell]:
    """Qubitization resource grid over target accuracy and error rate.

    Cells whose error rate is at or above threshold, or that need a code
    distance beyond the cap, are marked infeasible rather than failing the
    sweep.  Rows are emitted in row-major (epsilon, p) order.
    """
    if not epsilon_list or not p_list:
        raise ValueError("sweep grids must be non-empty")
    beats = beats_per_select if beats_per_select is not None else closed_form_beats(table, hw)
    cells = []
    for eps in epsilon_list:
        budget = budget_from_target(
            eps, table.lam, AlgorithmKind.QUBITIZATION_SEQUENTIAL
        )
        n_log = select_qubits_involved(table, budget.m, hw.threads)
        for p in p_list:
            try:
                cell_hw = replace(hw, p_phys=p)
                plan = solve_code_distance(n_log, beats, budget.r, cell_hw)
            except (ValueError, InfeasibleHardwareError):
                cells.append(SweepCell(eps, p, None, None, None, False))
                continue
            n_ph = physical_qubits_detailed(
                table.n_system, table.index_bits, cell_hw, plan.d
            )
            runtime = runtime_estimate(plan.d, beats, budget.r, cell_hw)
            cells.append(SweepCell(eps, p, plan.d, n_ph, runtime, True))
    return cells
