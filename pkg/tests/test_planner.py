import math

import pytest
from hypothesis import given, settings, strategies as st

from ftx.budget import AlgorithmKind, budget_from_target
from ftx.lattices import HeisenbergJ1J2, cylinder, enumerate_terms
from ftx.planner import (
    HardwareSpec,
    InfeasibleHardwareError,
    closed_form_beats,
    logical_error_rate,
    physical_qubits_detailed,
    physical_qubits_rough,
    runtime_closed_forms,
    runtime_estimate,
    select_qubits_involved,
    solve_code_distance,
    solve_code_distance_rough,
    sweep_grid,
)

HW = HardwareSpec(p_phys=1e-3)


def test_hardware_validation():
    with pytest.raises(ValueError):
        HardwareSpec(p_phys=0.02)  # above threshold
    with pytest.raises(ValueError):
        HardwareSpec(p_phys=0.0)
    with pytest.raises(ValueError):
        HardwareSpec(t_cycle=0.0)
    with pytest.raises(ValueError):
        HardwareSpec(n_factories=0)


def test_solve_code_distance_reference_row():
    # 10x10 spin model, single-thread configuration
    plan = solve_code_distance(137, 66958, 36652, HW)
    assert plan.d == 23
    # minimality: the defining inequality holds at d and fails at d - 2
    assert plan.p_log <= 1.0 / plan.n_op
    n_op_prev = 137 * 66958 * 21 * 36652
    assert logical_error_rate(HW, 21) > 1.0 / n_op_prev


def test_solve_code_distance_insensitive_to_qubit_count():
    # +-30% around the nominal 120 involved qubits keeps the same distance
    for nlog in (84, 96, 120, 137, 156):
        assert solve_code_distance(nlog, 66958, 36652, HW).d == 23


def test_degenerate_single_operation():
    plan = solve_code_distance(1, 1, 1, HW)
    assert plan.d == 1  # 0.1 * 0.1 = 0.01 < 1


def test_near_threshold_is_infeasible():
    hw = HardwareSpec(p_phys=9.9e-3)
    with pytest.raises(InfeasibleHardwareError):
        solve_code_distance(100, 10_000, 10_000, hw)


def test_rough_solver_examples():
    plan = solve_code_distance_rough(112, round(8.00e8), HW)
    assert plan.d == 25
    assert plan.n_ph == 140_000
    small = solve_code_distance_rough(1, 1, HW)
    assert small.d == 1  # 0.01 vs 1/15: the degenerate limit passes at d=1


def test_physical_qubits_rough():
    assert physical_qubits_rough(112, 25) == 140_000
    assert physical_qubits_rough(1, 1) == 2
    assert physical_qubits_rough(100, 23) == 105_800


def test_physical_qubits_detailed_examples():
    hw1 = HardwareSpec(p_phys=1e-3, n_factories=1, threads=1)
    value = physical_qubits_detailed(100, 10, hw1, 23)
    assert value == 503_608
    assert abs(value / 5.12e5 - 1) < 0.03
    hw16 = HardwareSpec(p_phys=1e-3, n_factories=16, threads=16)
    value16 = physical_qubits_detailed(100, 11, hw16, 23)
    assert abs(value16 / 4.35e6 - 1) < 0.03
    assert physical_qubits_detailed(0, 0, hw1, 23) == 176 * 2 * 23 * 23


def test_physical_qubits_detailed_monotone():
    hw = HardwareSpec(p_phys=1e-3)
    base = physical_qubits_detailed(100, 10, hw, 23)
    assert physical_qubits_detailed(101, 10, hw, 23) > base
    assert physical_qubits_detailed(100, 10, hw, 25) > base
    assert (
        physical_qubits_detailed(
            100, 10, HardwareSpec(p_phys=1e-3, threads=2), 23
        )
        > base
    )
    assert (
        physical_qubits_detailed(
            100, 10, HardwareSpec(p_phys=1e-3, n_factories=2), 23
        )
        > base
    )


def test_runtime_estimate_reference_values():
    assert runtime_estimate(23, 66958, 36652, HW) == pytest.approx(5.64e4, rel=0.02)
    assert runtime_estimate(23, 5127, 36652, HW) == pytest.approx(4.32e3, rel=0.02)
    assert runtime_estimate(23, 0, 36652, HW) == 0.0


@given(
    d=st.integers(min_value=1, max_value=51).filter(lambda x: x % 2 == 1),
    beats=st.integers(min_value=1, max_value=10**6),
    r=st.integers(min_value=1, max_value=10**6),
    k=st.integers(min_value=2, max_value=5),
)
def test_runtime_estimate_linear(d, beats, r, k):
    base = runtime_estimate(d, beats, r, HW)
    assert runtime_estimate(d, k * beats, r, HW) == pytest.approx(k * base, rel=1e-12)
    assert runtime_estimate(d, beats, k * r, HW) == pytest.approx(k * base, rel=1e-12)


def test_runtime_closed_forms():
    t_limited, reaction = runtime_closed_forms(840, 23, 1, HW)
    assert t_limited == pytest.approx(60 * 23 * 840 * 1e-6, rel=1e-12)
    _, reaction16 = runtime_closed_forms(840, 23, 16, HW)
    assert reaction16 == pytest.approx(40 * 840 / 16 * 1e-6, rel=1e-12)
    assert runtime_closed_forms(0, 23, 1, HW) == (0.0, 0.0)


def test_select_qubits_involved():
    table = enumerate_terms(cylinder(10, 10, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    budget = budget_from_target(0.01, table.lam, AlgorithmKind.QUBITIZATION_SEQUENTIAL)
    assert select_qubits_involved(table, budget.m, 1) == 100 + 21 + 16
    assert select_qubits_involved(table, budget.m, 16) == 100 + 16 * 21 + 16


def test_sweep_grid_reference_cell_and_monotonicity():
    table = enumerate_terms(cylinder(10, 10, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    eps_list = [0.1, 0.03, 0.01]
    p_list = [1e-4, 3e-4, 1e-3]
    cells = sweep_grid(table, eps_list, p_list, HW, beats_per_select=66958)
    assert len(cells) == 9
    ref = [c for c in cells if c.epsilon == 0.01 and c.p_phys == 1e-3][0]
    assert ref.feasible and ref.d == 23

    # d monotone non-decreasing in p at fixed epsilon, and in 1/epsilon
    by_eps = {}
    for c in cells:
        by_eps.setdefault(c.epsilon, []).append(c)
    for eps, row in by_eps.items():
        ds = [c.d for c in sorted(row, key=lambda c: c.p_phys)]
        assert ds == sorted(ds)
    for p in p_list:
        col = sorted(
            (c for c in cells if c.p_phys == p), key=lambda c: -c.epsilon
        )
        ds = [c.d for c in col]
        assert ds == sorted(ds)

    # ten-fold reduction of p cuts physical qubits by a factor in [3, 5]
    hi = [c for c in cells if c.epsilon == 0.01 and c.p_phys == 1e-3][0]
    lo = [c for c in cells if c.epsilon == 0.01 and c.p_phys == 1e-4][0]
    assert 3.0 <= hi.n_ph / lo.n_ph <= 5.0


def test_sweep_grid_infeasible_cells_flagged():
    table = enumerate_terms(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    cells = sweep_grid(table, [0.01], [1e-3, 2e-2], HW, beats_per_select=9511)
    assert cells[0].feasible
    assert not cells[1].feasible and cells[1].d is None
    with pytest.raises(ValueError):
        sweep_grid(table, [], [1e-3], HW)


def test_closed_form_beats_matches_distillation_rate():
    table = enumerate_terms(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    assert closed_form_beats(table, HW) == 15 * (4 * table.count - 4)
    hw4 = HardwareSpec(p_phys=1e-3, n_factories=4)
    assert closed_form_beats(table, hw4) == math.ceil(15 * (4 * table.count - 4) / 4)


@settings(max_examples=20, deadline=None)
@given(
    nlog=st.integers(min_value=1, max_value=500),
    beats=st.integers(min_value=1, max_value=200_000),
    r=st.integers(min_value=1, max_value=100_000),
)
def test_solved_distance_is_minimal_and_valid(nlog, beats, r):
    plan = solve_code_distance(nlog, beats, r, HW)
    assert plan.p_log <= 1.0 / plan.n_op
    if plan.d > 1:
        d_prev = plan.d - 2
        n_op_prev = nlog * beats * d_prev * r
        assert logical_error_rate(HW, d_prev) > 1.0 / n_op_prev
