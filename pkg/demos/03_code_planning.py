"""Solve the surface-code distance and size the machine.

The distance is the smallest odd d whose logical error rate clears the
inverse operation count; operations are counted in code cycles, so the
count itself grows with d during the search.  The rough variant needs
only a T-count; the detailed variant consumes the scheduled beat count
and the floor-plan footprint.
"""

from ftx import (
    AlgorithmKind,
    HardwareSpec,
    HeisenbergJ1J2,
    budget_from_target,
    cylinder,
    enumerate_terms,
    physical_qubits_detailed,
    physical_qubits_rough,
    runtime_closed_forms,
    runtime_estimate,
    select_qubits_involved,
    solve_code_distance,
    solve_code_distance_rough,
)

table = enumerate_terms(cylinder(10, 10, HeisenbergJ1J2(1.0, 0.5, 0.5)))
budget = budget_from_target(0.01, table.lam, AlgorithmKind.QUBITIZATION_SEQUENTIAL)
hw = HardwareSpec(p_phys=1e-3)

# rough: logical qubits x T-count x distillation beats
rough = solve_code_distance_rough(137, 180_000_000, hw)
print(f"rough plan:    d={rough.d}  N_ph={physical_qubits_rough(rough.n_log, rough.d):.3e}")

# detailed: per-call beat count from the scheduler (here the published one)
beats = 66958
n_log = select_qubits_involved(table, budget.m, threads=1)
plan = solve_code_distance(n_log, beats, budget.r, hw)
print(f"detailed plan: d={plan.d}  involved qubits={n_log}  p_log={plan.p_log:.2e}")

n_ph = physical_qubits_detailed(table.n_system, table.index_bits, hw, plan.d)
print(f"floor-plan physical qubits: {n_ph:.3e}")

runtime = runtime_estimate(plan.d, beats, budget.r, hw)
print(f"wall-clock runtime: {runtime:.3e} s  ({runtime / 3600:.1f} h)")

# closed forms bracket the per-call time without scheduling
t_limited, reaction_limited = runtime_closed_forms(table.count, plan.d, 16, hw)
print(f"per-call closed forms: distillation-limited {t_limited:.3f} s, "
      f"reaction-limited (16 threads) {reaction_limited * 1e3:.2f} ms")

# sensitivity: the exact involved-qubit bookkeeping barely matters; a
# +-30% bracket around a nominal 120 involved qubits keeps the distance
for nominal in (84, 120, 156):
    d = solve_code_distance(nominal, beats, budget.r, hw).d
    print(f"  involved qubits {nominal}: d={d}")
