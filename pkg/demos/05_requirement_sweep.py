"""Sweep the code distance, qubit count and runtime over accuracy and noise.

The distance depends logarithmically on both the target accuracy and the
physical error rate, so the qubit count moves in visible steps; the
runtime scales polynomially in the accuracy through the repetition count.
"""

from ftx import (
    HardwareSpec,
    HeisenbergJ1J2,
    cylinder,
    enumerate_terms,
    sweep_grid,
)

table = enumerate_terms(cylinder(10, 10, HeisenbergJ1J2(1.0, 0.5, 0.5)))
hw = HardwareSpec(p_phys=1e-3)

eps_grid = [0.1, 0.05, 0.02, 0.01, 0.005]
p_grid = [1e-5, 1e-4, 1e-3, 5e-3]
cells = sweep_grid(table, eps_grid, p_grid, hw, beats_per_select=66958)

print("code distance d over (epsilon rows, p columns):")
header = "".join(f"{p:>10.0e}" for p in p_grid)
print(f"{'eps':>8}{header}")
for eps in eps_grid:
    row = [c for c in cells if c.epsilon == eps]
    cols = "".join(f"{c.d:>10}" for c in row)
    print(f"{eps:>8}{cols}")

print("\nphysical qubits (millions):")
for eps in eps_grid:
    row = [c for c in cells if c.epsilon == eps]
    cols = "".join(f"{c.n_ph / 1e6:>10.2f}" for c in row)
    print(f"{eps:>8}{cols}")

print("\nruntime (hours):")
for eps in eps_grid:
    row = [c for c in cells if c.epsilon == eps]
    cols = "".join(f"{c.runtime_s / 3600:>10.2f}" for c in row)
    print(f"{eps:>8}{cols}")

ref = [c for c in cells if c.epsilon == 0.01 and c.p_phys == 1e-3][0]
print(f"\nreference cell (eps=0.01, p=1e-3): d={ref.d}, N_ph={ref.n_ph:.3g}")
better = [c for c in cells if c.epsilon == 0.01 and c.p_phys == 1e-4][0]
print(f"ten-fold better hardware: d={better.d}, "
      f"N_ph reduction x{ref.n_ph / better.n_ph:.1f}")
