"""Locate the quantum-classical runtime crosspoint.

The classical side is the published single-CPU time-to-accuracy of a
tensor-network ground-state solver, fitted exponentially in the linear
size for square lattices.  The quantum side is the end-to-end estimate of
the walk-based phase estimation on the scheduled machine.  The crosspoint
is the smallest size where the quantum curve drops below the fit.
"""

from ftx import (
    FitKind,
    find_crosspoint,
    fit_size_scaling,
    load_classical_endpoints,
    load_quantum_endpoints,
)

for model, coupling, nf, threads in [
    ("heisenberg_j1j2", 0.5, 16, 16),
    ("fermi_hubbard", 4.0, 1, 1),
]:
    classical = load_classical_endpoints(model, coupling=coupling)
    fit = fit_size_scaling(
        [p[0] for p in classical], [p[1] for p in classical], FitKind.EXPONENTIAL
    )
    quantum = load_quantum_endpoints(model, n_factories=nf, threads=threads)
    report = find_crosspoint(fit, quantum)

    print(f"{model} (coupling {coupling}, factories {nf}, threads {threads})")
    print(f"  exponential fit: ln t = {fit.params[0]:.3f} + {fit.params[1]:.3f} L")
    print(f"  {'L':>4} {'classical [s]':>14} {'classical/10 [s]':>17} {'quantum [s]':>12}")
    for i, size in enumerate(report.sizes):
        print(
            f"  {size:>4.0f} {report.classical_s[i]:>14.3e} "
            f"{report.classical_lower_bound_s[i]:>17.3e} {report.quantum_s[i]:>12.3e}"
        )
    where = f"{report.crosspoint:.0f}x{report.crosspoint:.0f}" if report.found else "none"
    print(f"  crosspoint: {where}\n")
