"""Compare the T-cost of the five phase-estimation back-ends.

The target accuracy is split 90/10 between the readout error (which sets
the repetition count r) and the synthesis errors.  Trotter-family costs
are rotation counts times a synthesis cost; the block-encoding back-ends
pay per walk step but only log-many T gates outside the term-application
oracle, which is why qubitization wins every instance.
"""

from ftx import (
    AlgorithmKind,
    FermiHubbard,
    HeisenbergJ1J2,
    budget_from_target,
    cylinder,
    enumerate_terms,
    estimate_all,
)

for label, spec in {
    "2d J1-J2 Heisenberg 6x6": cylinder(6, 6, HeisenbergJ1J2(1.0, 0.5, 0.5)),
    "2d J1-J2 Heisenberg 10x10": cylinder(10, 10, HeisenbergJ1J2(1.0, 0.5, 0.5)),
    "2d Fermi-Hubbard 6x6": cylinder(6, 6, FermiHubbard(1.0, 4.0)),
}.items():
    table = enumerate_terms(spec)
    budget = budget_from_target(0.01, table.lam, AlgorithmKind.QUBITIZATION_SEQUENTIAL)
    print(f"{label}:  lambda={table.lam}  L={table.count}  r={budget.r}  m={budget.m}")
    reports = estimate_all(table, 0.01)
    for kind, rep in sorted(reports.items(), key=lambda kv: -kv[1].t_count_total):
        extra = f"  K={rep.taylor_order}" if rep.taylor_order else ""
        print(
            f"  {kind.value:<26} T-count {rep.t_count_total:12.3e}"
            f"  logical qubits {rep.n_logical:4d}{extra}"
        )
    print()
