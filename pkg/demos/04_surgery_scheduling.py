"""Schedule one term-application oracle call on the logical-qubit plane.

The plane holds the factories behind the control band and the system
block below it.  The instruction stream walks the term index serially:
one logical AND (four magic consumptions plus their conditional fix-ups)
per step, then the controlled Pauli onto the term's support.  Stalls come
from three places: waiting for distilled states, waiting for a corridor
path, and waiting out the reaction latency of conditioned Cliffords.
"""

from ftx import (
    HardwareSpec,
    HeisenbergJ1J2,
    build_floor_plan,
    cylinder,
    enumerate_terms,
    simulate,
    synthesize_select,
)
from ftx.instructions import InstrKind

table = enumerate_terms(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)))
hw = HardwareSpec(p_phys=1e-3, n_factories=1, threads=1)
plan = build_floor_plan(table, hw)

print("floor plan (F factory, P port, C control, S system, . corridor):")
print(plan.to_ascii())
print()

program = synthesize_select(table, 1)
print(f"instructions: {len(program)}")
head = program[:12]
for ins in head:
    cond = f" if[{ins.condition_on}]" if ins.condition_on is not None else ""
    print(f"  {ins.id:>3} {ins.kind.value:<14} qubits={ins.qubits}{cond}")
print("  ...")

magic = sum(1 for i in program if i.kind is InstrKind.CONSUME_MAGIC)
print(f"magic consumptions: {magic} (= 4L - 4 with L = {table.count})")
print()

for nf, b in [(1, 1), (4, 1), (16, 16)]:
    hw = HardwareSpec(p_phys=1e-3, n_factories=nf, threads=b)
    plan = build_floor_plan(table, hw)
    prog = synthesize_select(table, b)
    res = simulate(plan, prog, hw)
    print(
        f"factories={nf:>2} threads={b:>2}: {res.total_beats:>6} beats"
        f"  (supply floor {15 * res.magic_consumed // nf}),"
        f" stalls magic/routing/reaction ="
        f" {res.stall_beats_magic}/{res.stall_beats_routing}/{res.stall_beats_reaction}"
    )
