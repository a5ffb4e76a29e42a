import pytest

from ftx.floorplan import build_floor_plan
from ftx.instructions import InstrKind, Instruction, synthesize_select
from ftx.lattices import (
    FermiHubbard,
    HeisenbergChain,
    HeisenbergJ1J2,
    chain,
    cylinder,
    enumerate_terms,
)
from ftx.planner import HardwareSpec
from ftx.simulator import PlanDefectError, SimResult, simulate


def setup(spec, threads=1, factories=1):
    table = enumerate_terms(spec)
    hw = HardwareSpec(p_phys=1e-3, n_factories=factories, threads=threads)
    plan = build_floor_plan(table, hw)
    program = synthesize_select(table, threads)
    return table, hw, plan, program


def test_empty_program():
    result = simulate(None, [], HardwareSpec(p_phys=1e-3))
    assert result == SimResult(0, 0, 0, 0, 0, trace=None)


def test_supply_lower_bound_single_factory():
    table, hw, plan, program = setup(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    result = simulate(plan, program, hw)
    magic = result.magic_consumed
    assert magic == 4 * table.count - 4
    bound = hw.distill_beats * magic
    assert bound <= result.total_beats <= 2.0 * bound


def test_monotone_in_factories():
    _, _, plan1, program = setup(cylinder(4, 4, FermiHubbard(1.0, 4.0)))
    beats = []
    for nf in (1, 4, 16):
        hw = HardwareSpec(p_phys=1e-3, n_factories=nf)
        plan = build_floor_plan(
            enumerate_terms(cylinder(4, 4, FermiHubbard(1.0, 4.0))), hw
        )
        beats.append(simulate(plan, program, hw).total_beats)
    assert beats[0] >= beats[1] >= beats[2]


def test_determinism_bit_identical():
    _, hw, plan, program = setup(
        cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)), threads=4, factories=4
    )
    r1 = simulate(plan, program, hw, collect_trace=True)
    r2 = simulate(plan, program, hw, collect_trace=True)
    assert r1 == r2
    assert r1.trace == r2.trace


def test_debug_mode_asserts_no_conflicts():
    _, hw, plan, program = setup(
        cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)), threads=4, factories=4
    )
    result = simulate(plan, program, hw, debug=True)
    assert result.total_beats > 0


def test_trace_is_ordered_and_complete():
    table, hw, plan, program = setup(chain(4, HeisenbergChain(1.0)))
    result = simulate(plan, program, hw, collect_trace=True)
    beats = [entry[0] for entry in result.trace]
    assert beats == sorted(beats)
    started = {e[1] for e in result.trace if e[3] == "start"}
    assert started == set(range(len(program)))


def test_reaction_latency_serializes_fixups():
    table, hw, plan, program = setup(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    fast = simulate(plan, program, hw, reaction_beats=1)
    slow = simulate(plan, program, hw, reaction_beats=10)
    assert slow.total_beats > fast.total_beats
    assert slow.stall_beats_reaction > fast.stall_beats_reaction


def test_unplaced_operand_is_a_plan_defect():
    table, hw, plan, program = setup(chain(4, HeisenbergChain(1.0)))
    bogus = program + [
        Instruction(
            id=len(program),
            kind=InstrKind.SURGERY,
            qubits=(10_000, 10_001),
            axes=("Z", "Z"),
        )
    ]
    with pytest.raises(PlanDefectError):
        simulate(plan, bogus, hw)


def test_parallel_runs_use_all_factories():
    table, hw, plan, program = setup(
        cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)), threads=8, factories=8
    )
    result = simulate(plan, program, hw)
    serial_table, serial_hw, serial_plan, serial_program = setup(
        cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5))
    )
    serial = simulate(serial_plan, serial_program, serial_hw)
    assert result.total_beats < serial.total_beats


def test_zero_duration_instructions_cost_nothing():
    hw = HardwareSpec(p_phys=1e-3)
    table = enumerate_terms(chain(4, HeisenbergChain(1.0)))
    plan = build_floor_plan(table, hw)
    program = [
        Instruction(id=0, kind=InstrKind.PREP, qubits=(0,), axes=("Z",)),
        Instruction(id=1, kind=InstrKind.MEASURE, qubits=(0,), axes=("X",)),
    ]
    result = simulate(plan, program, hw)
    assert result.total_beats == 0


def test_conditional_waits_for_reaction():
    hw = HardwareSpec(p_phys=1e-3)
    table = enumerate_terms(chain(4, HeisenbergChain(1.0)))
    plan = build_floor_plan(table, hw)
    program = [
        Instruction(id=0, kind=InstrKind.MEASURE, qubits=(0,), axes=("X",)),
        Instruction(
            id=1,
            kind=InstrKind.COND_CLIFFORD,
            qubits=(1,),
            condition_on=0,
            payload="S",
        ),
    ]
    result = simulate(plan, program, hw, reaction_beats=1)
    # measurement at beat 0, fixup ready at beat 1, runs 2 beats
    assert result.total_beats == 3
    assert result.stall_beats_reaction == 1
