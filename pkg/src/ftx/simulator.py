"""Deterministic beat-clocked execution of a surgery instruction stream.

Each beat the ready instructions are considered in id order.  Two-body and
multi-body measurements reserve a breadth-first-search shortest path of
corridor cells for two beats; S and H gates borrow one adjacent corridor
cell for two and three beats; single-qubit preparations and measurements
are folded into neighbouring beats and cost nothing.  Magic states come
from per-factory token buckets refilled every `distill_beats`, banked
without bound, and teleported from the factory port into the consuming
qubit.  Operations conditioned on a measurement wait out the reaction
latency first.  The clock jumps straight to the next event, so idle
stretches cost nothing to simulate.
"""

from __future__ import annotations

import heapq
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Optional

from .floorplan import FloorPlan
from .instructions import InstrKind, Instruction
from .planner import HardwareSpec

__all__ = ["SimResult", "PlanDefectError", "simulate"]

_DURATION = {
    InstrKind.PREP: 0,
    InstrKind.MEASURE: 0,
    InstrKind.S_GATE: 2,
    InstrKind.H_GATE: 3,
    InstrKind.SURGERY: 2,
    InstrKind.CONSUME_MAGIC: 2,
}
_COND_DURATION = {"S": 2, "CZ": 2, "PAULI": 0}


class PlanDefectError(RuntimeError):
    """An instruction can never execute, even on an empty plane."""

    def __init__(self, instruction_id: int, message: str):
        super().__init__(f"instruction {instruction_id}: {message}")
        self.instruction_id = instruction_id


@dataclass(frozen=True)
class SimResult:
    total_beats: int
    stall_beats_routing: int
    stall_beats_magic: int
    stall_beats_reaction: int
    magic_consumed: int
    trace: Optional[tuple[tuple[int, int, str, str], ...]] = None

    def to_dict(self) -> dict:
        return {
            "total_beats": self.total_beats,
            "stall_beats_routing": self.stall_beats_routing,
            "stall_beats_magic": self.stall_beats_magic,
            "stall_beats_reaction": self.stall_beats_reaction,
            "magic_consumed": self.magic_consumed,
        }


class _Router:
    """Shortest corridor paths with lexicographic tie-breaking."""

    def __init__(self, plan: FloorPlan):
        self.plan = plan
        self._static: dict[tuple, Optional[tuple[tuple[int, int], ...]]] = {}

    def terminals(self, qubit: int) -> list[tuple[int, int]]:
        cells = self.plan.adjacent_routable(qubit)
        if not cells:
            raise PlanDefectError(-1, f"qubit {qubit} has no adjacent corridor")
        return sorted(cells)

    def port_terminals(self, port: tuple[int, int]) -> list[tuple[int, int]]:
        return sorted(
            c for c in self.plan.neighbors(*port) if self.plan.routable(*c)
        )

    def _bfs(self, sources, targets, occupied, beat):
        plan = self.plan
        target_set = set(targets)
        parent: dict[tuple[int, int], Optional[tuple[int, int]]] = {}
        queue = deque()
        for cell in sources:
            if occupied.get(cell, 0) > beat or cell in parent:
                continue
            parent[cell] = None
            if cell in target_set:
                return [cell]
            queue.append(cell)
        while queue:
            cell = queue.popleft()
            for nxt in plan.neighbors(*cell):
                if nxt in parent or not plan.routable(*nxt):
                    continue
                if occupied.get(nxt, 0) > beat:
                    continue
                parent[nxt] = cell
                if nxt in target_set:
                    path = [nxt]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path
                queue.append(nxt)
        return None

    def _route_fresh(self, operand_cells, occupied, beat):
        """Connected tree of corridor cells touching every operand group."""
        tree: list[tuple[int, int]] = []
        for i, terminals in enumerate(operand_cells):
            if i == 0:
                free = [c for c in terminals if occupied.get(c, 0) <= beat]
                if not free:
                    return None
                tree.append(free[0])
                continue
            if any(cell in tree for cell in terminals):
                continue
            path = self._bfs(tree, terminals, occupied, beat)
            if path is None:
                return None
            tree.extend(cell for cell in path if cell not in tree)
        return tuple(tree)

    def route(self, operand_cells, occupied, beat, static_key=None, dynamic=True):
        """The empty-plane path if its cells are free, else a fresh search.

        With dynamic=False a blocked static path means waiting for it to
        clear rather than detouring; this keeps contended runs deterministic
        and cheap.
        """
        if static_key is None:
            return self._route_fresh(operand_cells, occupied, beat)
        if static_key not in self._static:
            self._static[static_key] = self._route_fresh(operand_cells, {}, 0)
        cached = self._static[static_key]
        if cached is None:
            return None
        if all(occupied.get(cell, 0) <= beat for cell in cached):
            return cached
        if not dynamic:
            return None
        return self._route_fresh(operand_cells, occupied, beat)


def _fold_dependencies(program: list[Instruction]) -> list[tuple[int, ...]]:
    """Explicit dependencies plus same-qubit program order."""
    last_touch: dict[int, int] = {}
    deps = []
    for instr in program:
        implicit = {last_touch[q] for q in instr.qubits if q in last_touch}
        implicit.update(instr.after)
        if instr.condition_on is not None:
            implicit.add(instr.condition_on)
        deps.append(tuple(sorted(implicit)))
        for q in instr.qubits:
            last_touch[q] = instr.id
    return deps


def simulate(
    plan: FloorPlan,
    program: list[Instruction],
    hw: HardwareSpec,
    reaction_beats: int = 1,
    collect_trace: bool = False,
    debug: bool = False,
) -> SimResult:
    """Run the instruction stream to completion; deterministic for fixed inputs."""
    if not program:
        return SimResult(0, 0, 0, 0, 0, trace=() if collect_trace else None)
    for instr in program:
        for q in instr.qubits:
            if q not in plan.placement:
                raise PlanDefectError(
                    instr.id, f"operand qubit {q} is not placed on the plane"
                )

    router = _Router(plan)
    deps = _fold_dependencies(program)
    n = len(program)
    pending = [len(d) for d in deps]
    dependents: dict[int, list[int]] = defaultdict(list)
    for i, dlist in enumerate(deps):
        for d in dlist:
            dependents[d].append(i)

    completion = [-1] * n
    first_ready = [-1] * n
    blocked_reason: dict[int, str] = {}

    occupied: dict[tuple[int, int], int] = {}
    release_times: list[int] = []
    consumed = [0] * hw.n_factories
    magic_consumed = 0
    stalls = {"routing": 0, "magic": 0, "reaction": 0}
    trace: list[tuple[int, int, str, str]] = []

    ready: list[int] = [i for i in range(n) if pending[i] == 0]
    waiting: list[tuple[int, int]] = []  # (ready_at, id)
    active: list[tuple[int, int]] = []  # (completion_beat, id)
    done = 0

    def duration_of(instr: Instruction) -> int:
        if instr.kind is InstrKind.COND_CLIFFORD:
            return _COND_DURATION[instr.payload]
        return _DURATION[instr.kind]

    def finish(i: int) -> None:
        nonlocal done
        done += 1
        for j in dependents[i]:
            pending[j] -= 1
            if pending[j] == 0:
                ready_at = 0
                for d in deps[j]:
                    t = completion[d]
                    if (
                        program[j].condition_on is not None
                        and d == program[j].condition_on
                    ):
                        gated = t + reaction_beats
                        if gated > ready_at:
                            stalls["reaction"] += min(
                                reaction_beats, gated - max(ready_at, t)
                            )
                        t = gated
                    if t > ready_at:
                        ready_at = t
                heapq.heappush(waiting, (ready_at, j))

    def try_start(instr: Instruction, beat: int):
        kind = instr.kind
        if kind in (InstrKind.PREP, InstrKind.MEASURE):
            return (), None
        if kind is InstrKind.COND_CLIFFORD and instr.payload == "PAULI":
            return (), None
        if kind is InstrKind.CONSUME_MAGIC:
            target = instr.qubits[0]
            tcell = plan.placement[target]
            choices = []
            for f, port in enumerate(plan.factory_ports):
                if beat // hw.distill_beats - consumed[f] > 0:
                    dist = abs(port[0] - tcell[0]) + abs(port[1] - tcell[1])
                    choices.append((dist, f, port))
            if not choices:
                return "magic"
            choices.sort()
            for _, f, port in choices[:3]:
                cells = router.route(
                    [router.port_terminals(port), router.terminals(target)],
                    occupied,
                    beat,
                    static_key=("magic", f, target),
                    dynamic=False,
                )
                if cells is not None:
                    return cells, f
            return "routing"
        if kind is InstrKind.SURGERY or (
            kind is InstrKind.COND_CLIFFORD and instr.payload == "CZ"
        ):
            cells = router.route(
                [router.terminals(q) for q in instr.qubits],
                occupied,
                beat,
                static_key=("op",) + instr.qubits,
                dynamic=False,
            )
            if cells is None:
                return "routing"
            return cells, None
        # single-qubit S or H borrows one adjacent corridor cell
        for cell in router.terminals(instr.qubits[0]):
            if occupied.get(cell, 0) <= beat:
                return (cell,), None
        return "routing"

    def assert_static_routable(i: int) -> None:
        instr = program[i]
        kind = instr.kind
        if kind is InstrKind.CONSUME_MAGIC:
            target = instr.qubits[0]
            for port in plan.factory_ports:
                if router.route(
                    [router.port_terminals(port), router.terminals(target)], {}, 0
                ):
                    return
        elif kind is InstrKind.SURGERY or (
            kind is InstrKind.COND_CLIFFORD and instr.payload == "CZ"
        ):
            if router.route([router.terminals(q) for q in instr.qubits], {}, 0):
                return
        else:
            return
        raise PlanDefectError(i, "no corridor path exists even on an empty plane")

    beat = 0
    while done < n:
        progressed = True
        while progressed:
            progressed = False
            while waiting and waiting[0][0] <= beat:
                ready.append(heapq.heappop(waiting)[1])
            if not ready:
                break
            ready.sort()
            still_blocked = []
            for i in ready:
                instr = program[i]
                if first_ready[i] < 0:
                    first_ready[i] = beat
                outcome = try_start(instr, beat)
                if isinstance(outcome, str):
                    blocked_reason[i] = outcome
                    still_blocked.append(i)
                    continue
                cells, factory = outcome
                if debug:
                    clash = [c for c in cells if occupied.get(c, 0) > beat]
                    assert not clash, f"cells {clash} double-booked at beat {beat}"
                dur = duration_of(instr)
                for cell in cells:
                    occupied[cell] = beat + dur
                if dur > 0:
                    release_times.append(beat + dur)
                if factory is not None:
                    consumed[factory] += 1
                    magic_consumed += 1
                if beat > first_ready[i]:
                    stalls[blocked_reason.get(i, "routing")] += beat - first_ready[i]
                completion[i] = beat + dur
                if collect_trace:
                    trace.append((beat, i, instr.kind.value, "start"))
                if dur == 0:
                    finish(i)
                else:
                    heapq.heappush(active, (beat + dur, i))
                progressed = True
            ready = still_blocked
        if done >= n:
            break
        candidates = []
        if active:
            candidates.append(active[0][0])
        if waiting:
            candidates.append(waiting[0][0])
        if ready:
            future = [t for t in release_times if t > beat]
            if future:
                candidates.append(min(future))
            if any(blocked_reason.get(i) == "magic" for i in ready):
                nxt = min(
                    (consumed[f] + 1) * hw.distill_beats
                    for f in range(hw.n_factories)
                )
                candidates.append(max(nxt, beat + 1))
        future_candidates = [c for c in candidates if c > beat]
        if not future_candidates:
            if ready:
                culprit = ready[0]
                assert_static_routable(culprit)
                raise RuntimeError(
                    f"deadlock at beat {beat} on instruction {culprit}"
                )
            raise RuntimeError(f"no runnable work at beat {beat}")
        new_beat = min(future_candidates)
        while active and active[0][0] <= new_beat:
            t, i = heapq.heappop(active)
            if collect_trace:
                trace.append((t, i, program[i].kind.value, "done"))
            finish(i)
        release_times = [t for t in release_times if t > new_beat]
        occupied = {c: t for c, t in occupied.items() if t > new_beat}
        beat = new_beat

    total = max(completion)
    return SimResult(
        total_beats=total,
        stall_beats_routing=stalls["routing"],
        stall_beats_magic=stalls["magic"],
        stall_beats_reaction=stalls["reaction"],
        magic_consumed=magic_consumed,
        trace=tuple(trace) if collect_trace else None,
    )
