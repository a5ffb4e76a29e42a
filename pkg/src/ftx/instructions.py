"""Lattice-surgery instruction stream for one term-application oracle call.

The oracle walks the term index in a unary iteration: per step one logical
AND (four magic-state consumptions, each followed by its conditional S
fix-up), a couple of CNOT merges updating the carry chain, the controlled
Pauli application from the thread's tail qubit onto the term's support, and
the measurement-based uncompute of the previous carry.  With several
threads the input register is first cloned into a GHZ state (CNOT tree,
no T cost) and every thread iterates its own contiguous block of
support-sorted terms.

Long Pauli strings (fermionic hopping under the string encoding) are
applied as a chain of pairwise merges along the string rather than one
plane-wide merge.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .lattices import TermTable
from .floorplan import ThreadRegisters

__all__ = ["InstrKind", "Instruction", "synthesize_select", "thread_blocks"]


class InstrKind(Enum):
    PREP = "prep"
    MEASURE = "measure"
    S_GATE = "s"
    H_GATE = "h"
    SURGERY = "surgery"
    CONSUME_MAGIC = "consume_magic"
    COND_CLIFFORD = "cond_clifford"


@dataclass(frozen=True)
class Instruction:
    id: int
    kind: InstrKind
    qubits: tuple[int, ...]
    axes: tuple[str, ...] = ()
    after: tuple[int, ...] = ()
    condition_on: Optional[int] = None
    payload: str = ""
    thread: int = 0

    def __post_init__(self):
        if any(dep >= self.id for dep in self.after):
            raise ValueError(f"instruction {self.id} depends on a later id")
        if self.condition_on is not None and self.condition_on >= self.id:
            raise ValueError(f"instruction {self.id} conditioned on a later id")
        if self.kind is InstrKind.SURGERY and not self.qubits:
            raise ValueError("surgery needs at least one operand")


class _Builder:
    def __init__(self):
        self.instructions: list[Instruction] = []

    def emit(self, kind, qubits, *, axes=(), after=(), condition_on=None,
             payload="", thread=0) -> int:
        iid = len(self.instructions)
        self.instructions.append(
            Instruction(
                id=iid,
                kind=kind,
                qubits=tuple(qubits),
                axes=tuple(axes),
                after=tuple(after),
                condition_on=condition_on,
                payload=payload,
                thread=thread,
            )
        )
        return iid


def thread_blocks(table: TermTable, b: int) -> list[list[int]]:
    """Support-sorted term indices, split into one contiguous block per thread."""
    order = sorted(
        range(table.count),
        key=lambda i: tuple(sorted(q for q, _ in table.terms[i].factors)),
    )
    size = -(-table.count // b)
    return [order[t * size : (t + 1) * size] for t in range(b)]


def _control_registers(table: TermTable, b: int) -> list[ThreadRegisters]:
    """Control-qubit ids per thread; must match the floor-plan numbering."""
    w = table.index_bits
    block = w + max(w - 1, 1)
    regs = []
    nxt = table.n_system
    for t in range(b):
        inputs = tuple(range(nxt, nxt + w))
        carries = tuple(range(nxt + w, nxt + block))
        nxt += block
        regs.append(ThreadRegisters(t, inputs, carries))
    return regs


def synthesize_select(table: TermTable, b: int = 1) -> list[Instruction]:
    """Instruction stream realizing one oracle call with b threads."""
    if table.count < 1:
        raise ValueError("cannot synthesize an oracle for an empty table")
    if not 1 <= b <= table.count:
        raise ValueError(
            f"thread count must lie in [1, {table.count}], got {b}"
        )
    regs = _control_registers(table, b)
    blocks = thread_blocks(table, b)
    builder = _Builder()
    last: dict[int, Optional[int]] = {t: None for t in range(b)}

    def chain(t, kind, qubits, **kw):
        after = kw.pop("after", ())
        if last[t] is not None:
            after = tuple(after) + (last[t],)
        last[t] = builder.emit(kind, qubits, after=after, thread=t, **kw)
        return last[t]

    def consume_t(t, target):
        mid = chain(t, InstrKind.CONSUME_MAGIC, (target,))
        chain(
            t, InstrKind.COND_CLIFFORD, (target,), condition_on=mid, payload="S"
        )

    def and_gadget(t, reg: ThreadRegisters, step: int):
        w = len(reg.input_bits)
        level = min(_trailing_zeros(step), len(reg.carry_bits) - 1)
        a = reg.input_bits[min(level, w - 1)]
        bq = reg.carry_bits[level - 1] if level >= 1 else reg.input_bits[min(1, w - 1)]
        target = reg.carry_bits[level]
        chain(t, InstrKind.H_GATE, (target,))
        chain(t, InstrKind.SURGERY, (a, target), axes=("Z", "X"))
        consume_t(t, a)
        chain(t, InstrKind.SURGERY, (bq, target), axes=("Z", "X"))
        consume_t(t, bq)
        consume_t(t, target)
        consume_t(t, target)
        chain(t, InstrKind.H_GATE, (target,))

    def apply_term(t, reg: ThreadRegisters, term_index: int):
        factors = sorted(table.terms[term_index].factors)
        tail = reg.tail
        if len(factors) <= 2:
            qs = (tail,) + tuple(q for q, _ in factors)
            axes = ("Z",) + tuple(ax for _, ax in factors)
            chain(t, InstrKind.SURGERY, qs, axes=axes)
        else:
            # long strings are applied as pairwise fusions walked along the
            # string, opened and closed against the control flag
            q0, ax0 = factors[0]
            chain(t, InstrKind.SURGERY, (tail, q0), axes=("Z", ax0))
            for (qa, axa), (qb, axb) in zip(factors, factors[1:]):
                chain(t, InstrKind.SURGERY, (qa, qb), axes=(axa, axb))
            qz, axz = factors[-1]
            chain(t, InstrKind.SURGERY, (tail, qz), axes=("Z", axz))

    def uncompute_tail(t, reg: ThreadRegisters):
        mid = chain(t, InstrKind.MEASURE, (reg.tail,), axes=("X",))
        chain(
            t,
            InstrKind.COND_CLIFFORD,
            (reg.input_bits[0], reg.input_bits[min(1, len(reg.input_bits) - 1)]),
            condition_on=mid,
            payload="CZ",
        )

    # GHZ cloning of the input register across threads (CNOT tree)
    copy_pairs: list[tuple[int, int]] = []
    span = 1
    while span < b:
        for src in range(span):
            dst = src + span
            if dst < b:
                copy_pairs.append((src, dst))
        span *= 2
    for src, dst in copy_pairs:
        for qs, qd in zip(regs[src].input_bits, regs[dst].input_bits):
            after = tuple(x for x in (last[src], last[dst]) if x is not None)
            iid = builder.emit(
                InstrKind.SURGERY, (qs, qd), axes=("Z", "X"), after=after, thread=dst
            )
            last[dst] = iid
            last[src] = iid

    # emit term cycles round-robin across threads so that cross-thread
    # collisions on shared system qubits pair step k with step k, not one
    # thread's tail with another's head
    for k in range(max(len(block) for block in blocks)):
        for t, (reg, block) in enumerate(zip(regs, blocks)):
            if k >= len(block):
                continue
            if k == 0:
                chain(t, InstrKind.PREP, (reg.tail,), axes=("Z",))
                if t == 0:
                    # the zeroth index flag is a bare CNOT off the input bit
                    chain(
                        t,
                        InstrKind.SURGERY,
                        (reg.input_bits[0], reg.tail),
                        axes=("Z", "X"),
                    )
                else:
                    # threads starting mid-range rebuild the carry ladder to
                    # their first index; half the register depth is fresh on
                    # average
                    for step in range(-(-table.index_bits // 2)):
                        and_gadget(t, reg, 1 << min(step, len(reg.carry_bits) - 1))
            else:
                uncompute_tail(t, reg)
                and_gadget(t, reg, k)
            apply_term(t, reg, block[k])
    for t, block in enumerate(blocks):
        if block:
            uncompute_tail(t, regs[t])

    # un-clone the GHZ register in reverse order
    for src, dst in reversed(copy_pairs):
        for qs, qd in zip(regs[src].input_bits, regs[dst].input_bits):
            after = tuple(x for x in (last[src], last[dst]) if x is not None)
            last[dst] = builder.emit(
                InstrKind.SURGERY, (qs, qd), axes=("Z", "X"), after=after, thread=dst
            )

    return builder.instructions


def _trailing_zeros(n: int) -> int:
    return (n & -n).bit_length() - 1 if n else 0
