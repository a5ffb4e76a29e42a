"""Logical-qubit placement on the 2D surgery plane.

The plane is split top to bottom into a factory region, a control band, and
the system block.  System qubits keep their lattice coordinates, dilated by
1.5x (two occupied rows/columns out of every three) so every patch touches
corridor on a horizontal and a vertical edge.  Each parallelization thread
owns a control array of index bits interleaved with carry bits, laid out as
a two-row checkerboard; the factories sit behind the control band because
only control qubits consume magic states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum

from .lattices import TermTable
from .planner import HardwareSpec

__all__ = ["CellRole", "FloorPlan", "ThreadRegisters", "build_floor_plan"]

FACTORY_COLS = 16
FACTORY_ROWS = 11  # 11 x 16 = 176 cells, the per-factory footprint


class CellRole(IntEnum):
    FREE = 0
    CORRIDOR = 1
    SYSTEM = 2
    CONTROL = 3
    FACTORY = 4


@dataclass(frozen=True)
class ThreadRegisters:
    index: int
    input_bits: tuple[int, ...]
    carry_bits: tuple[int, ...]

    @property
    def tail(self) -> int:
        """The carry bit that flags the currently selected term."""
        return self.carry_bits[-1]


@dataclass
class FloorPlan:
    width: int
    height: int
    roles: list[bytearray]
    placement: dict[int, tuple[int, int]]
    factory_ports: list[tuple[int, int]]
    threads: list[ThreadRegisters]
    n_system: int
    regions: dict[str, tuple[int, int, int, int]] = field(default_factory=dict)

    def role_at(self, r: int, c: int) -> CellRole:
        return CellRole(self.roles[r][c])

    def routable(self, r: int, c: int) -> bool:
        return self.roles[r][c] in (CellRole.FREE, CellRole.CORRIDOR)

    def in_bounds(self, r: int, c: int) -> bool:
        return 0 <= r < self.height and 0 <= c < self.width

    def neighbors(self, r: int, c: int):
        if r > 0:
            yield r - 1, c
        if c > 0:
            yield r, c - 1
        if r + 1 < self.height:
            yield r + 1, c
        if c + 1 < self.width:
            yield r, c + 1

    def adjacent_routable(self, qubit: int) -> list[tuple[int, int]]:
        r, c = self.placement[qubit]
        return [(nr, nc) for nr, nc in self.neighbors(r, c) if self.routable(nr, nc)]

    def to_ascii(self) -> str:
        glyphs = {
            CellRole.FREE: ".",
            CellRole.CORRIDOR: ".",
            CellRole.SYSTEM: "S",
            CellRole.CONTROL: "C",
            CellRole.FACTORY: "F",
        }
        rows = []
        ports = set(self.factory_ports)
        for r in range(self.height):
            line = []
            for c in range(self.width):
                line.append("P" if (r, c) in ports else glyphs[self.role_at(r, c)])
            rows.append("".join(line))
        return "\n".join(rows)

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "placement": {str(q): list(rc) for q, rc in self.placement.items()},
            "factory_ports": [list(rc) for rc in self.factory_ports],
            "threads": [
                {
                    "index": t.index,
                    "input_bits": list(t.input_bits),
                    "carry_bits": list(t.carry_bits),
                }
                for t in self.threads
            ],
            "regions": {k: list(v) for k, v in self.regions.items()},
        }

    def check_invariants(self) -> None:
        seen = {}
        for q, (r, c) in self.placement.items():
            if self.roles[r][c] not in (CellRole.SYSTEM, CellRole.CONTROL):
                raise AssertionError(f"qubit {q} placed on a non-qubit cell {(r, c)}")
            if (r, c) in seen:
                raise AssertionError(f"qubits {seen[(r, c)]} and {q} share cell {(r, c)}")
            seen[(r, c)] = q
            horiz = any(
                self.routable(r, nc) for nc in (c - 1, c + 1) if 0 <= nc < self.width
            )
            vert = any(
                self.routable(nr, c) for nr in (r - 1, r + 1) if 0 <= nr < self.height
            )
            if not (horiz and vert):
                raise AssertionError(
                    f"qubit {q} at {(r, c)} lacks corridor contact on both axes"
                )


def _dilate(i: int) -> int:
    """Index of the i-th occupied line in the 2-on-3 corridor pattern."""
    return 3 * (i // 2) + (i % 2)


def _virtual_grid(table: TermTable) -> tuple[int, int, dict[int, tuple[int, int]]]:
    """Undilated (width, height) of the system lattice and qubit coordinates."""
    extents = table.extents
    if not extents:
        raise ValueError("term table carries no lattice extents")
    n_sites = math.prod(extents)
    per_site = table.n_system // n_sites
    coords = {}
    if len(extents) == 1:
        for q in range(table.n_system):
            coords[q] = (q, 0)
        return table.n_system, 1, coords
    # sub-site qubits (spin species, half-spins) sit in adjacent columns
    lx = extents[0]
    for q in range(table.n_system):
        site, sub = divmod(q, per_site)
        x, y = site % lx, site // lx
        coords[q] = (x * per_site + sub, y)
    return lx * per_site, math.prod(extents[1:]), coords


def build_floor_plan(table: TermTable, hw: HardwareSpec) -> FloorPlan:
    """Place system, control and factory regions for one oracle execution."""
    if table.n_system < 1:
        raise ValueError("need at least one system qubit")
    w = table.index_bits
    b = hw.threads
    span = 2 * w  # checkerboard width of one thread array
    sys_w, sys_h, sys_coords = _virtual_grid(table)
    system_width = _dilate(sys_w - 1) + 1
    system_height = _dilate(sys_h - 1) + 1

    # a single row of factories keeps their output paths disjoint
    fac_cols = min(hw.n_factories, 16)
    fac_rows = math.ceil(hw.n_factories / fac_cols)
    factory_width = fac_cols * (FACTORY_COLS + 1) - 1

    width = max(system_width, factory_width, span) + 2

    per_row = max(1, (width - 1) // (span + 1))
    ctrl_rows = math.ceil(b / per_row)

    # two-row corridors separate the regions; a single corridor row divides
    # stacked control rows
    factory_top = 1
    factory_height = fac_rows * (FACTORY_ROWS + 1)
    control_top = factory_top + factory_height + 1
    control_height = ctrl_rows * 3 - 1
    system_top = control_top + control_height + 2
    height = system_top + system_height + 1

    roles = [bytearray([CellRole.CORRIDOR] * width) for _ in range(height)]
    placement: dict[int, tuple[int, int]] = {}

    # factories, spread across the full width so output paths stay disjoint
    ports = []
    fac_pitch = FACTORY_COLS + 1
    if fac_cols > 1:
        fac_pitch = max(fac_pitch, (width - 1 - FACTORY_COLS) // (fac_cols - 1))
    for f in range(hw.n_factories):
        fr, fc = divmod(f, fac_cols)
        r0 = factory_top + fr * (FACTORY_ROWS + 1)
        c0 = 1 + fc * fac_pitch
        for r in range(r0, r0 + FACTORY_ROWS):
            for c in range(c0, c0 + FACTORY_COLS):
                roles[r][c] = CellRole.FACTORY
        ports.append((r0 + FACTORY_ROWS - 1, c0 + FACTORY_COLS // 2))
    factory_region = (factory_top, 1, factory_top + factory_height, width - 1)

    # control band: one two-row checkerboard array per thread, spread out to
    # sit under the factories when a single row of arrays suffices
    in_one_row = per_row >= b
    pitch = span + 1
    if in_one_row and b > 1:
        pitch = max(pitch, (width - 1 - span) // (b - 1))
    threads = []
    next_id = table.n_system
    for t in range(b):
        row_slot, col_slot = divmod(t, per_row)
        r0 = control_top + row_slot * 3
        c0 = 1 + col_slot * (pitch if in_one_row else span + 1)
        input_bits = []
        carry_bits = []
        for j in range(w):
            q = next_id
            next_id += 1
            placement[q] = (r0, c0 + 2 * j)
            roles[r0][c0 + 2 * j] = CellRole.CONTROL
            input_bits.append(q)
        for j in range(w - 1):
            q = next_id
            next_id += 1
            placement[q] = (r0 + 1, c0 + 2 * j + 1)
            roles[r0 + 1][c0 + 2 * j + 1] = CellRole.CONTROL
            carry_bits.append(q)
        if w == 1:
            # degenerate single-term register still needs a tail flag cell
            q = next_id
            next_id += 1
            placement[q] = (r0 + 1, c0 + 1)
            roles[r0 + 1][c0 + 1] = CellRole.CONTROL
            carry_bits.append(q)
        threads.append(ThreadRegisters(t, tuple(input_bits), tuple(carry_bits)))
    control_region = (control_top, 1, control_top + control_height, width - 1)

    # system block, lattice coordinates dilated 1.5x
    for q, (vx, vy) in sys_coords.items():
        r = system_top + _dilate(vy)
        c = 1 + _dilate(vx)
        placement[q] = (r, c)
        roles[r][c] = CellRole.SYSTEM
    system_region = (system_top, 1, system_top + system_height, 1 + system_width)

    plan = FloorPlan(
        width=width,
        height=height,
        roles=roles,
        placement=placement,
        factory_ports=ports,
        threads=threads,
        n_system=table.n_system,
        regions={
            "factory": factory_region,
            "control": control_region,
            "system": system_region,
        },
    )
    plan.check_invariants()
    return plan
