"""Lattice models and their weighted Pauli decompositions.

Terms exist only as cost-model inputs: no matrix representations, no
eigensolvers.  All phases (hopping signs, Pauli products with +/-i) are
absorbed into the unitaries so stored weights are strictly positive.

Site linearization is row-major, p = x + y * Lx.  Fermi-Hubbard spins are
interleaved (qubit = 2p + s) and spin-S sites split into 2S half-spins
(qubit = 2S * p + nu).
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence, Union

from .gatecosts import bits_for

__all__ = [
    "Boundary",
    "HeisenbergJ1J2",
    "FermiHubbard",
    "HeisenbergChain",
    "LatticeSpec",
    "PauliTerm",
    "TermTable",
    "BoundaryRescale",
    "enumerate_terms",
    "boundary_rescale",
    "periodic_spec",
    "lattice_spec_from_mapping",
    "load_lattice_spec",
    "term_table_to_csv",
]


class Boundary(Enum):
    PERIODIC = "periodic"
    OPEN = "open"


def _check_spin(spin: float) -> None:
    twice = 2 * spin
    if twice <= 0 or abs(twice - round(twice)) > 1e-12:
        raise ValueError(f"spin must be a positive half-integer, got {spin}")


@dataclass(frozen=True)
class HeisenbergJ1J2:
    """Square-lattice Heisenberg model with nearest and next-nearest couplings."""

    j1: float = 1.0
    j2: float = 0.5
    spin: float = 0.5

    def __post_init__(self):
        if self.j1 <= 0:
            raise ValueError(f"j1 must be strictly positive, got {self.j1}")
        if self.j2 < 0:
            raise ValueError(f"j2 must be non-negative, got {self.j2}")
        _check_spin(self.spin)


@dataclass(frozen=True)
class FermiHubbard:
    """Square-lattice Hubbard model at half filling, shifted-potential form."""

    t: float = 1.0
    u: float = 4.0

    def __post_init__(self):
        if self.t <= 0:
            raise ValueError(f"t must be strictly positive, got {self.t}")
        if self.u < 0:
            raise ValueError(f"u must be non-negative, got {self.u}")


@dataclass(frozen=True)
class HeisenbergChain:
    """Uniform antiferromagnetic spin-S chain with unit coupling."""

    spin: float = 1.0

    def __post_init__(self):
        _check_spin(self.spin)


ModelParams = Union[HeisenbergJ1J2, FermiHubbard, HeisenbergChain]


@dataclass(frozen=True)
class LatticeSpec:
    extents: tuple[int, ...]
    boundary: tuple[Boundary, ...]
    model: ModelParams

    def __post_init__(self):
        if not self.extents:
            raise ValueError("extents must be non-empty")
        if any(e < 1 for e in self.extents):
            raise ValueError(f"extents must all be >= 1, got {self.extents}")
        if len(self.boundary) != len(self.extents):
            raise ValueError(
                f"boundary list length {len(self.boundary)} does not match "
                f"extents length {len(self.extents)}"
            )

    @property
    def n_sites(self) -> int:
        return math.prod(self.extents)


def cylinder(lx: int, ly: int, model: ModelParams) -> LatticeSpec:
    """Square lattice wrapped along x, open along y."""
    return LatticeSpec((lx, ly), (Boundary.PERIODIC, Boundary.OPEN), model)


def chain(n_sites: int, model: ModelParams, periodic: bool = True) -> LatticeSpec:
    b = Boundary.PERIODIC if periodic else Boundary.OPEN
    return LatticeSpec((n_sites,), (b,), model)


@dataclass(frozen=True)
class PauliTerm:
    weight: float
    factors: tuple[tuple[int, str], ...]

    def __post_init__(self):
        if self.weight <= 0:
            raise ValueError(f"term weight must be positive, got {self.weight}")
        qubits = [q for q, _ in self.factors]
        if len(qubits) != len(set(qubits)):
            raise ValueError(f"duplicate qubit index in factors {self.factors}")
        for _, axis in self.factors:
            if axis not in ("X", "Y", "Z"):
                raise ValueError(f"axis must be X, Y or Z, got {axis!r}")


@dataclass(frozen=True)
class TermTable:
    """Enumerated Pauli terms plus the scalar summaries consumed downstream.

    lam is the L1 norm of the weights, count the number of terms, lam_max the
    largest weight, locality the largest Pauli support, and n_alpha / n_mu the
    number of interaction types and displacement configurations (these size
    the signal registers of the coefficient-loading oracle).  family records
    which model produced the table; the oracle cost models dispatch on it.
    """

    terms: tuple[PauliTerm, ...]
    lam: float
    count: int
    lam_max: float
    n_system: int
    locality: int
    n_alpha: int
    n_mu: int
    family: str = "generic"
    extents: tuple[int, ...] = ()

    @property
    def index_bits(self) -> int:
        """Width of a register addressing the terms (bits of the integer count)."""
        return bits_for(self.count)

    @property
    def system_bits(self) -> int:
        return bits_for(self.n_system)


def _kahan_sum_descending(weights: Iterable[float]) -> float:
    total = 0.0
    carry = 0.0
    for w in sorted(weights, reverse=True):
        y = w - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def _build_table(
    terms: list[PauliTerm],
    n_system: int,
    n_alpha: int,
    n_mu: int,
    family: str,
    extents: tuple[int, ...],
) -> TermTable:
    lam = _kahan_sum_descending(t.weight for t in terms)
    return TermTable(
        terms=tuple(terms),
        lam=lam,
        count=len(terms),
        lam_max=max((t.weight for t in terms), default=0.0),
        n_system=n_system,
        locality=max((len(t.factors) for t in terms), default=0),
        n_alpha=n_alpha,
        n_mu=n_mu,
        family=family,
        extents=extents,
    )


def _neighbors(
    spec: LatticeSpec, displacement: tuple[int, ...]
) -> list[tuple[int, int]]:
    """Site pairs (p, q) with q = p + displacement, respecting the boundary.

    Each site emits each displacement at most once; self-pairs from wrapping
    tiny periodic extents are dropped.
    """
    extents, boundary = spec.extents, spec.boundary
    dims = len(extents)
    pairs = []
    for p in range(spec.n_sites):
        coords = []
        rest = p
        for e in extents:
            coords.append(rest % e)
            rest //= e
        q_coords = []
        ok = True
        for axis in range(dims):
            c = coords[axis] + displacement[axis]
            if boundary[axis] is Boundary.PERIODIC:
                c %= extents[axis]
            elif not 0 <= c < extents[axis]:
                ok = False
                break
            q_coords.append(c)
        if not ok:
            continue
        q = 0
        for axis in reversed(range(dims)):
            q = q * extents[axis] + q_coords[axis]
        if q != p:
            pairs.append((p, q))
    return pairs


_NN_2D = ((1, 0), (0, 1))
_NNN_2D = ((1, 1), (-1, 1))


def _spin_bond_terms(
    terms: list[PauliTerm], p: int, q: int, coupling: float, two_s: int
) -> None:
    # S^a S^a with S^a = (1/2) sum_nu sigma^a: 3 (2S)^2 Paulis of weight J/4
    for nu in range(two_s):
        for tau in range(two_s):
            qp, qq = p * two_s + nu, q * two_s + tau
            for axis in "XYZ":
                terms.append(PauliTerm(coupling / 4.0, ((qp, axis), (qq, axis))))


def _enumerate_heisenberg_2d(spec: LatticeSpec, model: HeisenbergJ1J2) -> TermTable:
    if len(spec.extents) != 2:
        raise ValueError(
            f"square-lattice Heisenberg model needs 2d extents, got {spec.extents}"
        )
    two_s = round(2 * model.spin)
    terms: list[PauliTerm] = []
    for disp in _NN_2D:
        for p, q in _neighbors(spec, disp):
            _spin_bond_terms(terms, p, q, model.j1, two_s)
    if model.j2 > 0:
        for disp in _NNN_2D:
            for p, q in _neighbors(spec, disp):
                _spin_bond_terms(terms, p, q, model.j2, two_s)
    n_mu = len(_NN_2D) + (len(_NNN_2D) if model.j2 > 0 else 0)
    return _build_table(
        terms,
        n_system=spec.n_sites * two_s,
        n_alpha=3,
        n_mu=n_mu * two_s * two_s,
        family="heisenberg2d",
        extents=spec.extents,
    )


def _enumerate_chain(spec: LatticeSpec, model: HeisenbergChain) -> TermTable:
    if len(spec.extents) != 1:
        raise ValueError(f"spin chain needs 1d extents, got {spec.extents}")
    two_s = round(2 * model.spin)
    terms: list[PauliTerm] = []
    for p, q in _neighbors(spec, (1,)):
        _spin_bond_terms(terms, p, q, 1.0, two_s)
    return _build_table(
        terms,
        n_system=spec.n_sites * two_s,
        n_alpha=3,
        n_mu=two_s * two_s,
        family="chain",
        extents=spec.extents,
    )


def _jw_string(a: int, b: int, end_axis: str, t: float) -> PauliTerm:
    lo, hi = min(a, b), max(a, b)
    factors = [(lo, end_axis)]
    factors += [(k, "Z") for k in range(lo + 1, hi)]
    factors.append((hi, end_axis))
    return PauliTerm(t / 2.0, tuple(factors))


def _enumerate_fermi_hubbard(spec: LatticeSpec, model: FermiHubbard) -> TermTable:
    if len(spec.extents) != 2:
        raise ValueError(
            f"Fermi-Hubbard model needs 2d extents, got {spec.extents}"
        )
    terms: list[PauliTerm] = []
    for disp in _NN_2D:
        for p, q in _neighbors(spec, disp):
            for s in (0, 1):
                a, b = 2 * p + s, 2 * q + s
                terms.append(_jw_string(a, b, "X", model.t))
                terms.append(_jw_string(a, b, "Y", model.t))
    if model.u > 0:
        for p in range(spec.n_sites):
            terms.append(
                PauliTerm(model.u / 4.0, ((2 * p, "Z"), (2 * p + 1, "Z")))
            )
    return _build_table(
        terms,
        n_system=2 * spec.n_sites,
        n_alpha=2,
        n_mu=5,
        family="fermi_hubbard",
        extents=spec.extents,
    )


def enumerate_terms(spec: LatticeSpec) -> TermTable:
    """All Pauli terms of the model on the given lattice, with positive weights."""
    model = spec.model
    if isinstance(model, HeisenbergJ1J2):
        return _enumerate_heisenberg_2d(spec, model)
    if isinstance(model, HeisenbergChain):
        return _enumerate_chain(spec, model)
    if isinstance(model, FermiHubbard):
        return _enumerate_fermi_hubbard(spec, model)
    raise TypeError(f"unsupported model {model!r}")


def periodic_spec(spec: LatticeSpec) -> LatticeSpec:
    """The same lattice with every boundary wrapped periodic."""
    return LatticeSpec(
        spec.extents, tuple(Boundary.PERIODIC for _ in spec.extents), spec.model
    )


@dataclass(frozen=True)
class BoundaryRescale:
    beta1_sq: float
    lam_eff: float


def boundary_rescale(
    table: TermTable,
    enumerated_bins: int,
    phantom_weights: Union[float, Sequence[float], None] = None,
) -> BoundaryRescale:
    """Effect of encoding the coefficients with a padded index space.

    The coefficient-loading oracle may enumerate more bins than the lattice
    has terms (padding to a power of two, or reusing a periodic-lattice bin
    layout on an open/cylindrical lattice).  Amplitude leaking into phantom
    bins rescales the simulated operator: the effective L1 norm grows to
    lam / beta1_sq.  Phantom bins carry `phantom_weights` (a scalar, one
    weight per phantom bin, or the mean term weight when omitted).
    """
    if table.lam <= 0 or table.count == 0:
        raise ValueError("cannot rescale an empty Hamiltonian")
    n_phantom = enumerated_bins - table.count
    if n_phantom < 0:
        raise ValueError(
            f"enumerated_bins={enumerated_bins} is smaller than the "
            f"term count {table.count}"
        )
    if phantom_weights is None:
        phantom_total = n_phantom * (table.lam / table.count)
    elif isinstance(phantom_weights, (int, float)):
        phantom_total = n_phantom * float(phantom_weights)
    else:
        if len(phantom_weights) != n_phantom:
            raise ValueError(
                f"expected {n_phantom} phantom weights, got {len(phantom_weights)}"
            )
        phantom_total = _kahan_sum_descending(float(w) for w in phantom_weights)
    lam_encoded = table.lam + phantom_total
    beta1_sq = table.lam / lam_encoded
    return BoundaryRescale(beta1_sq=beta1_sq, lam_eff=table.lam / beta1_sq)


# ---------------------------------------------------------------------------
# configuration and export


_MODEL_KEYS = {
    "heisenberg_j1j2": HeisenbergJ1J2,
    "fermi_hubbard": FermiHubbard,
    "heisenberg_chain": HeisenbergChain,
}


def lattice_spec_from_mapping(cfg: dict) -> LatticeSpec:
    """Build a LatticeSpec from a parsed TOML/JSON mapping.

    Expected keys: model (one of heisenberg_j1j2, fermi_hubbard,
    heisenberg_chain), extents, boundary, and the coupling constants of the
    chosen model (j1, j2, spin / t, u / spin).
    """
    try:
        name = cfg["model"]
        extents = tuple(int(e) for e in cfg["extents"])
    except KeyError as exc:
        raise ValueError(f"missing configuration key: {exc}") from exc
    if name not in _MODEL_KEYS:
        raise ValueError(
            f"unknown model {name!r}; expected one of {sorted(_MODEL_KEYS)}"
        )
    boundary_cfg = cfg.get("boundary")
    if boundary_cfg is None:
        boundary = tuple(
            [Boundary.PERIODIC] + [Boundary.OPEN] * (len(extents) - 1)
        )
    else:
        boundary = tuple(Boundary(str(b).lower()) for b in boundary_cfg)
    cls = _MODEL_KEYS[name]
    field_names = cls.__dataclass_fields__.keys()
    params = {k: cfg[k] for k in field_names if k in cfg}
    return LatticeSpec(extents, boundary, cls(**params))


def load_lattice_spec(path: Union[str, Path]) -> LatticeSpec:
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix == ".json":
        cfg = json.loads(raw)
    else:
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        cfg = tomllib.loads(raw.decode())
    return lattice_spec_from_mapping(cfg)


def term_table_to_csv(table: TermTable, target: Union[str, Path, io.TextIOBase]) -> None:
    """Dump terms as `weight,qubit:axis;qubit:axis` rows for debugging."""

    def _write(fh):
        fh.write("weight,factors\n")
        for term in table.terms:
            factors = ";".join(f"{q}:{axis}" for q, axis in term.factors)
            fh.write(f"{term.weight!r},{factors}\n")

    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8") as fh:
            _write(fh)
    else:
        _write(target)
