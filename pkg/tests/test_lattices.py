import io
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ftx.lattices import (
    Boundary,
    FermiHubbard,
    HeisenbergChain,
    HeisenbergJ1J2,
    LatticeSpec,
    PauliTerm,
    boundary_rescale,
    chain,
    cylinder,
    enumerate_terms,
    lattice_spec_from_mapping,
    load_lattice_spec,
    periodic_spec,
    term_table_to_csv,
)


def brute_force_edges(lx, ly, x_periodic, displacement):
    """Independent adjacency oracle: count ordered site pairs p -> p + mu."""
    count = 0
    for y in range(ly):
        for x in range(lx):
            nx, ny = x + displacement[0], y + displacement[1]
            if x_periodic:
                nx %= lx
            if not (0 <= nx < lx and 0 <= ny < ly):
                continue
            if (nx, ny) != (x, y):
                count += 1
    return count


def counted_lambda(lx, ly, j1, j2):
    e1 = sum(brute_force_edges(lx, ly, True, d) for d in [(1, 0), (0, 1)])
    e2 = sum(brute_force_edges(lx, ly, True, d) for d in [(1, 1), (-1, 1)])
    return e1, e2, 3 * (e1 * j1 + e2 * j2) / 4


def test_4x4_heisenberg_cylinder():
    table = enumerate_terms(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    e1, e2, lam = counted_lambda(4, 4, 1.0, 0.5)
    assert (e1, e2) == (28, 24)
    assert table.count == 156
    assert table.lam == pytest.approx(30.0, rel=1e-12)
    assert table.lam == pytest.approx(lam, rel=1e-12)
    assert table.n_system == 16
    assert table.locality == 2
    assert table.lam_max == 0.25


def test_1x1_spin_models_are_empty():
    for model in (HeisenbergJ1J2(), HeisenbergChain()):
        spec = (
            LatticeSpec((1, 1), (Boundary.OPEN, Boundary.OPEN), model)
            if isinstance(model, HeisenbergJ1J2)
            else LatticeSpec((1,), (Boundary.OPEN,), model)
        )
        table = enumerate_terms(spec)
        assert table.count == 0
        assert table.lam == 0.0


def test_6x6_fermi_hubbard_cylinder():
    table = enumerate_terms(cylinder(6, 6, FermiHubbard(1.0, 4.0)))
    edges = sum(brute_force_edges(6, 6, True, d) for d in [(1, 0), (0, 1)])
    assert edges == 66
    assert table.count == 4 * edges + 36
    assert table.lam == pytest.approx(168.0, rel=1e-12)  # 2t per edge + U/4 per site
    assert table.n_system == 72


def test_fermi_hubbard_term_structure():
    table = enumerate_terms(cylinder(4, 4, FermiHubbard(1.0, 4.0)))
    assert table.count == 128  # 4 E + N_site
    hop = [t for t in table.terms if t.weight == 0.5]
    onsite = [t for t in table.terms if t.weight == 1.0]
    assert len(hop) == 112 and len(onsite) == 16
    for term in onsite:
        assert [ax for _, ax in term.factors] == ["Z", "Z"]
    for term in hop:
        axes = [ax for _, ax in term.factors]
        assert axes[0] == axes[-1] and axes[0] in ("X", "Y")
        assert all(ax == "Z" for ax in axes[1:-1])
        qubits = [q for q, _ in term.factors]
        assert qubits == sorted(qubits)  # contiguous string in site order


def test_spin1_chain_term_count():
    table = enumerate_terms(chain(10, HeisenbergChain(1.0)))
    # periodic chain: N bonds, 3 (2S)^2 Paulis per bond at weight 1/4
    assert table.count == 10 * 12
    assert table.lam == pytest.approx(30.0, rel=1e-12)
    assert table.n_system == 20
    open_table = enumerate_terms(chain(10, HeisenbergChain(1.0), periodic=False))
    assert open_table.count == 9 * 12


def test_bond_count_doubles_with_periodic_axis():
    small = enumerate_terms(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.0, 0.5)))
    big = enumerate_terms(cylinder(8, 4, HeisenbergJ1J2(1.0, 0.0, 0.5)))
    # doubling the periodic extent doubles every bond class exactly
    assert big.count == 2 * small.count
    assert big.lam == pytest.approx(2 * small.lam, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    lx=st.integers(min_value=2, max_value=7),
    ly=st.integers(min_value=1, max_value=7),
    j2=st.floats(min_value=0.0, max_value=2.0),
)
def test_heisenberg_lambda_matches_adjacency_oracle(lx, ly, j2):
    table = enumerate_terms(cylinder(lx, ly, HeisenbergJ1J2(1.0, j2, 0.5)))
    e1, e2, lam = counted_lambda(lx, ly, 1.0, j2)
    assert table.lam == pytest.approx(lam, rel=1e-12)
    expected_terms = 3 * (e1 + (e2 if j2 > 0 else 0))
    assert table.count == expected_terms
    assert all(t.weight > 0 for t in table.terms)


@settings(max_examples=30, deadline=None)
@given(
    lx=st.integers(min_value=2, max_value=6),
    ly=st.integers(min_value=2, max_value=6),
)
def test_no_duplicate_factors_within_terms(lx, ly):
    table = enumerate_terms(cylinder(lx, ly, FermiHubbard(1.0, 4.0)))
    for term in table.terms:
        qubits = [q for q, _ in term.factors]
        assert len(qubits) == len(set(qubits))
        assert all(0 <= q < table.n_system for q in qubits)


def test_lambda_accumulation_is_tight():
    table = enumerate_terms(cylinder(10, 10, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    assert table.lam == pytest.approx(
        float(np.sum([t.weight for t in table.terms])), rel=1e-12
    )
    assert table.count == 1110
    assert table.lam == pytest.approx(210.0, rel=1e-12)


def test_spin_s_bond_multiplicity():
    table = enumerate_terms(chain(4, HeisenbergChain(1.5), periodic=False))
    # spin-3/2: each bond becomes 3 (2S)^2 = 27 Paulis of weight 1/4
    assert table.count == 3 * 27
    assert table.lam == pytest.approx(3 * 27 / 4, rel=1e-12)


def test_boundary_rescale_perfect_prepare():
    table = enumerate_terms(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    res = boundary_rescale(table, table.count)
    assert res.beta1_sq == pytest.approx(1.0, rel=1e-12)
    assert res.lam_eff == pytest.approx(table.lam, rel=1e-12)


def test_boundary_rescale_periodic_padding():
    cyl = enumerate_terms(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5)))
    torus = enumerate_terms(periodic_spec(cylinder(4, 4, HeisenbergJ1J2(1.0, 0.5, 0.5))))
    assert torus.count == 192 and torus.lam == pytest.approx(36.0)
    # phantom bins: what the periodic bin layout enumerates beyond the cylinder
    cyl_w, tor_w = Counter(t.weight for t in cyl.terms), Counter(
        t.weight for t in torus.terms
    )
    phantoms = []
    for w, cnt in sorted(tor_w.items()):
        phantoms += [w] * (cnt - cyl_w.get(w, 0))
    res = boundary_rescale(cyl, torus.count, phantoms)
    assert res.beta1_sq == pytest.approx(30.0 / 36.0, rel=1e-12)
    assert res.lam_eff == pytest.approx(36.0, rel=1e-12)
    assert res.lam_eff >= cyl.lam


def test_boundary_rescale_errors():
    table = enumerate_terms(cylinder(4, 4, HeisenbergJ1J2()))
    empty = enumerate_terms(
        LatticeSpec((1, 1), (Boundary.OPEN, Boundary.OPEN), HeisenbergJ1J2())
    )
    with pytest.raises(ValueError):
        boundary_rescale(table, table.count - 1)
    with pytest.raises(ValueError):
        boundary_rescale(empty, 4)


def test_spec_validation():
    with pytest.raises(ValueError):
        LatticeSpec((), (), HeisenbergJ1J2())
    with pytest.raises(ValueError):
        LatticeSpec((4, 0), (Boundary.OPEN, Boundary.OPEN), HeisenbergJ1J2())
    with pytest.raises(ValueError):
        LatticeSpec((4,), (Boundary.OPEN, Boundary.OPEN), HeisenbergJ1J2())
    with pytest.raises(ValueError):
        HeisenbergJ1J2(j1=-1.0)
    with pytest.raises(ValueError):
        HeisenbergJ1J2(spin=0.3)
    with pytest.raises(ValueError):
        FermiHubbard(t=0.0)
    with pytest.raises(ValueError):
        PauliTerm(0.5, ((0, "X"), (0, "Z")))
    with pytest.raises(ValueError):
        PauliTerm(-0.5, ((0, "X"),))
    with pytest.raises(ValueError):
        enumerate_terms(LatticeSpec((5,), (Boundary.OPEN,), HeisenbergJ1J2()))
    with pytest.raises(ValueError):
        enumerate_terms(LatticeSpec((5,), (Boundary.OPEN,), FermiHubbard()))


def test_config_loading(tmp_path):
    toml_file = tmp_path / "model.toml"
    toml_file.write_text(
        'model = "heisenberg_j1j2"\nextents = [4, 4]\n'
        'boundary = ["periodic", "open"]\nj1 = 1.0\nj2 = 0.5\nspin = 0.5\n'
    )
    spec = load_lattice_spec(toml_file)
    assert spec.extents == (4, 4)
    assert spec.boundary == (Boundary.PERIODIC, Boundary.OPEN)
    assert enumerate_terms(spec).count == 156

    json_file = tmp_path / "model.json"
    json_file.write_text(
        '{"model": "fermi_hubbard", "extents": [4, 4], '
        '"boundary": ["periodic", "open"], "t": 1.0, "u": 4.0}'
    )
    assert enumerate_terms(load_lattice_spec(json_file)).count == 128

    with pytest.raises(ValueError):
        lattice_spec_from_mapping({"model": "nope", "extents": [2, 2]})


def test_csv_export():
    table = enumerate_terms(chain(3, HeisenbergChain(0.5), periodic=False))
    buf = io.StringIO()
    term_table_to_csv(table, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "weight,factors"
    assert len(lines) == table.count + 1
    assert lines[1].startswith("0.25,")
    assert ":" in lines[1] and ";" in lines[1]
