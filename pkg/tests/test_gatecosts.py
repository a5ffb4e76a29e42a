import math

import pytest
from hypothesis import given, strategies as st

from ftx.gatecosts import (
    SynthesisConstants,
    bits_for,
    tcount_adder,
    tcount_controlled_adder,
    tcount_controlled_power2_adder,
    tcount_controlled_rotation,
    tcount_cswap,
    tcount_mcx,
    tcount_power2_adder,
    tcount_rotation,
    tcount_uniform,
)

DEFAULTS = SynthesisConstants()


def test_adder_examples():
    assert tcount_adder(3) == 8
    assert tcount_adder(2) == 4
    assert tcount_adder(10) == 36
    with pytest.raises(ValueError):
        tcount_adder(1)


def test_controlled_adder_examples():
    assert tcount_controlled_adder(1, 3) == 16
    assert tcount_controlled_adder(1, 2) == 8
    assert tcount_controlled_adder(3, 5) == 40
    with pytest.raises(ValueError):
        tcount_controlled_adder(0, 3)


def test_mcx_examples():
    assert tcount_mcx(1) == 0
    assert tcount_mcx(2) == 4  # Toffoli via one logical AND
    assert tcount_mcx(0) == 0


def test_rotation_examples():
    assert tcount_rotation(2**-10, DEFAULTS) == 16
    assert tcount_rotation(0.5, DEFAULTS) == 7
    assert tcount_rotation(2**-20, SynthesisConstants(gamma=1.0, xi=0.0)) == 20
    with pytest.raises(ValueError):
        tcount_rotation(1.5, DEFAULTS)


def test_cswap_and_power2_adder():
    assert tcount_cswap(0) == 0
    assert tcount_cswap(1) == 4
    assert tcount_cswap(3) == 12
    assert tcount_power2_adder(5, 1) == 8
    assert tcount_controlled_power2_adder(2, 5, 1) == 20


def test_bits_for():
    assert bits_for(0) == 1
    assert bits_for(1) == 1
    assert bits_for(128) == 8  # a register holding the value 128 needs 8 bits
    assert bits_for(156) == 8
    assert bits_for(1110) == 11


@given(st.integers(min_value=2, max_value=10_000))
def test_adder_matches_closed_form(n):
    assert tcount_adder(n) == 4 * n - 4


@given(st.integers(min_value=1, max_value=500), st.integers(min_value=2, max_value=500))
def test_controlled_adder_matches_closed_form(m, n):
    assert tcount_controlled_adder(m, n) == 4 * (m - 1) + 8 * (n - 1)


@given(st.integers(min_value=0, max_value=10_000))
def test_mcx_matches_closed_form(m):
    assert tcount_mcx(m) == (0 if m <= 1 else 4 * (m - 1))


@given(st.integers(min_value=1, max_value=60))
def test_rotation_matches_closed_form(k):
    delta = 2.0**-k
    expected = math.ceil(1.03 * k + 5.6)
    assert tcount_rotation(delta, DEFAULTS) == expected


@given(
    st.integers(min_value=1, max_value=100),
    st.integers(min_value=1, max_value=60),
)
def test_controlled_rotation_matches_closed_form(m, k):
    expected = math.ceil(8 * (m - 1) + 2 * 1.03 * k + 2 * 5.6)
    assert tcount_controlled_rotation(m, 2.0**-k, DEFAULTS) == expected


@given(st.integers(min_value=2, max_value=4096), st.integers(min_value=1, max_value=40))
def test_uniform_matches_closed_form(n_values, k):
    expected = math.ceil(8 * math.ceil(math.log2(n_values)) + 2 * 1.03 * k + 2 * 5.6 - 4)
    assert tcount_uniform(n_values, 2.0**-k, DEFAULTS) == expected


@given(st.integers(min_value=2, max_value=1000), st.integers(min_value=2, max_value=1000))
def test_costs_monotone_in_size(a, b):
    lo, hi = sorted((a, b))
    assert tcount_adder(lo) <= tcount_adder(hi)
    assert tcount_mcx(lo) <= tcount_mcx(hi)
    assert tcount_cswap(lo) <= tcount_cswap(hi)


@given(st.integers(min_value=1, max_value=50), st.integers(min_value=1, max_value=50))
def test_rotation_cost_non_increasing_in_accuracy(k1, k2):
    lo, hi = sorted((k1, k2))
    # larger k means smaller delta_ss, so cost may only grow
    assert tcount_rotation(2.0**-lo, DEFAULTS) <= tcount_rotation(2.0**-hi, DEFAULTS)


def test_costs_are_nonnegative_integers():
    for value in (
        tcount_adder(7),
        tcount_mcx(9),
        tcount_rotation(1e-9),
        tcount_uniform(37, 1e-6),
        tcount_controlled_rotation(2, 1e-6),
    ):
        assert isinstance(value, int) and value >= 0


def test_synthesis_constants_validation():
    with pytest.raises(ValueError):
        SynthesisConstants(gamma=0.0)
    with pytest.raises(ValueError):
        SynthesisConstants(xi=-1.0)
