from fractions import Fraction
from math import gcd

from hypothesis import given, settings, strategies as st

from gbs.covering import cycle_cover, index2_cycle, lift_labels
from gbs.graph import GbsGraph
from gbs.modular import (
    common_power,
    cycle_moduli,
    image_generator_cyclic,
    modular_image,
    primitive_base,
    subgroup_of_rationals,
)

from conftest import covers


def test_bs_loop_image():
    g = GbsGraph.build(["v"], [("t", "v", "v", 2, 6)])
    assert image_generator_cyclic(modular_image(g)) == 3


def test_tree_has_trivial_image():
    g = GbsGraph.build(["u", "v"], [("e", "u", "v", 2, 3)])
    img = modular_image(g)
    assert img.rank == 0 and not img.has_negative
    assert image_generator_cyclic(img) == 1
    assert str(img) == "trivial"


def test_two_cycle_image():
    img = modular_image(index2_cycle(2, 3))
    assert image_generator_cyclic(img) == Fraction(9, 4)


def test_two_primes_are_not_cyclic():
    img = subgroup_of_rationals([2, 3])
    assert img.rank == 2
    assert image_generator_cyclic(img) is None


def test_negative_modulus_sets_sign():
    g = GbsGraph.build(["v"], [("t", "v", "v", -2, 4)])
    img = modular_image(g)
    assert img.has_negative
    assert image_generator_cyclic(img) is None


def test_canonical_form_ignores_generating_set():
    assert subgroup_of_rationals([4, 8]) == subgroup_of_rationals([2])
    assert subgroup_of_rationals([Fraction(9, 4), Fraction(3, 2)]) == subgroup_of_rationals([Fraction(2, 3)])
    assert subgroup_of_rationals([-2, 4]) == subgroup_of_rationals([-2])
    # <-2, 3> and <2, -3> are the same subgroup; <-2, -3> is different
    assert subgroup_of_rationals([-2, 3]) == subgroup_of_rationals([-2, -6])
    assert subgroup_of_rationals([-2, 3]) != subgroup_of_rationals([-2, -3])


def test_primitive_base():
    assert (primitive_base(8).base, primitive_base(8).exponent) == (2, 3)
    assert (primitive_base(6).base, primitive_base(6).exponent) == (6, 1)
    assert (primitive_base(2).base, primitive_base(2).exponent) == (2, 1)
    assert (primitive_base(36).base, primitive_base(36).exponent) == (6, 2)


@given(st.integers(2, 10**6))
def test_primitive_base_is_primitive(n):
    pb = primitive_base(n)
    assert pb.base ** pb.exponent == n
    assert primitive_base(pb.base).exponent == 1


def test_common_power():
    assert common_power(4, 8) == (3, 2)
    assert common_power(2, 3) is None
    assert common_power(Fraction(9, 4), Fraction(3, 2)) == (1, 2)


@given(st.fractions(min_value=Fraction(11, 10), max_value=100, max_denominator=50))
def test_common_power_with_itself(q):
    assert common_power(q, q) == (1, 1)


@given(st.integers(2, 40), st.integers(1, 6), st.integers(1, 6))
def test_common_power_oracle(base, i, j):
    k, l = common_power(base ** i, base ** j)
    assert (base ** i) ** k == (base ** j) ** l
    g = gcd(i, j)
    assert (k, l) == (j // g, i // g)


@settings(deadline=None)
@given(st.integers(1, 8), st.sampled_from([(2, 6), (3, 2), (2, 9), (5, 10)]))
def test_cycle_cover_image_is_power_of_base_image(N, mn):
    m, n = mn
    img = modular_image(lift_labels(cycle_cover(N), m, n))
    assert image_generator_cyclic(img) == Fraction(max(m, n), min(m, n)) ** N


@settings(deadline=None)
@given(covers(max_d=3, max_sheets=5), st.sampled_from([(1, 2), (2, 3), (3, 3)]))
def test_cover_moduli_are_powers_of_base_modulus(c, pq):
    p, q = pq
    base = Fraction(q, p)
    powers = {base ** j for j in range(-c.n_sheets, c.n_sheets + 1)}
    for mod in cycle_moduli(lift_labels(c, p, q)):
        assert mod in powers
