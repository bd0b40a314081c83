import random

import pytest

from bms2d.bipoly import BivariatePolynomial, parse_poly
from bms2d.oracle import random_instance, syndrome_table, weight1_cases
from bms2d.tables import detect_hyperbolic


def test_zero_and_constant_tables(gf16, point5):
    zero = BivariatePolynomial.zero(gf16)
    t = syndrome_table(zero, (2, 2), point5, (5, 5))
    assert all(v == gf16.zero() for row in t.cells for v in row)
    const = parse_poly("a^6", gf16)
    t = syndrome_table(const, (1, 0), point5, (5, 5))
    assert all(v == gf16.parse("a^6") for row in t.cells for v in row)


def test_single_monomial_formula(gf16, point5):
    c = gf16.parse("a^2")
    e = BivariatePolynomial(gf16, {(3, 1): c})
    tau = (1, 4)
    t = syndrome_table(e, tau, point5, (5, 5))
    for i in range(5):
        for j in range(5):
            expected = c * (point5.alpha1 ** ((tau[0] + i) * 3)) \
                         * (point5.alpha2 ** ((tau[1] + j) * 1))
            assert t.get((i, j)) == expected


def test_tables_are_doubly_periodic(gf16, point5):
    rng = random.Random(2)
    inst = random_instance(gf16, point5, (5, 5), weight=2, rng=rng)
    t = inst.table
    for i in range(5):
        for j in range(5):
            assert t.get((i + 5, j)) == t.get((i, j))
            assert t.get((i, j + 10)) == t.get((i, j))


def test_random_instance_reproducible(gf16, point5):
    a = random_instance(gf16, point5, (5, 5), weight=2, rng=random.Random(42), holes=2)
    b = random_instance(gf16, point5, (5, 5), weight=2, rng=random.Random(42), holes=2)
    assert a.e == b.e and a.tau == b.tau and a.holes == b.holes
    assert a.table == b.table


def test_random_instance_hole_mask_keeps_a_window(gf16, point5):
    rng = random.Random(3)
    for _ in range(10):
        inst = random_instance(gf16, point5, (5, 5), weight=2, rng=rng,
                               holes=rng.randrange(4))
        assert len(inst.holes) == len(inst.table.hole_positions())
        assert detect_hyperbolic(inst.table)


def test_random_instance_base_coefficients(gf16, point5):
    rng = random.Random(4)
    inst = random_instance(gf16, point5, (5, 5), weight=3, rng=rng, base_coeffs=True)
    assert all(c == gf16.one() for c in inst.e.coeffs.values())


def test_weight1_case_count(gf16, point5):
    n = sum(1 for _ in weight1_cases(gf16, point5, (5, 5)))
    assert n == 25 * 15 * 25


def test_infeasible_hole_request(gf16, point5):
    rng = random.Random(5)
    with pytest.raises(ValueError):
        random_instance(gf16, point5, (5, 5), weight=1, rng=rng, holes=25)
