import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bms2d.gf import FieldError, FieldSpec, build_field, field_for, root_of_unity


def test_gf16_unit_group_order(gf16):
    a = gf16.gen()
    assert a ** 15 == gf16.one()
    assert gf16.order == 16


def test_reduction_by_modulus(gf16):
    # x^4 reduces to x + 1 under the default degree-4 modulus
    a = gf16.gen()
    assert a ** 4 == a + gf16.one()


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError, match="reducible"):
        field_for(2, 4, 0x15)  # x^4 + x^2 + 1 = (x^2 + x + 1)^2


def test_non_primitive_generator_rejected():
    # x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5, not 15
    with pytest.raises(FieldError, match="primitive"):
        field_for(2, 4, 0x1F)


def test_mul_examples(gf16):
    a = gf16.gen()
    assert (a ** 5) * (a ** 13) == a ** 3
    assert gf16.zero() * (a ** 7) == gf16.zero()
    assert (a ** 7) * (a ** 8) == gf16.one()


def test_add_examples(gf16):
    a = gf16.gen()
    assert (a ** 5) + (a ** 5) == gf16.zero()
    assert (a ** 9) + gf16.zero() == a ** 9
    assert a + a ** 4 == gf16.one()


def test_inv_examples(gf16):
    a = gf16.gen()
    assert (a ** 7).inverse() == a ** 8
    assert gf16.one().inverse() == gf16.one()
    with pytest.raises(FieldError):
        gf16.zero().inverse()


def test_root_of_unity_examples(gf16):
    a = gf16.gen()
    r5 = root_of_unity(gf16, 5)
    assert r5 == a ** 3
    assert r5 ** 5 == gf16.one() and r5 != gf16.one()
    assert r5.multiplicative_order() == 5
    assert root_of_unity(gf16, 1) == gf16.one()
    with pytest.raises(FieldError):
        root_of_unity(gf16, 7)


def test_mixed_field_operations_rejected(gf16, gf8):
    with pytest.raises(FieldError):
        gf16.one() + gf8.one()
    with pytest.raises(FieldError):
        gf16.one() * gf8.gen()


def test_parse_format_round_trip(gf16):
    for x in gf16.elements():
        assert gf16.parse(str(x)) == x
    with pytest.raises(FieldError):
        gf16.parse("b^2")


def test_every_nonzero_element_has_full_group_order(gf16):
    for x in gf16.elements()[1:]:
        assert x ** gf16.n_units == gf16.one()


def test_field_cache_returns_same_object():
    assert field_for(2, 4) is field_for(2, 4)


def test_build_field_from_spec():
    spec = FieldSpec(2, 1, 3, (1, 1, 0, 1))
    f = build_field(spec)
    assert f.order == 8


def test_odd_characteristic_field():
    f = field_for(3, 2)
    g = f.gen()
    assert g.multiplicative_order() == 8
    one = f.one()
    assert one + one + one == f.zero()  # characteristic 3
    assert -one + one == f.zero()
    for x in f.elements()[1:]:
        assert x * x.inverse() == one


def test_base_subfield_membership():
    f = field_for(2, 4, base_exp=2, symbol="a")
    # base field GF(4) inside GF(16): logs multiple of 5
    assert f.in_base_field(f.zero())
    assert f.in_base_field(f.from_log(5))
    assert not f.in_base_field(f.gen())


def test_table_cap_enforced():
    with pytest.raises(FieldError, match="cap"):
        field_for(2, 21, [1] + [0] * 20 + [1])


_els = st.integers(min_value=-1, max_value=14)


@settings(max_examples=300, deadline=None)
@given(_els, _els, _els)
def test_field_axioms(x, y, z):
    f = field_for(2, 4)
    a, b, c = (f.zero() if k < 0 else f.from_log(k) for k in (x, y, z))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inverse() == f.one()
    assert a + (-a) == f.zero()


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=-1, max_value=6), st.integers(min_value=-1, max_value=6))
def test_field_axioms_gf8(x, y):
    f = field_for(2, 3)
    a = f.zero() if x < 0 else f.from_log(x)
    b = f.zero() if y < 0 else f.from_log(y)
    assert (a + b) * (a + b) == a * a + b * b  # Frobenius in characteristic 2
