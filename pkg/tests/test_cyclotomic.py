import random
from fractions import Fraction

import pytest

from sjforms.cyclotomic import CycRat, root24_tuple, zc_add, zc_mul


def e(num, den=24):
    return CycRat.root_of_unity(num, den)


def test_root_of_unity_basics():
    assert e(0, 1) == CycRat.from_rational(1)
    assert e(1, 2) == CycRat.from_rational(-1)
    assert e(1, 4) * e(1, 4) == CycRat.from_rational(-1)
    assert e(1, 8) * e(1, 8) == e(1, 4)


def test_root_of_unity_rejects_bad_denominator():
    with pytest.raises(ValueError):
        CycRat.root_of_unity(1, 5)
    with pytest.raises(ValueError):
        CycRat.root_of_unity(1, 48)


def test_primitive_cube_roots_sum():
    assert e(1, 3) + e(2, 3) == CycRat.from_rational(-1)


def test_inverse_of_root():
    assert e(5, 24).inverse() == e(19, 24)
    for k in range(24):
        assert e(k, 24) * e(-k, 24) == CycRat.one()


def test_all_24_roots_distinct_and_order():
    roots = [e(k, 24) for k in range(24)]
    assert len(set(roots)) == 24
    z = e(1, 24)
    assert z**24 == CycRat.one()
    assert z**12 == CycRat.from_rational(-1)


def test_field_axioms_random():
    rng = random.Random(7)

    def rand_elem():
        num = tuple(rng.randint(-5, 5) for _ in range(8))
        return CycRat(num, rng.randint(1, 9))

    for _ in range(40):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == CycRat.zero()
        if not a.is_zero():
            assert a * a.inverse() == CycRat.one()


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        CycRat.zero().inverse()


def test_canonicalization_idempotent():
    a = CycRat((2, 4, 6, 0, 0, 0, 0, 0), 8)
    b = CycRat(a.num, a.den)
    assert a.num == b.num and a.den == b.den
    assert a.num == (1, 2, 3, 0, 0, 0, 0, 0) and a.den == 4


def test_serialization_roundtrip():
    a = e(7, 24) * CycRat.from_rational(Fraction(3, 5)) + CycRat.from_rational(2)
    strings = a.to_strings()
    assert len(strings) == 8
    assert CycRat.from_strings(strings) == a


def test_zc_layer_matches_cycrat():
    rng = random.Random(11)
    for _ in range(50):
        x = tuple(rng.randint(-4, 4) for _ in range(8))
        y = tuple(rng.randint(-4, 4) for _ in range(8))
        prod = CycRat.from_zc(zc_mul(x, y))
        assert prod == CycRat(x) * CycRat(y)
        assert CycRat.from_zc(zc_add(x, y)) == CycRat(x) + CycRat(y)


def test_root24_tuple_int_fastpath():
    assert root24_tuple(0) == 1
    assert root24_tuple(12) == -1
    assert isinstance(root24_tuple(1), tuple)


def test_complex_embedding():
    z = complex(e(1, 24))
    import cmath

    assert abs(z - cmath.exp(2j * cmath.pi / 24)) < 1e-12
