import random
from fractions import Fraction

import pytest

from sjforms.cyclotomic import CycRat
from sjforms.series import FourierSeries, Sym2Series, equal_upto


def fs(entries, trunc=8, weight=None):
    return FourierSeries.from_exponents(entries, trunc, weight=weight)


def rand_series(rng, trunc=4, denom=2, nterms=6):
    entries = {}
    for _ in range(nterms):
        a = rng.randint(0, trunc * denom)
        c = rng.randint(0, trunc * denom)
        bmax = int((4 * a * c) ** 0.5)
        b = rng.randint(-bmax, bmax) if bmax else 0
        entries[(a, b, c)] = rng.randint(-9, 9)
    return FourierSeries(denom, trunc, entries, Fraction(rng.randint(1, 5),
                                                         rng.randint(1, 5)))


def test_one_minus_q_squared():
    one_plus = fs([(0, 0, 0, 1), (1, 0, 0, 1)])
    one_minus = fs([(0, 0, 0, 1), (1, 0, 0, -1)])
    prod = one_plus * one_minus
    expect = fs([(0, 0, 0, 1), (2, 0, 0, -1)])
    assert prod == expect
    assert prod.trunc == 8


def test_truncation_contract():
    one = fs([(0, 0, 0, 1)], trunc=3)
    bumped = fs([(0, 0, 0, 1), (4, 0, 0, 1)], trunc=4)
    ok, _ = equal_upto(one, bumped, 3)
    assert ok
    with pytest.raises(ValueError):
        equal_upto(one, bumped, 4)


def test_mismatch_report():
    f = fs([(0, 0, 0, 1)])
    g = fs([(0, 0, 0, 1), (1, 1, 1, 5)])
    ok, mism = equal_upto(f, g, 2)
    assert not ok
    assert mism.exponents == (1, 1, 1)
    assert mism.right == CycRat.from_rational(5)


def test_lcm_denominator_lifting():
    f = fs([(Fraction(1, 2), 0, 0, 1)])
    g = fs([(Fraction(1, 3), 0, 0, 1)])
    prod = f * g
    assert prod.denom == 6
    assert prod.coeff_at(Fraction(5, 6), 0, 0) == CycRat.one()


def test_weight_tags():
    f = fs([(1, 0, 0, 2)], weight=2)
    g = fs([(1, 0, 0, 3)], weight=4)
    assert (f * g).weight == Fraction(6)
    assert (f + f).weight == Fraction(2)
    assert (f + g).weight is None
    assert f.d_partial(11).weight is None


def test_d_partial():
    f = fs([(0, 0, 0, 5)])
    assert f.d_partial(11).is_zero_upto()
    g = fs([(1, 1, 1, 1)])
    for ij in (11, 12, 22):
        assert g.d_partial(ij) == g
    h = fs([(Fraction(1, 2), Fraction(-3, 2), 1, 4)])
    assert h.d_partial(12).coeff_at(Fraction(1, 2), Fraction(-3, 2), 1) == \
        CycRat.from_rational(-6)


def test_d_partial_commutes():
    rng = random.Random(3)
    for _ in range(10):
        f = rand_series(rng)
        lhs = f.d_partial(11).d_partial(22)
        rhs = f.d_partial(22).d_partial(11)
        assert lhs == rhs


def test_witt_collapses_b():
    f = fs([(1, 2, 1, 3), (1, -2, 1, 4), (1, 0, 1, -7)])
    w = f.witt()
    assert w.is_zero_upto()
    g = fs([(1, 1, 1, 3)])
    assert g.witt().coeff_at(1, 0, 1) == CycRat.from_rational(3)


def test_witt_of_tau12_free_series_is_identity():
    f = fs([(1, 0, 2, 5), (0, 0, 0, 1)])
    assert f.witt() == f


def test_witt_multiplicative():
    # restriction to the diagonal is a ring homomorphism
    rng = random.Random(5)
    for _ in range(10):
        f, g = rand_series(rng), rand_series(rng)
        assert (f * g).witt() == f.witt() * g.witt()


def test_witt_d12_of_even_series_vanishes():
    f = fs([(1, 2, 1, 3), (1, -2, 1, 3), (2, 0, 2, 9)])
    assert f.involution() == f
    assert f.d_partial(12).witt().is_zero_upto()


def test_involution_is_ring_automorphism():
    rng = random.Random(9)
    for _ in range(8):
        f, g = rand_series(rng), rand_series(rng)
        assert (f * g).involution() == f.involution() * g.involution()
        assert (f + g).involution() == f.involution() + g.involution()
        assert f.involution().involution() == f
        assert f.involution().witt() == f.witt()


def test_split_types():
    f = fs([(1, 1, 1, 1)])
    even, odd = f.split_types()
    assert even + odd == f
    assert even.involution() == even
    assert odd.involution() == -odd
    half = CycRat.from_rational(Fraction(1, 2))
    assert even.coeff_at(1, 1, 1) == half
    assert even.coeff_at(1, -1, 1) == half
    assert odd.coeff_at(1, -1, 1) == -half


def test_translate():
    f = fs([(1, 0, 0, 1)])
    S0 = ((0, 1), (1, 0))
    assert f.translate(((0, 0), (0, 0))) == f
    assert f.translate(S0) == f  # no t12 dependence
    g = fs([(Fraction(1, 3), Fraction(1, 3), 0, 1)])
    gt = g.translate(S0)
    assert gt.coeff_at(Fraction(1, 3), Fraction(1, 3), 0) == \
        CycRat.root_of_unity(1, 3)


def test_translate_rejects_asymmetric():
    f = fs([(1, 0, 0, 1)])
    with pytest.raises(ValueError):
        f.translate(((0, 1), (0, 0)))


def test_scale_by_cyclotomic():
    f = fs([(1, 1, 1, 2)])
    i = CycRat.root_of_unity(1, 4)
    g = f.scale_by(i)
    assert g.coeff_at(1, 1, 1) == i * 2
    assert g.scale_by(i).coeff_at(1, 1, 1) == CycRat.from_rational(-2)


def test_pow():
    f = fs([(0, 0, 0, 1), (1, 0, 0, 1)], trunc=5)
    cube = f**3
    assert cube.coeff_at(2, 0, 0) == CycRat.from_rational(3)
    assert f**0 == FourierSeries.constant(1, 5)


def test_tau_div_and_swap():
    f = fs([(1, 2, 3, 5)], trunc=12)
    g = f.tau_div(3)
    assert g.denom == 3
    assert g.coeff_at(Fraction(1, 3), Fraction(2, 3), 1) == CycRat.from_rational(5)
    assert f.swap_vars().coeff_at(3, 2, 1) == CycRat.from_rational(5)


def test_certified_flag_checks_keys():
    with pytest.raises(ValueError):
        FourierSeries(1, 4, {(1, 3, 1): 1}, certified=True)
    FourierSeries(1, 4, {(1, 2, 1): 1}, certified=True)


def test_json_golden_roundtrip():
    f = fs([(1, -1, 1, Fraction(3, 7)), (0, 0, 0, 1)])
    f2 = FourierSeries.from_json(f.to_json())
    assert f == f2
    g = f.scale_by(CycRat.root_of_unity(1, 24))
    g2 = FourierSeries.from_json(g.to_json())
    assert g == g2
    # byte-stable
    assert g.to_json() == g2.to_json()


def test_float_eval_constant():
    f = fs([(0, 0, 0, 3)], trunc=8)
    tau = ((2j, 0.1j), (0.1j, 2j))
    assert abs(f.float_eval(tau) - 3) < 1e-12


def test_float_eval_convergence_guard():
    f = fs([(1, 0, 0, 1)], trunc=1)
    with pytest.raises(ValueError):
        f.float_eval(((0.05j, 0), (0, 0.05j)))


def test_sym2_components_share_denom_trunc():
    a = fs([(Fraction(1, 2), 0, 0, 1)], trunc=6)
    b = fs([(Fraction(1, 3), 0, 0, 1)], trunc=4)
    c = fs([(1, 0, 0, 1)], trunc=5)
    h = Sym2Series(a, b, c, weight=3)
    assert h.h20.denom == h.h11.denom == h.h02.denom == 6
    assert h.trunc == 4


def test_sym2_involution_sign():
    a = fs([(1, 1, 1, 1)])
    h = Sym2Series(a, a, a, weight=2)
    hi = h.involution()
    assert hi.h20 == a.involution()
    assert hi.h11 == -a.involution()
