import itertools
from fractions import Fraction

import numpy as np
import pytest

from sjforms import lattices, theta
from sjforms.cyclotomic import CycRat
from sjforms.series import FourierSeries, equal_upto

TAU_EASY = ((0.3 + 2.0j, 0.5 + 0.9j), (0.5 + 0.9j, -0.2 + 2.2j))


def test_odd_characteristics_vanish():
    for m in theta.ODD_CHARS:
        assert theta.theta_const(m, 6).is_zero_upto()
    assert theta.theta_const((1, 1), 6, degree=1).is_zero_upto()


def test_theta_0000_leading_coefficients():
    f = theta.theta_const((0, 0, 0, 0), 4)
    assert f.coeff_at(0, 0, 0) == CycRat.one()
    # oracle: p = (+-1, 0) are the only vectors with exponent (1/2, 0, 0)
    assert f.coeff_at(Fraction(1, 2), 0, 0) == CycRat.from_rational(2)
    assert f.coeff_at(Fraction(1, 2), 1, Fraction(1, 2)) == CycRat.from_rational(2)


def test_sign_rule_all_characteristics():
    shifts = [(1, 0, 0, 0), (0, 1, 1, 0), (1, 1, 1, 1), (0, 0, 2, 1), (2, 1, 0, 3)]
    for m in itertools.product((0, 1), repeat=4):
        f = theta.theta_const(m, 4)
        for n in shifts:
            shifted = tuple(mi + 2 * ni for mi, ni in zip(m, n))
            g = theta.theta_const(shifted, 4)
            sign = (-1) ** (m[0] * n[2] + m[1] * n[3])
            ok, _ = equal_upto(g, f.scale_by(sign), 4)
            assert ok, (m, n)


def test_mod2_dependence_for_even_upper():
    # m' == 0: the theta constant depends only on m mod 2
    f = theta.theta_const((0, 0, 1, 0), 4)
    g = theta.theta_const((0, 0, 3, 2), 4)
    assert f == g


def test_jacobi_quartic_degree1():
    N = 8
    A = theta.theta_const((0, 0), N, degree=1)
    B = theta.theta_const((0, 1), N, degree=1)
    C = theta.theta_const((1, 0), N, degree=1)
    assert A**4 == B**4 + C**4
    a = theta.theta_const((0, 0), N, degree=1, var="t22")
    b = theta.theta_const((0, 1), N, degree=1, var="t22")
    c = theta.theta_const((1, 0), N, degree=1, var="t22")
    assert a**4 == b**4 + c**4


def test_theta_a2_degree1_expansion():
    f = theta.theta_lattice(lattices.A2, degree=1, N=5)
    coeffs = [f.coeff_at(n, 0, 0).as_fraction() for n in range(6)]
    assert coeffs == [1, 6, 0, 6, 6, 0]


def test_theta_e8_degree1_counts():
    f = theta.theta_lattice(lattices.E8, degree=1, N=2)
    assert f.coeff_at(0, 0, 0) == CycRat.one()
    assert f.coeff_at(1, 0, 0) == CycRat.from_rational(240)
    assert f.coeff_at(2, 0, 0) == CycRat.from_rational(2160)


def test_e6s_is_three_times_e6_inverse():
    sp, s = lattices.E6.inverse_scaled()
    assert s == 3
    assert sp == lattices.E6S.entries
    assert lattices.E6.det == 3
    assert lattices.E6S.det == 3**5


def test_e6s_has_no_norm_two_vector():
    f = theta.theta_lattice(lattices.E6S, degree=1, N=3)
    assert f.coeff_at(1, 0, 0).is_zero()
    assert f.coeff_at(2, 0, 0) == CycRat.from_rational(54)


def test_pair_counts_against_bruteforce():
    bound = 6
    vs = lattices.enumerate_short_vectors(lattices.A2, bound)
    g = lattices.A2.as_array()
    expect = {}
    for x in vs:
        for y in vs:
            qx = int(x @ g @ x)
            qy = int(y @ g @ y)
            b = int(x @ g @ y)
            key = (qx, b, qy)
            expect[key] = expect.get(key, 0) + 1
    got = lattices.theta2_pair_counts(lattices.A2, bound)
    assert got == expect


def test_witt_phase_histograms_against_bruteforce():
    bound = 8
    vs = lattices.enumerate_short_vectors(lattices.A2, bound)
    g = lattices.A2.as_array()
    expect = {}
    for x in vs:
        for y in vs:
            qx, qy, b = int(x @ g @ x), int(y @ g @ y), int(x @ g @ y)
            cur = expect.setdefault((qx, qy), [[0] * 3, [0] * 3, [0] * 3])
            cls = b % 3
            cur[0][cls] += 1
            cur[1][cls] += b
            cur[2][cls] += b * b
    got = lattices.witt_phase_histograms(lattices.A2, bound)
    expect = {k: tuple(tuple(r) for r in v) for k, v in expect.items()}
    assert got == expect


def test_phi4_matches_direct_rank8_pair_sum():
    direct = theta.theta_lattice(lattices.E8, degree=2, N=2)
    viatheta = theta.phi4_series(2)
    assert direct == viatheta
    assert viatheta.coeff_at(0, 0, 0) == CycRat.one()
    assert viatheta.coeff_at(1, 0, 0) == CycRat.from_rational(240)


def test_lattice_witt_factorizes():
    f = theta.theta_lattice(lattices.A2, degree=2, N=4)
    c1 = theta.theta_lattice(lattices.A2, degree=1, N=4)
    c2 = theta.theta_lattice(lattices.A2, degree=1, N=4, var="t22")
    assert f.witt() == c1 * c2
    assert f.involution() == f


def test_harmonic_c4_basics():
    c4 = theta.theta_harmonic_c4(3)
    assert c4.coeff_at(0, 0, 0).is_zero()
    assert c4.witt().is_zero_upto()
    assert c4.involution() == c4
    # brute-force oracle at tiny truncation
    vs = lattices.enumerate_short_vectors(lattices.T4, 2 * 2)
    expect = {}
    for x in vs.tolist():
        for y in vs.tolist():
            x1, x2, x3, x4 = x
            y1, y2, y3, y4 = y
            c = (x1 * y3 - x3 * y1) + (x2 * y4 - x4 * y2)
            d = (x1 * y4 - x4 * y1) + (x3 * y2 - x2 * y3) + (x1 * y2 - x2 * y1)
            w = c * c - d * d
            if not w:
                continue
            qx = x1 * x1 + x2 * x2 + 3 * (x3 * x3 + x4 * x4) + 3 * (x1 * x3 + x2 * x4)
            qy = y1 * y1 + y2 * y2 + 3 * (y3 * y3 + y4 * y4) + 3 * (y1 * y3 + y2 * y4)
            b = (2 * (x1 * y1 + x2 * y2) + 6 * (x3 * y3 + x4 * y4)
                 + 3 * (x1 * y3 + x3 * y1 + x2 * y4 + x4 * y2))
            key = (qx, b, qy)
            expect[key] = expect.get(key, 0) + w
    expect = {k: v for k, v in expect.items() if v and k[0] <= 2 and k[2] <= 2}
    small = theta.theta_harmonic_c4(2)
    got = {k: int(z * small.scale) for k, z in small.terms.items()}
    assert got == expect


def test_second_kind_derivative_consistency():
    for nu in ((0, 0), (0, 1), (1, 0), (1, 1)):
        value, d11, d12, d22 = theta.theta_second_kind(nu, 5)
        assert value.d_partial(11) == d11
        assert value.d_partial(12) == d12
        assert value.d_partial(22) == d22
        assert d12.witt().is_zero_upto()
        assert value.involution() == value


def test_delta_series():
    d = theta.delta_series(6)
    vals = [d.coeff_at(n, 0, 0).as_fraction() for n in range(1, 7)]
    assert vals == [1, -24, 252, -1472, 4830, -6048]


def test_gamma3_thetas():
    t0, t1 = theta.gamma3_thetas(4)
    assert [t0.coeff_at(n, 0, 0).as_fraction() for n in range(5)] == [1, 6, 0, 6, 6]
    assert t1.coeff_at(Fraction(1, 3), 0, 0) == CycRat.from_rational(3)
    assert t1.coeff_at(Fraction(4, 3), 0, 0) == CycRat.from_rational(3)
    assert t1.coeff_at(Fraction(7, 3), 0, 0) == CycRat.from_rational(6)
    a2d1 = theta.theta_lattice(lattices.A2, degree=1, N=4).lift_denom(3)
    assert t0 == a2d1


def test_gamma3_weight4_eisenstein_identity():
    # x0^4 + 8*x0*x1^3 equals the one-variable rank-8 unimodular theta
    N = 4
    x0, x1 = theta.gamma3_thetas(N)
    e4 = theta.theta_lattice(lattices.E8, degree=1, N=N)
    assert x0**4 + (x0 * x1**3).scale_by(8) == e4.lift_denom(3)


def _relerr(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-30)


def test_eval_theta_char_matches_series():
    for m in ((0, 0, 0, 0), (1, 0, 0, 1), (1, 1, 1, 1)):
        f = theta.theta_const(m, 8)
        assert _relerr(f.float_eval(TAU_EASY), theta.eval_theta_char(m, TAU_EASY)) < 1e-10


def test_eval_lattices_match_series():
    cases = [
        ("a2", theta.theta_lattice(lattices.A2, degree=2, N=8)),
        ("e6", theta.theta_lattice(lattices.E6, degree=2, N=8)),
        ("e6s", theta.theta_lattice(lattices.E6S, degree=2, N=8)),
        ("e8", theta.phi4_series(8)),
    ]
    for name, series in cases:
        lhs = series.float_eval(TAU_EASY)
        rhs = theta.eval_lattice(name, TAU_EASY)
        assert _relerr(lhs, rhs) < 1e-9, name


def test_eval_harmonic_matches_series():
    c4 = theta.theta_harmonic_c4(8)
    assert _relerr(c4.float_eval(TAU_EASY), theta.eval_harmonic_c4(TAU_EASY)) < 1e-9
