"""Series built from lattice sums: theta constants, lattice thetas, the
harmonic weight-4 form, second-kind thetas, and their numeric evaluators.

Conventions (degree 2, tau = [[t11,t12],[t12,t22]]):

* theta constant with characteristic m = (m1', m2', m1'', m2''):
      theta_m(tau) = sum over p in Z^2 of
          e( (1/2) (p+m'/2) tau (p+m'/2)^t + (p+m'/2).(m''/2) )
  With u = 2p + m' the exponent key is (u1^2, 2 u1 u2, u2^2)/8 and the
  coefficient is i^(u1 m1'' + u2 m2''); exponent denominator 8.
* lattice theta of an even Gram matrix S:
      theta_S(tau) = sum over 2 x m integer matrices p of e(Tr(p S p^t tau)/2),
  keys ((xSx)/2, xSy, (ySy)/2), integer exponents.
* second-kind thetas (index 1):
      vartheta_nu(tau) = sum over p of e((p+nu/2) tau (p+nu/2)^t),
  exponent denominator 4.

All one-variable objects live in t11 by default; use .swap_vars() for the
t22 copy.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from . import lattices
from .cyclotomic import root24_tuple, zc_add
from .series import FourierSeries, _min_imag_eig, _tau_entries

__all__ = [
    "EVEN_CHARS",
    "ODD_CHARS",
    "theta_const",
    "theta_lattice",
    "theta_harmonic_c4",
    "theta_second_kind",
    "delta_series",
    "gamma3_thetas",
    "phi4_series",
    "eval_theta_char",
    "eval_lattice",
    "eval_harmonic_c4",
]


def char_parity(m) -> int:
    """0 for even characteristics, 1 for odd (which have zero theta)."""
    if len(m) == 4:
        return (m[0] * m[2] + m[1] * m[3]) % 2
    return (m[0] * m[1]) % 2


EVEN_CHARS = tuple(
    m for m in
    ((a, b, c, d) for a in (0, 1) for b in (0, 1) for c in (0, 1) for d in (0, 1))
    if char_parity(m) == 0
)
ODD_CHARS = tuple(
    m for m in
    ((a, b, c, d) for a in (0, 1) for b in (0, 1) for c in (0, 1) for d in (0, 1))
    if char_parity(m) == 1
)


def char_label(m) -> str:
    return "".join(str(v % 2) for v in m)


@lru_cache(maxsize=None)
def theta_const(m: tuple, N: int, degree: int = 2, var: str = "t11") -> FourierSeries:
    """Theta constant with (arbitrary integral) characteristic m."""
    m = tuple(int(v) for v in m)
    if degree == 2:
        if len(m) != 4:
            raise ValueError("degree-2 characteristic needs 4 entries")
        m1p, m2p, m1pp, m2pp = m
        terms = {}
        lim = isqrt(8 * N)
        for u1 in _residue_range(m1p, lim):
            for u2 in _residue_range(m2p, lim):
                key = (u1 * u1, 2 * u1 * u2, u2 * u2)
                z = root24_tuple(6 * (u1 * m1pp + u2 * m2pp) % 24)
                cur = terms.get(key)
                terms[key] = z if cur is None else zc_add(cur, z)
        return FourierSeries(8, N, terms, weight=Fraction(1, 2),
                             label=f"theta_{char_label(m)}", certified=True)
    if degree == 1:
        if len(m) != 2:
            raise ValueError("degree-1 characteristic needs 2 entries")
        mp, mpp = m
        terms = {}
        lim = isqrt(8 * N)
        for u in _residue_range(mp, lim):
            key = (u * u, 0, 0) if var == "t11" else (0, 0, u * u)
            z = root24_tuple(6 * (u * mpp) % 24)
            cur = terms.get(key)
            terms[key] = z if cur is None else zc_add(cur, z)
        return FourierSeries(8, N, terms, weight=Fraction(1, 2),
                             label=f"theta1_{char_label(m)}_{var}", certified=True)
    raise ValueError("degree must be 1 or 2")


def _residue_range(parity: int, lim: int):
    start = -lim + ((parity - (-lim)) % 2)
    return range(start, lim + 1, 2)


@lru_cache(maxsize=None)
def theta_lattice(gram: lattices.GramMatrix, degree: int = 2, scale: int = 1,
                  N: int = 4, var: str = "t11") -> FourierSeries:
    """theta_S(tau) (scale 1) or theta_S(tau/3) (scale 3), exact to N."""
    if scale not in (1, 3):
        raise ValueError("scale must be 1 or 3")
    bound = 2 * N * scale
    weight = Fraction(gram.n, 2)
    name = gram.name or "S"
    if degree == 1:
        counts = lattices.theta1_counts(gram, bound)
        terms = {}
        for q, cnt in counts.items():
            a = q // 2 if scale == 1 else 4 * q
            key = (a, 0, 0) if var == "t11" else (0, 0, a)
            terms[key] = cnt
        denom = 1 if scale == 1 else 24
        return FourierSeries(denom, N, terms, weight=weight,
                             label=f"theta_{name}_deg1", certified=True)
    if degree != 2:
        raise ValueError("degree must be 1 or 2")
    pairs = lattices.theta2_pair_counts(gram, bound)
    terms = {}
    if scale == 1:
        for (qx, b, qy), cnt in pairs.items():
            terms[(qx // 2, b, qy // 2)] = cnt
        denom = 1
    else:
        for (qx, b, qy), cnt in pairs.items():
            terms[(4 * qx, 8 * b, 4 * qy)] = cnt
        denom = 24
    return FourierSeries(denom, N, terms, weight=weight,
                         label=f"theta_{name}_deg2", certified=True)


@lru_cache(maxsize=None)
def theta_harmonic_c4(N: int) -> FourierSeries:
    """The weight-4 harmonic lattice sum with coefficients c^2 - d^2.

    Exponents are x S4 x^t (not halved), with cross term 2 x S4 y^t; in
    terms of the even matrix T4 = 2*S4 the key is (xT4x/2, xT4y, yT4y/2).
    """
    pairs = lattices.harmonic_pair_counts(2 * N)
    terms = {(qx // 2, b, qy // 2): w for (qx, b, qy), w in pairs.items()}
    return FourierSeries(1, N, terms, weight=4, label="c4", certified=True)


@lru_cache(maxsize=None)
def theta_second_kind(nu: tuple, N: int):
    """(value, d11, d12, d22) for the index-1 second-kind theta at z = 0.

    The derivative series are accumulated as weighted lattice sums and are
    definitionally equal to d_partial of the value; both routes exist so
    they can be cross-checked.
    """
    n1, n2 = (int(v) % 2 for v in nu)
    val, d11, d12, d22 = {}, {}, {}, {}
    lim = isqrt(4 * N)
    for u1 in _residue_range(n1, lim):
        for u2 in _residue_range(n2, lim):
            key = (u1 * u1, 2 * u1 * u2, u2 * u2)
            for store, w in ((val, 4), (d11, u1 * u1), (d12, 2 * u1 * u2),
                             (d22, u2 * u2)):
                if w:
                    store[key] = store.get(key, 0) + w
    label = f"theta2k_{n1}{n2}"
    value = FourierSeries(4, N, val, Fraction(1, 4), weight=None, label=label,
                          certified=True)
    quarter = Fraction(1, 4)
    mk = lambda t, s: FourierSeries(4, N, t, quarter, label=s, certified=True)
    return (value, mk(d11, label + "_d11"), mk(d12, label + "_d12"),
            mk(d22, label + "_d22"))


@lru_cache(maxsize=None)
def delta_series(N: int) -> FourierSeries:
    """q prod_{n>=1} (1-q^n)^24, exact to order N, in t11."""
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for n in range(1, N + 1):
        # multiply by (1 - q^n)^24 via repeated single-factor passes
        for _ in range(24):
            for k in range(N, n - 1, -1):
                coeffs[k] -= coeffs[k - n]
    terms = {}
    for k, v in enumerate(coeffs):
        if v and k + 1 <= N:
            terms[(k + 1, 0, 0)] = v
    return FourierSeries(1, N, terms, weight=12, label="delta", certified=True)


@lru_cache(maxsize=None)
def _a2_coset_qcounts(cls: int, bound_num: int):
    """{9*q: count} for v in A2 + cls*w with v G v^t = q <= bound_num/9.

    Points are t/3 with t in Z^2, t = cls*(2,-1) mod 3; 9*q = t G t^t.
    """
    out = {}
    lim = isqrt(bound_num) + 3
    for t1 in range(-lim, lim + 1):
        if (t1 - 2 * cls) % 3:
            continue
        for t2 in range(-lim, lim + 1):
            if (t2 + cls) % 3:
                continue
            q9 = 2 * t1 * t1 + 2 * t1 * t2 + 2 * t2 * t2
            if q9 <= bound_num:
                out[q9] = out.get(q9, 0) + 1
    return out


@lru_cache(maxsize=None)
def gamma3_thetas(N: int):
    """(theta0, theta1): the level-3 one-variable thetas, denominator 3."""
    t0, t1 = {}, {}
    for q9, cnt in _a2_coset_qcounts(0, 18 * N).items():
        # exponent q/2 = q9/18, key = 3*q/2 = q9/6
        t0[(q9 // 6, 0, 0)] = cnt
    for q9, cnt in _a2_coset_qcounts(1, 18 * N).items():
        t1[(q9 // 6, 0, 0)] = cnt
    mk = lambda t, s: FourierSeries(3, N, t, label=s, certified=True)
    return mk(t0, "gamma3_theta0"), mk(t1, "gamma3_theta1")


@lru_cache(maxsize=None)
def phi4_series(N: int) -> FourierSeries:
    """The weight-4 theta of the even unimodular rank-8 lattice.

    Computed through the coordinate decomposition over Z^8 with glue,
    which turns it into (1/4) * sum of eighth powers of the ten even theta
    constants; cross-checked in the tests against the direct pair sum.
    """
    total = FourierSeries.zero(N, 8)
    for m in EVEN_CHARS:
        total = total + theta_const(m, N) ** 8
    return (total.scale_by(Fraction(1, 4)).reduce_denom()
            .with_weight(4).with_label("phi4"))


# ---------------------------------------------------------------------------
# numeric evaluators (defining-sum evaluation at a point of H_2)
# ---------------------------------------------------------------------------


def _cutoff(tau, extra: float = 0.0) -> int:
    """Exponent bound making the dropped tail < ~1e-15 * e^extra at tau."""
    lam = _min_imag_eig(tau)
    if lam <= 0:
        raise ValueError("point is not in the upper half space")
    return int((36.0 + extra) / (2.0 * cmath.pi * lam)) + 2


def eval_theta_char(m, tau) -> complex:
    """Defining-sum value of the degree-2 theta constant at tau."""
    t11, t12, t22 = _tau_entries(tau)
    pi_i = cmath.pi * 1j
    m1p, m2p, m1pp, m2pp = m
    cut = _cutoff(tau)
    lim = isqrt(8 * cut) + 2
    tot = 0j
    for u1 in _residue_range(m1p, lim):
        for u2 in _residue_range(m2p, lim):
            phase = 1j ** ((u1 * m1pp + u2 * m2pp) % 4)
            tot += phase * cmath.exp(
                pi_i * (u1 * u1 * t11 + 2 * u1 * u2 * t12 + u2 * u2 * t22) / 4)
    return tot


def _a2_coset_points_float(cls: int, qcut: float):
    pts = []
    lim = int(3 * (qcut**0.5 + 2))
    for t1 in range(-lim, lim + 1):
        if (t1 - 2 * cls) % 3:
            continue
        for t2 in range(-lim, lim + 1):
            if (t2 + cls) % 3:
                continue
            q9 = 2 * t1 * t1 + 2 * t1 * t2 + 2 * t2 * t2
            if q9 <= 9 * qcut:
                pts.append((t1 / 3.0, t2 / 3.0, q9 / 9.0))
    arr = np.array(pts, dtype=np.float64).reshape(len(pts), 3)
    return arr[:, :2], arr[:, 2]


_A2F = np.array([[2.0, 1.0], [1.0, 2.0]])


def _eval_e6_glue(tau) -> complex:
    cut = float(_cutoff(tau, extra=18.0))
    locs = {}
    for cls in (0, 1, 2):
        locs[cls] = _a2_coset_points_float(cls, cut)
    total = 0j
    for s in (0, 1, 2):
        ps, qs = locs[s]
        for t in (0, 1, 2):
            pt, qt = locs[t]
            t11, t12, t22 = _tau_entries(tau)
            b = ps @ _A2F @ pt.T
            u = np.exp(1j * cmath.pi * (qs[:, None] * t11 + 2 * b * t12
                                        + qt[None, :] * t22)).sum()
            total += complex(u) ** 3
    return total


def _eval_e6s_glue(tau) -> complex:
    cut = float(_cutoff(tau, extra=18.0)) / 3.0
    pts = []
    cls_list = []
    for cls in (0, 1, 2):
        p, q = _a2_coset_points_float(cls, cut)
        pts.append(np.concatenate([p, q[:, None]], axis=1))
        cls_list.append(np.full(len(q), cls))
    allp = np.concatenate(pts, axis=0)
    cls_arr = np.concatenate(cls_list)
    points, qs = allp[:, :2], allp[:, 2]
    t11, t12, t22 = _tau_entries(tau)
    b = points @ _A2F @ points.T
    base = np.exp(3j * cmath.pi * (qs[:, None] * t11 + 2 * b * t12
                                   + qs[None, :] * t22))
    omega = cmath.exp(2j * cmath.pi / 3)
    total = 0j
    for j in range(3):
        wx = omega ** (j * cls_arr % 3)
        for jp in range(3):
            wy = omega ** (jp * cls_arr % 3)
            t = complex((base * wx[:, None] * wy[None, :]).sum())
            total += t**3
    return total / 9.0


def _pair_sum_chunked(x, g, n, tau, weights=None, chunk=1500) -> complex:
    """sum over pairs of w * e(n_x t11 + (x g y) t12 + n_y t22), chunked in y."""
    t11, t12, t22 = _tau_entries(tau)
    gx = x @ g
    total = 0j
    col = np.exp(2j * cmath.pi * t11 * n)
    for s0 in range(0, len(x), chunk):
        y = x[s0:s0 + chunk]
        r = gx @ y.T
        mat = np.exp(2j * cmath.pi * (r * t12 + n[s0:s0 + chunk][None, :] * t22))
        if weights is not None:
            mat *= weights(x, y)
        total += complex((col[:, None] * mat).sum())
    return total


def _eval_a2_direct(tau) -> complex:
    cut = _cutoff(tau, extra=4.0)
    vs = lattices.enumerate_short_vectors(lattices.A2, 2 * cut)
    x = vs.astype(np.float64)
    g = lattices.A2.as_array().astype(np.float64)
    n = lattices.norm_values(lattices.A2, vs).astype(np.float64) / 2.0
    return _pair_sum_chunked(x, g, n, tau)


def eval_lattice(name: str, tau) -> complex:
    """Defining-sum value of theta_S at tau for S in {A2, E6, E6S, E8}."""
    name = name.lower()
    if name == "a2":
        return _eval_a2_direct(tau)
    if name == "e6":
        return _eval_e6_glue(tau)
    if name == "e6s":
        return _eval_e6s_glue(tau)
    if name == "e8":
        return sum(eval_theta_char(m, tau) ** 8 for m in EVEN_CHARS) / 4.0
    raise ValueError(f"unknown lattice {name}")


def eval_harmonic_c4(tau) -> complex:
    """Defining-sum value of the harmonic weight-4 form at tau."""
    cut = _cutoff(tau, extra=16.0)
    vs = lattices.enumerate_short_vectors(lattices.T4, 2 * cut)
    x = vs.astype(np.float64)
    t4 = lattices.T4.as_array().astype(np.float64)
    qs = lattices.norm_values(lattices.T4, vs).astype(np.float64) / 2.0

    def weights(xs, ys):
        x1, x2, x3, x4 = xs[:, 0:1], xs[:, 1:2], xs[:, 2:3], xs[:, 3:4]
        y1, y2, y3, y4 = ys[:, 0], ys[:, 1], ys[:, 2], ys[:, 3]
        c = (x1 * y3 - x3 * y1) + (x2 * y4 - x4 * y2)
        d = (x1 * y4 - x4 * y1) + (x3 * y2 - x2 * y3) + (x1 * y2 - x2 * y1)
        return c * c - d * d

    return _pair_sum_chunked(x, t4, qs, tau, weights=weights)
