"""Determinant-type differential brackets on weight-tagged series.

All inputs are FourierSeries carrying a weight tag (weights are data, not
types: characters never enter these formulas).  With d_ij the normalized
partial derivatives:

  {f, g}        = sum_{i<=j} (k_f f d_ij g - k_g g d_ij f) u_i u_j,
                  weight k_f + k_g, Sym^2-valued;
  {f1, f2, f3}  = u1^2 det[[d11 f], [d12 f], [k f]]
                  - 2 u1 u2 det[[d11 f], [k f], [d22 f]]
                  + u2^2 det[[k f], [d12 f], [d22 f]],
                  weight k1 + k2 + k3 + 1, Sym^2-valued;
  {f1,...,f4}   = det[[k f], [d11 f], [d12 f], [d22 f]],
                  weight k1 + k2 + k3 + k4 + 3, scalar.

The second-order operator of Eichler--Zagier type is
  D2 f = (k/2) d12^2 f - d11 d22 f.
"""

from __future__ import annotations

from fractions import Fraction

from .series import FourierSeries, Sym2Series

__all__ = ["bracket2", "bracket3", "bracket4", "d2_op", "det3_series",
           "det4_series"]


def _require_weight(*forms):
    for f in forms:
        if f.weight is None:
            raise ValueError("bracket arguments need weight tags")


def det3_series(rows):
    (a, b, c), (d, e, f), (g, h, i) = rows
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))


def det4_series(rows):
    """4x4 determinant by Laplace expansion on the first two rows."""
    top, second, third, fourth = rows
    total = None
    cols = (0, 1, 2, 3)
    import itertools

    for i, j in itertools.combinations(cols, 2):
        k, l = [x for x in cols if x not in (i, j)]
        sign = (-1) ** (i + j + 1)  # rows (0,1): sign (-1)^{0+1+i+j}
        minor_top = top[i] * second[j] - top[j] * second[i]
        minor_bot = third[k] * fourth[l] - third[l] * fourth[k]
        term = minor_top * minor_bot
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total


def bracket2(f: FourierSeries, g: FourierSeries) -> Sym2Series:
    _require_weight(f, g)
    kf, kg = f.weight, g.weight
    comps = []
    for ij in (11, 12, 22):
        comps.append(f.scale_by(kf) * g.d_partial(ij)
                     - g.scale_by(kg) * f.d_partial(ij))
    return Sym2Series(*comps, weight=kf + kg)


def bracket3(f1: FourierSeries, f2: FourierSeries, f3: FourierSeries) -> Sym2Series:
    _require_weight(f1, f2, f3)
    fs = (f1, f2, f3)
    kf = [x.scale_by(x.weight) for x in fs]
    d11 = [x.d_partial(11) for x in fs]
    d12 = [x.d_partial(12) for x in fs]
    d22 = [x.d_partial(22) for x in fs]
    h20 = det3_series((d11, d12, kf))
    h11 = det3_series((d11, kf, d22)).scale_by(-2)
    h02 = det3_series((kf, d12, d22))
    return Sym2Series(h20, h11, h02,
                      weight=f1.weight + f2.weight + f3.weight + 1)


def bracket4(f1, f2, f3, f4) -> FourierSeries:
    _require_weight(f1, f2, f3, f4)
    fs = (f1, f2, f3, f4)
    rows = (
        [x.scale_by(x.weight) for x in fs],
        [x.d_partial(11) for x in fs],
        [x.d_partial(12) for x in fs],
        [x.d_partial(22) for x in fs],
    )
    out = det4_series(rows)
    return out.with_weight(f1.weight + f2.weight + f3.weight + f4.weight + 3)


def d2_op(f: FourierSeries) -> FourierSeries:
    """(k/2) d12^2 f - d11 d22 f; requires the weight tag k."""
    _require_weight(f)
    k = f.weight
    return (f.d_partial(12).d_partial(12).scale_by(Fraction(k, 2))
            - f.d_partial(11).d_partial(22))
