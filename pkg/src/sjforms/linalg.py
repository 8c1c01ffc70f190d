"""Exact rank computations on coefficient vectors of truncated series.

Rows are sparse mappings from coordinate labels to exact scalars.  A rank
computed at truncation N is a lower bound for the rank of the underlying
forms: truncation can only lose rank, never create it.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycRat
from .series import FourierSeries, Sym2Series

__all__ = ["rank_of_rows", "rank_over_field", "series_row", "pair_row"]


def series_row(f: FourierSeries, N: int, component=0, denom=None):
    """Sparse coefficient row of f within the N-box, keyed by (component, key)."""
    if denom is not None:
        f = f.lift_denom(denom)
    box = N * f.denom
    row = {}
    for key, z in f.terms.items():
        a, _, c = key
        if a <= box and c <= box:
            row[(component, key)] = CycRat.from_zc(z, f.scale)
    return row


def pair_row(f0: FourierSeries, hhat: Sym2Series, N: int, denom: int):
    """Flattened row of a (scalar, Sym^2) pair over a shared denominator."""
    row = series_row(f0, N, 0, denom)
    for i, comp in enumerate(hhat.components(), start=1):
        row.update(series_row(comp, N, i, denom))
    return row


def _rowdict_rational(row):
    if all(v.is_rational() for v in row.values()):
        return {k: v.as_fraction() for k, v in row.items()}, True
    return row, False


def rank_of_rows(rows, target=None) -> int:
    """Rank of sparse rows over Q(zeta_24); early exit at `target` if given.

    Uses plain Gaussian elimination with exact arithmetic; a fast path runs
    over Fraction when every entry is rational (the usual case).
    """
    rational = True
    converted = []
    for row in rows:
        r, isr = _rowdict_rational(dict(row))
        converted.append(r)
        rational &= isr
    if not rational:
        converted = [{k: v if isinstance(v, CycRat) else CycRat.from_rational(v)
                      for k, v in dict(row).items()} for row in rows]

    pivots = {}  # pivot key -> normalized row
    rank = 0
    for row in converted:
        row = dict(row)
        # reduce against existing pivots, in deterministic key order
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                break
            factor = row[lead]
            for k, v in piv.items():
                cur = row.get(k)
                nv = (cur - factor * v) if cur is not None else -factor * v
                if _is_zero(nv):
                    row.pop(k, None)
                else:
                    row[k] = nv
        row = {k: v for k, v in row.items() if not _is_zero(v)}
        if not row:
            continue
        lead = min(row)
        inv = _invert(row[lead])
        pivots[lead] = {k: v * inv for k, v in row.items()}
        rank += 1
        if target is not None and rank >= target:
            return rank
    return rank


def _is_zero(v):
    if isinstance(v, Fraction):
        return v == 0
    return v.is_zero()


def _invert(v):
    if isinstance(v, Fraction):
        return Fraction(1) / v
    return v.inverse()


def rank_over_field(series_list, N: int, target=None) -> int:
    """Exact rank of the coefficient matrix of the series within the N-box."""
    for f in series_list:
        if f.trunc < N:
            raise ValueError("series not certified to the requested box")
    denom = 1
    from math import gcd

    for f in series_list:
        denom = denom * f.denom // gcd(denom, f.denom)
    rows = [series_row(f, N, 0, denom) for f in series_list]
    return rank_of_rows(rows, target=target)
