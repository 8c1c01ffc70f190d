"""Jacobi forms as image pairs of the Taylor-coefficient map.

A degree-two index-one Jacobi form of weight k is represented by the pair

    (f0, hhat) = (zeroth Taylor coefficient, corrected Sym^2 coefficient),

with hhat normalized by (2 pi i)^{-2} so that everything is an exact
cyclotomic-rational series.  Holomorphy of the reconstructed Jacobi form
is certified exclusively through the diagonal-restriction conditions

    W( hhat_11 | [M]  +  (1/k) d12 (f0 | [M]) ) = 0

over the finite coset-representative list of the group; the linear system
through the second-kind theta matrix is implemented only as the forward
consistency check det(Theta) against the weight-5 product form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import symplectic
from .brackets import bracket2, det4_series
from .catalog import build_catalog, hilbert_coeffs
from .exprs import Expr, Sym2Expr
from .groups import GroupId
from .linalg import pair_row, rank_of_rows
from .series import FourierSeries, Sym2Series
from .theta import theta_second_kind

__all__ = [
    "XiPair",
    "jacobi_generators",
    "witt_condition",
    "MaterialPair",
    "materialize_pair",
    "module_action",
    "verify_jacobi_generator",
    "verify_module_structure",
    "theta_matrix",
    "theta_matrix_det",
]


class XiPair:
    """Candidate image (f0, hhat) of a Jacobi form of the given weight."""

    __slots__ = ("name", "group", "jtype", "weight", "f0", "hhat")

    def __init__(self, name: str, group: GroupId, jtype: str,
                 f0: Expr | None, hhat: Sym2Expr | None):
        if f0 is None and hhat is None:
            raise ValueError("empty pair")
        self.name = name
        self.group = group
        self.jtype = jtype
        self.f0 = f0
        self.hhat = hhat
        w = f0.weight if f0 is not None else hhat.weight
        if f0 is not None and hhat is not None and f0.weight != hhat.weight:
            raise ValueError(f"weight mismatch in pair {name}")
        self.weight = Fraction(w)

    def __repr__(self):
        return f"<XiPair {self.group.value}:{self.name} wt {self.weight}>"


@lru_cache(maxsize=None)
def jacobi_generators(group: GroupId, jtype: str):
    cat = build_catalog(group)
    table = cat.jacobi_I if jtype == "I" else cat.jacobi_II
    return tuple(XiPair(name, group, jtype, f0, hh)
                 for name, (f0, hh) in table.items())


def witt_condition(pair: XiPair, M, N: int):
    """(ok, residual): the diagonal holomorphy condition at one representative."""
    k = pair.weight
    residual = FourierSeries.zero(N)
    if pair.f0 is not None:
        f0m = pair.f0.slash(M)
        residual = residual + f0m.wpair(N)[1].scale_by(Fraction(1, k))
    if pair.hhat is not None:
        residual = residual + pair.hhat.slash(M).w11(N)
    return residual.is_zero_upto(N), residual


def verify_jacobi_generator(group: GroupId, jtype: str, name: str, N: int):
    """Check the Witt condition at every coset representative of the group."""
    pairs = {p.name: p for p in jacobi_generators(group, jtype)}
    if name not in pairs:
        raise KeyError(f"unknown generator {name!r} for {group.value} type {jtype}")
    pair = pairs[name]
    results = []
    for idx, M in enumerate(build_catalog(group).coset_reps):
        ok, residual = witt_condition(pair, M, N)
        results.append((idx, ok, residual))
    return all(ok for _, ok, _ in results), results


class MaterialPair:
    """Materialized (f0, hhat) with series data, for module computations."""

    __slots__ = ("f0", "hhat", "weight")

    def __init__(self, f0: FourierSeries, hhat: Sym2Series, weight):
        self.f0 = f0
        self.hhat = hhat
        self.weight = Fraction(weight)


def materialize_pair(pair: XiPair, N: int) -> MaterialPair:
    f0 = pair.f0.series(N) if pair.f0 is not None else \
        FourierSeries.zero(N).with_weight(pair.weight)
    hh = pair.hhat.sym2(N) if pair.hhat is not None else \
        Sym2Series.zero(N, pair.weight)
    return MaterialPair(f0.with_weight(pair.weight), hh, pair.weight)


def module_action(f: FourierSeries, p: MaterialPair) -> MaterialPair:
    """f . (g, hhat) = (f g, f hhat + {f, g}/(k2 (k1 + k2))), normalized."""
    if f.weight is None:
        raise ValueError("module action needs a weight-tagged scalar")
    k1, k2 = f.weight, p.weight
    f0 = f * p.f0
    hh = p.hhat.mul_scalar_series(f)
    br = bracket2(f, p.f0)
    hh = hh + br.scale_by(Fraction(1, k2 * (k1 + k2)))
    return MaterialPair(f0.with_weight(k1 + k2), hh, k1 + k2)


# -- module structure at desk scale ---------------------------------------------


def _monomials_of_weight(weights, k):
    """All exponent tuples e with sum(e_i * w_i) = k."""
    out = []

    def rec(i, rem, acc):
        if i == len(weights):
            if rem == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        for e in range(rem // w + 1):
            rec(i + 1, rem - e * w, acc + [e])

    rec(0, k, [])
    return out


@lru_cache(maxsize=None)
def _monomial_series(group: GroupId, exps: tuple, N: int) -> FourierSeries:
    cat = build_catalog(group)
    names = list(cat.ring_generators)
    for i, e in enumerate(exps):
        if e:
            lower = exps[:i] + (e - 1,) + exps[i + 1:]
            _, gen = cat.ring_generators[names[i]]
            return _monomial_series(group, lower, N) * gen.series(N)
    return FourierSeries.constant(1, N).with_weight(0)


def module_rank_at_weight(group: GroupId, jtype: str, k: int, N: int):
    """(rank, expected): candidate span of weight-k elements vs prediction.

    Rows are first extracted on a small coefficient box (rank computed at a
    sub-box is still a valid lower bound); the full N-box is only used when
    the small box does not already certify the predicted rank.
    """
    cat = build_catalog(group)
    expected = hilbert_coeffs(group, "JI" if jtype == "I" else "JII", k)[k]
    gens = jacobi_generators(group, jtype)
    weights = tuple(w for w, _ in cat.ring_generators.values())
    from math import gcd

    denom = 1
    pairs = []
    for gen in gens:
        w = int(gen.weight)
        if w > k:
            continue
        mat = materialize_pair(gen, N)
        for exps in _monomials_of_weight(weights, k - w):
            mono = _monomial_series(group, tuple(exps), N)
            acted = module_action(mono, mat)
            pairs.append(acted)
            denom = denom * acted.f0.denom // gcd(denom, acted.f0.denom)
            denom = denom * acted.hhat.denom // gcd(denom, acted.hhat.denom)
    rank = 0
    box = 0
    ladder = sorted({b for b in (2, 3, 4, 5, 6, N) if b <= N})
    for box in ladder:
        rows = [pair_row(acted.f0, acted.hhat, box, denom) for acted in pairs]
        rank = rank_of_rows(rows, target=expected + 1)
        if rank >= expected:
            break
    return rank, expected, box


def verify_module_structure(group: GroupId, jtype: str, K: int, N: int,
                            ceiling: int = 8):
    """Per-weight rank-vs-Hilbert report for one module.

    Series are certified once at the escalation ceiling; the rank itself is
    confirmed on the smallest coefficient box that reaches the predicted
    value (a rank at any box is a valid lower bound).  A deficit at the
    ceiling is reported as inconclusive, an excess as a hard failure.
    """
    n = max(N, min(4, ceiling))
    n = min(max(n, 1), ceiling)
    report = []
    for k in range(1, K + 1):
        rank, expected, box = module_rank_at_weight(group, jtype, k, n)
        if rank == expected:
            status = "pass"
        elif rank > expected:
            status = "fail"
        else:
            status = "inconclusive"
        report.append((k, expected, rank, status, box))
    return report


# -- the second-kind theta matrix -------------------------------------------------


@lru_cache(maxsize=None)
def theta_matrix(N: int):
    """4x4 matrix (rows: value, d11, d12, d22; columns: nu) of series."""
    cols = [theta_second_kind(nu, N) for nu in ((0, 0), (0, 1), (1, 0), (1, 1))]
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))


def theta_matrix_det(N: int) -> FourierSeries:
    rows = theta_matrix(N)
    return det4_series(rows)
