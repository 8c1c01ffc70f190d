"""Positive-definite lattices: exact short-vector enumeration and pair sums.

Everything here is exact: vectors are enumerated with rational
completion-of-squares bounds (float bounds are only used to propose
candidate ranges, always padded and then filtered exactly), and the numpy
pair accumulation runs in float64 strictly below 2^53 so every count is an
exact integer.

Degree-two theta data for a Gram matrix S uses the convention

    theta_S(tau) = sum over integer row pairs (x, y) of
                   e((x S x^t * t11 + 2 x S y^t * t12 + y S y^t * t22)/2),

so the contribution of a pair is indexed by (qx, b, qy) = (xSx^t, xSy^t*2/2...)
stored as (xSx^t, xSy^t, ySy^t); the series key is (qx/2, b, qy/2) in
exponent units (b enters without the 1/2).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "GramMatrix",
    "A2",
    "E6",
    "E6S",
    "E8",
    "T4",
    "enumerate_short_vectors",
    "norm_values",
    "theta1_counts",
    "theta2_pair_counts",
    "harmonic_pair_counts",
    "witt_phase_histograms",
]

_F53_GUARD = float(1 << 52)


class GramMatrix:
    """Even positive-definite integral Gram matrix."""

    __slots__ = ("entries", "n", "det", "name")

    def __init__(self, entries, name=None, require_even=True):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            if require_even and rows[i][i] % 2:
                raise ValueError("Gram matrix must have even diagonal")
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.entries = rows
        self.n = n
        self.det = _check_positive_definite(rows)
        self.name = name

    def __repr__(self):
        return f"GramMatrix({self.name or self.entries!r})"

    def __hash__(self):
        return hash(self.entries)

    def __eq__(self, other):
        return isinstance(other, GramMatrix) and self.entries == other.entries

    def inverse_scaled(self):
        """(S', s) with S^{-1} = S'/s, s minimal positive integer, S' integral."""
        n = self.n
        inv = _fraction_inverse(self.entries)
        s = 1
        for row in inv:
            for v in row:
                s = s * v.denominator // math.gcd(s, v.denominator)
        sp = tuple(tuple(int(v * s) for v in row) for row in inv)
        return sp, s

    def as_array(self):
        return np.array(self.entries, dtype=np.int64)


def _check_positive_definite(rows):
    n = len(rows)
    m = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for k in range(1, n + 1):
        det = _fraction_det([row[:k] for row in m[:k]])
        if det <= 0:
            raise ValueError("Gram matrix is not positive definite")
    return int(det)


def _fraction_det(m):
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def _fraction_inverse(rows):
    n = len(rows)
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _square_completion(rows):
    """q with x S x^t = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2."""
    n = len(rows)
    q = [[Fraction(v) for v in row] for row in rows]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


@lru_cache(maxsize=None)
def enumerate_short_vectors(gram: GramMatrix, bound: int) -> np.ndarray:
    """All integer vectors with x S x^t <= bound (including 0), as int64 rows."""
    n = gram.n
    q = _square_completion(gram.entries)
    out = []
    x = [0] * n

    def rec(i, t):
        # remaining budget t (exact) for levels 0..i
        u = sum(q[i][j] * x[j] for j in range(i + 1, n))
        radius = math.sqrt(float(t / q[i][i])) if t > 0 else 0.0
        lo = math.ceil(float(-u) - radius - 1e-9)
        hi = math.floor(float(-u) + radius + 1e-9)
        for k in range(lo - 1, hi + 2):
            tk = t - q[i][i] * (k + u) ** 2
            if tk < 0:
                continue
            x[i] = k
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, tk)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    arr = np.array(sorted(out), dtype=np.int64)
    return arr.reshape(len(out), n)


def norm_values(gram: GramMatrix, vectors: np.ndarray) -> np.ndarray:
    g = gram.as_array()
    return np.einsum("ij,jk,ik->i", vectors, g, vectors)


def theta1_counts(gram: GramMatrix, bound: int) -> dict:
    """Representation numbers: {norm: count} for norms <= bound."""
    vs = enumerate_short_vectors(gram, bound)
    norms = norm_values(gram, vs)
    out = {}
    for v in norms.tolist():
        out[v] = out.get(v, 0) + 1
    return out


def _half_split(vectors: np.ndarray):
    """(zero present, half set): one representative per {v, -v} pair."""
    nonzero = vectors[np.any(vectors != 0, axis=1)]
    # first nonzero coordinate positive
    keep = np.zeros(len(nonzero), dtype=bool)
    remaining = np.ones(len(nonzero), dtype=bool)
    for j in range(vectors.shape[1] if vectors.ndim == 2 else 0):
        col = nonzero[:, j]
        keep |= remaining & (col > 0)
        remaining &= col == 0
    return len(nonzero) != len(vectors), nonzero[keep]


def _pair_chunks(xh, yh, g, chunk_elems=4_000_000):
    """Yield (i-slice B-matrix) chunks of x^t S y as exact-int float64 arrays."""
    gx = xh.astype(np.float64) @ g.astype(np.float64)
    yt = yh.astype(np.float64).T
    step = max(1, chunk_elems // max(1, len(xh)))
    for start in range(0, len(yh), step):
        b = gx @ yt[:, start:start + step]
        if b.size and np.abs(b).max() >= _F53_GUARD:
            raise OverflowError("pair products exceed exact float64 range")
        yield start, step, b


@lru_cache(maxsize=None)
def _theta2_pair_counts_cached(gram: GramMatrix, bound: int) -> dict:
    return theta2_pair_counts(gram, bound, weight_fn=None, _nocache=True)


def theta2_pair_counts(gram: GramMatrix, bound: int,
                       weight_fn=None, _nocache=False) -> dict:
    """{(qx, b, qy): weighted count} over pairs with qx, qy <= bound.

    weight_fn(X, Ychunk) may return a float64 weight matrix (exact ints);
    the default weight is 1.  Uses the fourfold (+-x, +-y) symmetry, under
    which b flips sign with either argument and the weights used here are
    invariant.
    """
    if weight_fn is None and not _nocache:
        return _theta2_pair_counts_cached(gram, bound)
    vs = enumerate_short_vectors(gram, bound)
    norms = norm_values(gram, vs)
    g = gram.as_array()
    _, half = _half_split(vs)
    hnorms = norm_values(gram, half)

    width = 2 * bound + 1
    strata = (bound + 1) * width * (bound + 1)
    acc = np.zeros(strata, dtype=np.float64)

    for start, step, b in _pair_chunks(half, half, g):
        qy = hnorms[start:start + step]
        flat = ((np.repeat(hnorms, len(qy)).reshape(len(hnorms), len(qy)))
                * width + (b + bound)) * (bound + 1) + qy[None, :]
        flat = flat.astype(np.int64).ravel()
        if weight_fn is None:
            acc += np.bincount(flat, minlength=strata)
        else:
            w = weight_fn(half, half[start:start + step])
            acc += np.bincount(flat, weights=w.ravel(), minlength=strata)

    if np.abs(acc).max() >= _F53_GUARD:
        raise OverflowError("accumulated counts exceed exact float64 range")

    out = {}
    nz = np.flatnonzero(acc)
    for idx in nz.tolist():
        qy = idx % (bound + 1)
        rest = idx // (bound + 1)
        b = rest % width - bound
        qx = rest // width
        v = int(round(acc[idx]))
        # (x, y) and (-x, -y); then (x, -y) and (-x, y) mirror b
        out[(qx, b, qy)] = out.get((qx, b, qy), 0) + 2 * v
        out[(qx, -b, qy)] = out.get((qx, -b, qy), 0) + 2 * v

    # boundary pairs involving the zero vector
    if weight_fn is None:
        out[(0, 0, 0)] = out.get((0, 0, 0), 0) + 1
        for q in hnorms.tolist():
            out[(q, 0, 0)] = out.get((q, 0, 0), 0) + 2
            out[(0, 0, q)] = out.get((0, 0, q), 0) + 2
    else:
        # bilinear-in-each-argument weights vanish when x or y is 0
        pass
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def harmonic_pair_counts(bound: int) -> dict:
    """Pair sums for the weight-4 harmonic form: weights c^2 - d^2 on T4-pairs.

    c = (x1 y3 - x3 y1) + (x2 y4 - y2 x4)
    d = (x1 y4 - x4 y1) + (x3 y2 - x2 y3) + (x1 y2 - y1 x2)
    """

    def weights(x, y):
        xf = x.astype(np.float64)
        yf = y.astype(np.float64)
        x1, x2, x3, x4 = xf[:, 0:1], xf[:, 1:2], xf[:, 2:3], xf[:, 3:4]
        y1, y2, y3, y4 = yf[:, 0], yf[:, 1], yf[:, 2], yf[:, 3]
        c = (x1 * y3 - x3 * y1) + (x2 * y4 - x4 * y2)
        d = (x1 * y4 - x4 * y1) + (x3 * y2 - x2 * y3) + (x1 * y2 - x2 * y1)
        return c * c - d * d

    return theta2_pair_counts(T4, bound, weight_fn=weights)


@lru_cache(maxsize=None)
def witt_phase_histograms(gram: GramMatrix, bound: int) -> dict:
    """Diagonal-restriction data with cube-root phases.

    Returns {(qx, qy): (cnt, sb, sb2)} where each value is a 3-tuple indexed
    by b mod 3, giving sums of 1, b and b^2 over pairs with those norms.
    Everything needed for W(f), W(d12 f) and W(d12^2 f) of the series
    f = theta_S((tau + S0)/3) comes from these.
    """
    vs = enumerate_short_vectors(gram, bound)
    g = gram.as_array()
    _, half = _half_split(vs)
    hnorms = norm_values(gram, half)

    nq = bound + 1
    strata = nq * 3 * nq
    acc0 = np.zeros(strata, dtype=np.float64)
    acc1 = np.zeros(strata, dtype=np.float64)
    acc2 = np.zeros(strata, dtype=np.float64)

    for start, step, b in _pair_chunks(half, half, g):
        qy = hnorms[start:start + step]
        bmod = np.mod(b.astype(np.int64), 3)
        flat = ((np.repeat(hnorms, len(qy)).reshape(len(hnorms), len(qy)) * 3
                 + bmod) * nq + qy[None, :]).astype(np.int64).ravel()
        bb = b.ravel()
        acc0 += np.bincount(flat, minlength=strata)
        acc1 += np.bincount(flat, weights=bb, minlength=strata)
        acc2 += np.bincount(flat, weights=bb * bb, minlength=strata)

    for acc in (acc0, acc1, acc2):
        if np.abs(acc).max() >= _F53_GUARD:
            raise OverflowError("accumulated sums exceed exact float64 range")

    out = {}

    def add(qx, qy, cls, cnt, sb, sb2):
        key = (qx, qy)
        cur = out.get(key)
        if cur is None:
            cur = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
            out[key] = cur
        cur[0][cls] += cnt
        cur[1][cls] += sb
        cur[2][cls] += sb2

    nzs = np.flatnonzero(acc0 != 0) # b == 0 classes may still carry counts
    seen = set(nzs.tolist())
    for arr in (acc1, acc2):
        seen |= set(np.flatnonzero(arr != 0).tolist())
    for idx in sorted(seen):
        qy = idx % nq
        rest = idx // nq
        cls = rest % 3
        qx = rest // 3
        cnt = int(round(acc0[idx]))
        sb = int(round(acc1[idx]))
        sb2 = int(round(acc2[idx]))
        # half x half quadruples: (x,y),(-x,-y) keep (b, cls);
        # (x,-y),(-x,y) give (-b, (-cls) mod 3)
        add(qx, qy, cls, 2 * cnt, 2 * sb, 2 * sb2)
        add(qx, qy, (-cls) % 3, 2 * cnt, -2 * sb, 2 * sb2)

    add(0, 0, 0, 1, 0, 0)
    for q in hnorms.tolist():
        add(q, 0, 0, 2, 0, 0)
        add(0, q, 0, 2, 0, 0)

    return {k: (tuple(v[0]), tuple(v[1]), tuple(v[2])) for k, v in out.items()}


# -- the standard Gram matrices used by the catalogs -------------------------

A2 = GramMatrix([[2, 1], [1, 2]], name="A2")

E6 = GramMatrix(
    [
        [2, -1, 0, 0, 0, 0],
        [-1, 2, -1, 0, 0, 0],
        [0, -1, 2, -1, 0, -1],
        [0, 0, -1, 2, -1, 0],
        [0, 0, 0, -1, 2, 0],
        [0, 0, -1, 0, 0, 2],
    ],
    name="E6",
)

E6S = GramMatrix(
    [
        [4, 5, 6, 4, 2, 3],
        [5, 10, 12, 8, 4, 6],
        [6, 12, 18, 12, 6, 9],
        [4, 8, 12, 10, 5, 6],
        [2, 4, 6, 5, 4, 3],
        [3, 6, 9, 6, 3, 6],
    ],
    name="E6S",
)

E8 = GramMatrix(
    [
        [2, 0, -1, 0, 0, 0, 0, 0],
        [0, 2, 0, -1, 0, 0, 0, 0],
        [-1, 0, 2, -1, 0, 0, 0, 0],
        [0, -1, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, 0],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, 0, 0, -1, 2],
    ],
    name="E8",
)

# twice the quartic Gram of the harmonic weight-4 form; x T4 x^t / 2 is the
# integer-valued quadratic form whose cross term 2 x S4 y^t = x T4 y^t
T4 = GramMatrix(
    [
        [2, 0, 3, 0],
        [0, 2, 0, 3],
        [3, 0, 6, 0],
        [0, 3, 0, 6],
    ],
    name="T4",
)
