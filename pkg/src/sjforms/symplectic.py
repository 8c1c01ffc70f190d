"""Integral symplectic 4x4 matrices and the theta transformation engine.

The transformation theory: for M in Sp(2, Z) there is an action on
characteristics

    M o m = [[D, -C], [-B, A]] m + ((C D^t)_0, (A B^t)_0),

a phase phi_m(M) in (1/8)Z, and an eighth root of unity kappa(M) with

    theta_{M o m}(M tau) = kappa(M) e(phi_m(M)) det(C tau + D)^{1/2} theta_m(tau).

Only kappa(M)^2 is ever needed here (all public slash operations have
integral weight), and it is computed by decomposing M into block-triangular
factors, where kappa^2 = det(A) = det(D), and folding the cocycle

    kappa(M1 M2)^2 = kappa(M1)^2 kappa(M2)^2 e(2 phi_{M2 o 0}(M1)).
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycRat
from .groups import GroupId
from .lattices import GramMatrix

__all__ = [
    "SymplecticMat",
    "I4",
    "INV",
    "J",
    "M1",
    "M1SQ",
    "M2",
    "M3",
    "K",
    "u_mat",
    "v_mat",
    "char_action",
    "reduce_char",
    "phi_m",
    "decompose_triangular",
    "kappa_sq",
    "slash_theta_product",
    "slash_lattice_J",
    "coset_reps",
    "rightrep_representatives",
]


def _mat2_mul(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def _mat2_vec(x, v):
    return tuple(sum(x[i][k] * v[k] for k in range(2)) for i in range(2))


def _mat2_t(x):
    return ((x[0][0], x[1][0]), (x[0][1], x[1][1]))


def _det2(x):
    return x[0][0] * x[1][1] - x[0][1] * x[1][0]


class SymplecticMat:
    """4x4 integer matrix with M J M^t = J for the standard symplectic form."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("need a 4x4 matrix")
        self.rows = rows
        a, b, c, d = self.blocks()
        # M J M^t = J  <=>  A B^t, C D^t symmetric and A D^t - B C^t = 1
        ab = _mat2_mul(a, _mat2_t(b))
        cd = _mat2_mul(c, _mat2_t(d))
        adbc = _mat2_mul(a, _mat2_t(d))
        bct = _mat2_mul(b, _mat2_t(c))
        ok = (ab == _mat2_t(ab) and cd == _mat2_t(cd)
              and all(adbc[i][j] - bct[i][j] == (1 if i == j else 0)
                      for i in range(2) for j in range(2)))
        if not ok:
            raise ValueError(f"matrix is not symplectic: {rows}")

    def blocks(self):
        r = self.rows
        a = ((r[0][0], r[0][1]), (r[1][0], r[1][1]))
        b = ((r[0][2], r[0][3]), (r[1][2], r[1][3]))
        c = ((r[2][0], r[2][1]), (r[3][0], r[3][1]))
        d = ((r[2][2], r[2][3]), (r[3][2], r[3][3]))
        return a, b, c, d

    @classmethod
    def from_blocks(cls, a, b, c, d):
        return cls(
            [
                [a[0][0], a[0][1], b[0][0], b[0][1]],
                [a[1][0], a[1][1], b[1][0], b[1][1]],
                [c[0][0], c[0][1], d[0][0], d[0][1]],
                [c[1][0], c[1][1], d[1][0], d[1][1]],
            ]
        )

    def __mul__(self, other):
        if not isinstance(other, SymplecticMat):
            return NotImplemented
        x, y = self.rows, other.rows
        return SymplecticMat(
            [[sum(x[i][k] * y[k][j] for k in range(4)) for j in range(4)]
             for i in range(4)]
        )

    def inverse(self) -> "SymplecticMat":
        a, b, c, d = self.blocks()
        neg = lambda m: tuple(tuple(-v for v in row) for row in m)
        return SymplecticMat.from_blocks(_mat2_t(d), neg(_mat2_t(b)),
                                         neg(_mat2_t(c)), _mat2_t(a))

    def is_block_triangular(self) -> bool:
        a, b, c, d = self.blocks()
        zero = ((0, 0), (0, 0))
        return b == zero or c == zero

    def acts_on(self, tau):
        """M tau = (A tau + B)(C tau + D)^{-1} for a complex 2x2 point."""
        a, b, c, d = self.blocks()
        t11, t12 = complex(tau[0][0]), complex(tau[0][1])
        t22 = complex(tau[1][1])
        tm = ((t11, t12), (t12, t22))
        cx = lambda m: tuple(tuple(complex(v) for v in row) for row in m)
        num = _madd(_cmul(cx(a), tm), cx(b))
        den = _madd(_cmul(cx(c), tm), cx(d))
        det = den[0][0] * den[1][1] - den[0][1] * den[1][0]
        inv = ((den[1][1] / det, -den[0][1] / det),
               (-den[1][0] / det, den[0][0] / det))
        return _cmul(num, inv)

    def cocycle_det(self, tau) -> complex:
        """det(C tau + D) at a complex point."""
        _, _, c, d = self.blocks()
        t11, t12 = complex(tau[0][0]), complex(tau[0][1])
        t22 = complex(tau[1][1])
        tm = ((t11, t12), (t12, t22))
        den = _madd(_cmul(tuple(tuple(complex(v) for v in r) for r in c), tm),
                    tuple(tuple(complex(v) for v in r) for r in d))
        return den[0][0] * den[1][1] - den[0][1] * den[1][0]

    def __eq__(self, other):
        return isinstance(other, SymplecticMat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SymplecticMat({list(map(list, self.rows))})"

    def flat(self):
        return [v for row in self.rows for v in row]


def _cmul(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def _madd(x, y):
    return tuple(tuple(x[i][j] + y[i][j] for j in range(2)) for i in range(2))


def u_mat(s) -> SymplecticMat:
    """Lower unipotent [[1, 0], [S, 1]] for symmetric integer S."""
    return SymplecticMat.from_blocks(((1, 0), (0, 1)), ((0, 0), (0, 0)),
                                     s, ((1, 0), (0, 1)))


def v_mat(s) -> SymplecticMat:
    """Upper unipotent [[1, S], [0, 1]] for symmetric integer S."""
    return SymplecticMat.from_blocks(((1, 0), (0, 1)), s,
                                     ((0, 0), (0, 0)), ((1, 0), (0, 1)))


S0 = ((0, 1), (1, 0))
I4 = SymplecticMat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
INV = SymplecticMat([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
J = SymplecticMat([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])
M1 = u_mat(S0)
M1SQ = M1 * M1
M2 = v_mat(S0)
M3 = SymplecticMat([[1, 0, -1, -1], [0, 1, -1, -1], [1, 0, 0, -1], [0, 1, -1, 0]])
K = J * M2  # [[0, -1], [1, S0]]


def char_action(M: SymplecticMat, m, reduce: bool = True):
    """M o m on integral characteristics; reduced mod 2 unless reduce=False."""
    a, b, c, d = M.blocks()
    mp = (int(m[0]), int(m[1]))
    mpp = (int(m[2]), int(m[3]))
    top = _mat2_vec(d, mp)
    top = (top[0] - (c[0][0] * mpp[0] + c[0][1] * mpp[1]),
           top[1] - (c[1][0] * mpp[0] + c[1][1] * mpp[1]))
    bot = _mat2_vec(a, mpp)
    bot = (bot[0] - (b[0][0] * mp[0] + b[0][1] * mp[1]),
           bot[1] - (b[1][0] * mp[0] + b[1][1] * mp[1]))
    cdt = _mat2_mul(c, _mat2_t(d))
    abt = _mat2_mul(a, _mat2_t(b))
    out = (top[0] + cdt[0][0], top[1] + cdt[1][1],
           bot[0] + abt[0][0], bot[1] + abt[1][1])
    if reduce:
        return tuple(v % 2 for v in out)
    return out


def reduce_char(m):
    return tuple(v % 2 for v in m)


def phi_m(M: SymplecticMat, m) -> Fraction:
    """The (1/8)Z-valued phase, taken mod 1."""
    a, b, c, d = M.blocks()
    mp = (m[0], m[1])
    mpp = (m[2], m[3])
    btd = _mat2_mul(_mat2_t(b), d)
    atc = _mat2_mul(_mat2_t(a), c)
    btc = _mat2_mul(_mat2_t(b), c)
    q1 = sum(mp[i] * btd[i][j] * mp[j] for i in range(2) for j in range(2))
    q2 = sum(mpp[i] * atc[i][j] * mpp[j] for i in range(2) for j in range(2))
    q3 = sum(mp[i] * btc[i][j] * mpp[j] for i in range(2) for j in range(2))
    abt = _mat2_mul(a, _mat2_t(b))
    diag = (abt[0][0], abt[1][1])
    dm = _mat2_vec(d, mp)
    cm = _mat2_vec(c, mpp)
    q4 = diag[0] * (dm[0] - cm[0]) + diag[1] * (dm[1] - cm[1])
    val = Fraction(-(q1 + q2 - 2 * q3 - 2 * q4), 8)
    return val - val.__floor__() if val.denominator != 1 else Fraction(0)


def decompose_triangular(M: SymplecticMat, max_steps: int = 200):
    """Factor M exactly into block-triangular symplectic matrices.

    Left-reduces the C block by unipotent multiplications and the inversion
    J (which is expanded as v(-1) u(1) v(-1) in the output).
    """
    neg1 = ((-1, 0), (0, -1))
    pos1 = ((1, 0), (0, 1))
    j_expanded = [v_mat(pos1), u_mat(neg1), v_mat(pos1)]  # J^{-1}
    applied = []  # inverses of the left multipliers, in original order
    cur = M
    for _ in range(max_steps):
        if cur.is_block_triangular():
            break
        a, _, c, _ = cur.blocks()
        detc = _det2(c)
        if detc != 0:
            x = _rational_mat2(a, c, detc)  # A C^{-1}, symmetric
            s = tuple(tuple(_round_half(v) for v in row) for row in x)
            step = v_mat(tuple(tuple(-v for v in row) for row in s))
            applied.append(v_mat(s))
            cur = step * cur
            applied.extend(j_expanded)
            cur = J * cur
        else:
            best = None
            for s in _small_symmetric():
                dd = abs(_det2(_madd_i(_mat2_mul(s, a), c)))
                if dd:
                    size = sum(abs(v) for row in s for v in row)
                    if best is None or (dd, size) < best[0]:
                        best = ((dd, size), s)
            if best is None:
                raise ArithmeticError("no unipotent step found; singular case")
            found = best[1]
            applied.append(u_mat(tuple(tuple(-v for v in row) for row in found)))
            cur = u_mat(found) * cur
    else:
        raise ArithmeticError("triangular decomposition did not terminate")
    factors = applied + [cur]
    prod = factors[0]
    for f in factors[1:]:
        prod = prod * f
    if prod != M:
        raise AssertionError("decomposition product mismatch")
    return factors


def _rational_mat2(a, c, detc):
    inv = ((Fraction(c[1][1], detc), Fraction(-c[0][1], detc)),
           (Fraction(-c[1][0], detc), Fraction(c[0][0], detc)))
    return tuple(
        tuple(sum(Fraction(a[i][k]) * inv[k][j] for k in range(2))
              for j in range(2))
        for i in range(2)
    )


def _round_half(q: Fraction) -> int:
    fl = q.__floor__()
    return fl if q - fl <= Fraction(1, 2) else fl + 1


def _madd_i(x, y):
    return tuple(tuple(x[i][j] + y[i][j] for j in range(2)) for i in range(2))


def _small_symmetric():
    for d1 in range(-2, 3):
        for d2 in range(-2, 3):
            for e in range(-2, 3):
                yield ((d1, e), (e, d2))


def _kappa_sq_triangular(M: SymplecticMat) -> int:
    a, b, c, d = M.blocks()
    zero = ((0, 0), (0, 0))
    if b == zero or c == zero:
        return _det2(d)
    raise ValueError("matrix is not block triangular")


def kappa_sq(M: SymplecticMat, factors=None) -> CycRat:
    """kappa(M)^2 (a fourth root of unity), decomposition-independent.

    A block-triangular factorization may be supplied explicitly; the result
    does not depend on the choice (cocycle well-definedness).
    """
    if factors is None:
        factors = decompose_triangular(M)
    else:
        prod = factors[0]
        for f in factors[1:]:
            prod = prod * f
        if prod != M:
            raise ValueError("supplied factors do not multiply to M")
    kap = CycRat.from_rational(_kappa_sq_triangular(factors[0]))
    prefix = factors[0]
    for t in factors[1:]:
        t0 = char_action(t, (0, 0, 0, 0), reduce=False)
        phase = 2 * phi_m(prefix, t0)
        kap = kap * CycRat.from_rational(_kappa_sq_triangular(t)) \
            * CycRat.root_of_unity(phase.numerator, phase.denominator)
        prefix = prefix * t
    return kap


def slash_theta_product(chars, M: SymplecticMat):
    """(factor, chars_out) with (prod theta_chars)|_t [M] = factor * prod theta_chars_out.

    The number of characteristics must be even (weight t = len/2), which
    removes the square-root branch: only kappa(M)^2 and exact e(phi) terms
    occur.
    """
    chars = [tuple(int(v) for v in m) for m in chars]
    if len(chars) % 2:
        raise ValueError("theta products of odd length are branch-dependent")
    minv = M.inverse()
    phi_total = Fraction(0)
    sign = 1
    out = []
    for m in chars:
        n = char_action(minv, m)  # reduced mod 2
        mn = char_action(M, n, reduce=False)
        r = tuple((mi - ni) for mi, ni in zip(m, mn))
        if any(v % 2 for v in r):
            raise AssertionError("characteristic action inconsistency")
        r = tuple(v // 2 for v in r)
        sign *= (-1) ** (mn[0] * r[2] + mn[1] * r[3])
        phi_total += phi_m(M, n)
        out.append(n)
    t = len(chars) // 2
    factor = (kappa_sq(M) ** t) * CycRat.from_rational(sign)
    phi_total -= phi_total.__floor__()
    factor = factor * CycRat.root_of_unity(phi_total.numerator,
                                           phi_total.denominator)
    return factor, tuple(out)


def slash_lattice_J(gram: GramMatrix):
    """(constant, dual Gram S', scale) with theta_S |_{m/2} [J] = c * theta_{S'}(tau/scale)."""
    sp, s = gram.inverse_scaled()
    m = gram.n
    if m % 2:
        raise ValueError("odd-rank lattice slash is branch-dependent")
    if any(sp[i][i] % 2 for i in range(m)):
        raise ValueError("rescaled inverse Gram is not even")
    const = CycRat.from_rational(Fraction((-1) ** (m // 2), gram.det))
    return const, GramMatrix(sp, name=f"{gram.name}_dual" if gram.name else None), s


def coset_reps(group: GroupId):
    """Representatives of Gamma \\ Sp(2,Z) / (SL2 x SL2) used by the catalogs."""
    table = {
        GroupId.SP4: [I4],
        GroupId.GAMMA0_2: [I4, M1],
        GroupId.GAMMA0_3_PSI: [I4, K],
        GroupId.GAMMA0_4_PSI: [I4, M1, M1SQ],
        GroupId.GAMMA00_2_PSI: [I4, M1, M2, M3],
    }
    return list(table[group])


def rightrep_representatives(p: int):
    """Audit list: representatives of Gamma_0(p) \\ Sp(2,Z), p prime."""
    reps = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                reps.append(SymplecticMat(
                    [[0, 0, 1, 0], [0, 0, 0, 1],
                     [-1, 0, a, b], [0, -1, b, c]]))
    for a in range(p):
        for b in range(p):
            reps.append(SymplecticMat(
                [[0, 0, 1, 0], [0, 1, 0, 0], [-1, b, a, 0], [0, 0, b, 1]]))
    for a in range(p):
        reps.append(SymplecticMat(
            [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, a]]))
    reps.append(I4)
    return reps
