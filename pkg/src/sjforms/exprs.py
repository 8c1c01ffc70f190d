"""Structural expressions over slashable leaves.

Catalog generators and the Sym^2 data attached to Jacobi-form candidates
are kept as expression trees: polynomials in atomic forms (theta
monomials, lattice thetas, the harmonic weight-4 sum) combined by the
two-, three- and four-fold brackets.  Slashing by a symplectic matrix acts
on the leaves and is extended by bracket equivariance; there is no
pointwise Sym^2 slash of a bare series.

Besides full series materialization, every scalar expression can produce
its diagonal-restriction data

    wdata(N) = (W f, W d12 f, W d12^2 f)

computed leaf-wise and combined through the Leibniz rule and the fact
that restriction to tau_12 = 0 is a ring homomorphism.  This is what makes
level-3 slashed objects tractable: their full expansions in three
variables are never needed, only the diagonal data, which lattice pair
sums deliver directly.

Expressions serialize as S-expressions, e.g. "(br3 (gen a1) (gen b3) (gen e3))".
"""

from __future__ import annotations

from fractions import Fraction

from . import lattices, symplectic, theta
from .brackets import bracket2, bracket3, bracket4, det3_series, det4_series
from .cyclotomic import CycRat
from .series import FourierSeries, Sym2Series

__all__ = [
    "Expr", "Const", "Sum", "Prod", "Pow", "Br4",
    "Sym2Expr", "Br2", "Br3", "S2Scale", "S2Sum",
    "ThetaMonomialAtom", "LatticeAtom", "StarLatticeAtom", "E8Atom",
    "HarmonicAtom", "scale", "parse_sexpr",
]

_SERIES_MEMO: dict = {}
_WDATA_MEMO: dict = {}
_SYM2_MEMO: dict = {}


def clear_memo():
    _SERIES_MEMO.clear()
    _WDATA_MEMO.clear()
    _SYM2_MEMO.clear()


class Expr:
    """Scalar-valued expression."""

    weight: Fraction | None = None

    def key(self):
        raise NotImplementedError

    def _series(self, N: int) -> FourierSeries:
        raise NotImplementedError

    def series(self, N: int) -> FourierSeries:
        k = (self.key(), N)
        out = _SERIES_MEMO.get(k)
        if out is None:
            out = self._series(N)
            if self.weight is not None:
                out = out.with_weight(self.weight)
            _SERIES_MEMO[k] = out
        return out

    def wpair(self, N: int):
        """(W f, W d12 f), computed leaf-wise without 3-variable expansions."""
        k = ("wp", self.key(), N)
        out = _WDATA_MEMO.get(k)
        if out is None:
            out = self._wpair(N)
            _WDATA_MEMO[k] = out
        return out

    def wd12sq(self, N: int):
        """W d12^2 f; available wherever no third t12-derivative is forced."""
        k = ("w2", self.key(), N)
        out = _WDATA_MEMO.get(k)
        if out is None:
            out = self._wd12sq(N)
            _WDATA_MEMO[k] = out
        return out

    def _wpair(self, N: int):
        f = self.series(N)
        return (f.witt(), f.d_partial(12).witt())

    def _wd12sq(self, N: int):
        return self.series(N).d_partial(12).d_partial(12).witt()

    def slash(self, M) -> "Expr":
        raise NotImplementedError

    def eval(self, tau) -> complex:
        raise NotImplementedError

    def sexpr(self) -> str:
        raise NotImplementedError

    # sugar
    def __add__(self, other):
        return Sum((self, _as_expr(other)))

    def __sub__(self, other):
        return Sum((self, scale(_as_expr(other), -1)))

    def __mul__(self, other):
        return Prod((self, _as_expr(other)))

    def __pow__(self, n):
        return Pow(self, n)

    def __neg__(self):
        return scale(self, -1)


def _as_expr(x):
    if isinstance(x, Expr):
        return x
    return Const(x)


def scale(e: Expr, c) -> "Expr":
    c = c if isinstance(c, CycRat) else CycRat.from_rational(c)
    if isinstance(e, Prod) and isinstance(e.parts[0], Const):
        return Prod((Const(e.parts[0].value * c),) + e.parts[1:])
    return Prod((Const(c), e))


class Const(Expr):
    def __init__(self, value):
        self.value = value if isinstance(value, CycRat) else CycRat.from_rational(value)
        self.weight = Fraction(0)

    def key(self):
        return ("const", self.value.num, self.value.den)

    def _series(self, N):
        return FourierSeries.constant(self.value, N)

    def slash(self, M):
        return self

    def eval(self, tau):
        return complex(self.value)

    def sexpr(self):
        if self.value.is_rational():
            return f"(const {self.value.as_fraction()})"
        return f"(const cyc:{':'.join(self.value.to_strings())})"


class Sum(Expr):
    def __init__(self, parts):
        parts = tuple(_as_expr(p) for p in parts)
        flat = []
        for p in parts:
            if isinstance(p, Sum):
                flat.extend(p.parts)
            else:
                flat.append(p)
        self.parts = tuple(flat)
        ws = {p.weight for p in self.parts if not isinstance(p, Const)}
        self.weight = ws.pop() if len(ws) == 1 else None

    def key(self):
        return ("sum",) + tuple(p.key() for p in self.parts)

    def _series(self, N):
        out = self.parts[0].series(N)
        for p in self.parts[1:]:
            out = out + p.series(N)
        return out

    def _wpair(self, N):
        datas = [p.wpair(N) for p in self.parts]
        return (_sum_series([d[0] for d in datas]),
                _sum_series([d[1] for d in datas]))

    def _wd12sq(self, N):
        return _sum_series([p.wd12sq(N) for p in self.parts])

    def slash(self, M):
        return Sum(tuple(p.slash(M) for p in self.parts))

    def eval(self, tau):
        return sum(p.eval(tau) for p in self.parts)

    def sexpr(self):
        return "(sum " + " ".join(p.sexpr() for p in self.parts) + ")"


def _sum_series(items):
    out = items[0]
    for x in items[1:]:
        out = out + x
    return out


class Prod(Expr):
    def __init__(self, parts):
        parts = tuple(_as_expr(p) for p in parts)
        flat = []
        for p in parts:
            if isinstance(p, Prod):
                flat.extend(p.parts)
            else:
                flat.append(p)
        self.parts = tuple(flat)
        w = Fraction(0)
        for p in self.parts:
            if p.weight is None:
                w = None
                break
            w += p.weight
        self.weight = w

    def key(self):
        return ("prod",) + tuple(p.key() for p in self.parts)

    def _series(self, N):
        out = self.parts[0].series(N)
        for p in self.parts[1:]:
            out = out * p.series(N)
        return out

    def _wpair(self, N):
        w, d1 = self.parts[0].wpair(N)
        for p in self.parts[1:]:
            pw, pd1 = p.wpair(N)
            d1 = d1 * pw + w * pd1
            w = w * pw
        return (w, d1)

    def _wd12sq(self, N):
        w, d1 = self.parts[0].wpair(N)
        d2 = self.parts[0].wd12sq(N)
        for p in self.parts[1:]:
            pw, pd1 = p.wpair(N)
            pd2 = p.wd12sq(N)
            d2 = d2 * pw + d1 * pd1 * 2 + w * pd2
            d1 = d1 * pw + w * pd1
            w = w * pw
        return d2

    def slash(self, M):
        return Prod(tuple(p.slash(M) for p in self.parts))

    def eval(self, tau):
        out = 1.0 + 0j
        for p in self.parts:
            out *= p.eval(tau)
        return out

    def sexpr(self):
        return "(prod " + " ".join(p.sexpr() for p in self.parts) + ")"


class Pow(Expr):
    def __init__(self, base, n: int):
        self.base = _as_expr(base)
        self.n = int(n)
        if self.n < 1:
            raise ValueError("power must be >= 1")
        self.weight = None if self.base.weight is None else self.base.weight * self.n

    def key(self):
        return ("pow", self.base.key(), self.n)

    def _series(self, N):
        return self.base.series(N) ** self.n

    def _wpair(self, N):
        w, d1 = self.base.wpair(N)
        n = self.n
        wp = w ** (n - 1)
        return (wp * w, wp * d1 * n)

    def _wd12sq(self, N):
        w, d1 = self.base.wpair(N)
        d2 = self.base.wd12sq(N)
        n = self.n
        wp = w ** (n - 1)
        if n >= 2:
            wpp = w ** (n - 2)
            return wp * d2 * n + wpp * (d1 * d1) * (n * (n - 1))
        return d2

    def slash(self, M):
        return Pow(self.base.slash(M), self.n)

    def eval(self, tau):
        return self.base.eval(tau) ** self.n

    def sexpr(self):
        return f"(pow {self.base.sexpr()} {self.n})"


class Br4(Expr):
    """Four-fold bracket: scalar of weight sum + 3."""

    def __init__(self, f1, f2, f3, f4):
        self.args = (f1, f2, f3, f4)
        ws = [f.weight for f in self.args]
        if any(w is None for w in ws):
            raise ValueError("bracket arguments need weights")
        self.weight = sum(ws) + 3

    def key(self):
        return ("br4",) + tuple(f.key() for f in self.args)

    def _series(self, N):
        return bracket4(*(f.series(N) for f in self.args))

    def _wpair(self, N):
        datas = [f.wpair(N) for f in self.args]
        d12sq = [f.wd12sq(N) for f in self.args]
        ks = [f.weight for f in self.args]
        row_kf = [d[0].scale_by(k) for d, k in zip(datas, ks)]
        row_11 = [d[0].d_partial(11) for d in datas]
        row_12 = [d[1] for d in datas]
        row_22 = [d[0].d_partial(22) for d in datas]
        w = det4_series((row_kf, row_11, row_12, row_22))
        # d12 by Leibniz over the four rows
        d_rows = (
            [d[1].scale_by(k) for d, k in zip(datas, ks)],
            [d[1].d_partial(11) for d in datas],
            d12sq,
            [d[1].d_partial(22) for d in datas],
        )
        base = (row_kf, row_11, row_12, row_22)
        d1 = None
        for j in range(4):
            rows = tuple(d_rows[j] if i == j else base[i] for i in range(4))
            term = det4_series(rows)
            d1 = term if d1 is None else d1 + term
        return (w, d1)

    def _wd12sq(self, N):
        raise NotImplementedError(
            "W(d12^2) of a four-fold bracket needs third derivatives")

    def slash(self, M):
        return Br4(*(f.slash(M) for f in self.args))

    def eval(self, tau):
        raise NotImplementedError("bracket values are not defining-sum evaluable")

    def sexpr(self):
        return "(br4 " + " ".join(f.sexpr() for f in self.args) + ")"


class Sym2Expr:
    """Sym^2-valued expression (bracket combinations)."""

    weight: Fraction | None = None

    def key(self):
        raise NotImplementedError

    def sym2(self, N: int) -> Sym2Series:
        k = (self.key(), N)
        out = _SYM2_MEMO.get(k)
        if out is None:
            out = self._sym2(N)
            _SYM2_MEMO[k] = out
        return out

    def _sym2(self, N):
        raise NotImplementedError

    def w11(self, N: int) -> FourierSeries:
        """Diagonal restriction of the u1 u2 component."""
        raise NotImplementedError

    def slash(self, M) -> "Sym2Expr":
        raise NotImplementedError

    def sexpr(self) -> str:
        raise NotImplementedError

    def __add__(self, other):
        return S2Sum((self, other))

    def __sub__(self, other):
        return S2Sum((self, S2Scale(Const(-1), other)))


class Br2(Sym2Expr):
    def __init__(self, f, g):
        self.args = (f, g)
        if f.weight is None or g.weight is None:
            raise ValueError("bracket arguments need weights")
        self.weight = f.weight + g.weight

    def key(self):
        return ("br2",) + tuple(f.key() for f in self.args)

    def _sym2(self, N):
        return bracket2(*(f.series(N) for f in self.args))

    def w11(self, N):
        f, g = self.args
        fw, fd1 = f.wpair(N)
        gw, gd1 = g.wpair(N)
        return fw.scale_by(f.weight) * gd1 - gw.scale_by(g.weight) * fd1

    def slash(self, M):
        return Br2(*(f.slash(M) for f in self.args))

    def sexpr(self):
        return "(br2 " + " ".join(f.sexpr() for f in self.args) + ")"


class Br3(Sym2Expr):
    def __init__(self, f1, f2, f3):
        self.args = (f1, f2, f3)
        ws = [f.weight for f in self.args]
        if any(w is None for w in ws):
            raise ValueError("bracket arguments need weights")
        self.weight = sum(ws) + 1

    def key(self):
        return ("br3",) + tuple(f.key() for f in self.args)

    def _sym2(self, N):
        return bracket3(*(f.series(N) for f in self.args))

    def w11(self, N):
        datas = [f.wpair(N) for f in self.args]
        ks = [f.weight for f in self.args]
        rows = (
            [d[0].d_partial(11) for d in datas],
            [d[0].scale_by(k) for d, k in zip(datas, ks)],
            [d[0].d_partial(22) for d in datas],
        )
        return det3_series(rows).scale_by(-2)

    def slash(self, M):
        return Br3(*(f.slash(M) for f in self.args))

    def sexpr(self):
        return "(br3 " + " ".join(f.sexpr() for f in self.args) + ")"


class S2Scale(Sym2Expr):
    def __init__(self, scalar: Expr, body: Sym2Expr):
        self.scalar = _as_expr(scalar)
        self.body = body
        if self.scalar.weight is None or body.weight is None:
            self.weight = None
        else:
            self.weight = self.scalar.weight + body.weight

    def key(self):
        return ("s2scale", self.scalar.key(), self.body.key())

    def _sym2(self, N):
        return self.body.sym2(N).mul_scalar_series(self.scalar.series(N))

    def w11(self, N):
        return self.scalar.wpair(N)[0] * self.body.w11(N)

    def slash(self, M):
        return S2Scale(self.scalar.slash(M), self.body.slash(M))

    def sexpr(self):
        return f"(s2scale {self.scalar.sexpr()} {self.body.sexpr()})"


class S2Sum(Sym2Expr):
    def __init__(self, parts):
        flat = []
        for p in parts:
            if isinstance(p, S2Sum):
                flat.extend(p.parts)
            else:
                flat.append(p)
        self.parts = tuple(flat)
        ws = {p.weight for p in self.parts}
        self.weight = ws.pop() if len(ws) == 1 else None

    def key(self):
        return ("s2sum",) + tuple(p.key() for p in self.parts)

    def _sym2(self, N):
        out = self.parts[0].sym2(N)
        for p in self.parts[1:]:
            out = out + p.sym2(N)
        return out

    def w11(self, N):
        return _sum_series([p.w11(N) for p in self.parts])

    def slash(self, M):
        return S2Sum(tuple(p.slash(M) for p in self.parts))

    def sexpr(self):
        return "(s2sum " + " ".join(p.sexpr() for p in self.parts) + ")"


# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------


class ThetaMonomialAtom(Expr):
    """coeff * product of degree-2 theta constants; slashable by any M."""

    def __init__(self, chars, coeff=None, name=None):
        self.chars = tuple(tuple(int(v) % 2 for v in m) for m in chars)
        if len(self.chars) % 2:
            raise ValueError("theta monomials must have even length")
        self.coeff = coeff if isinstance(coeff, CycRat) else \
            CycRat.from_rational(coeff if coeff is not None else 1)
        self.weight = Fraction(len(self.chars), 2)
        self.name = name

    def key(self):
        return ("thmon", self.chars, self.coeff.num, self.coeff.den)

    def _series(self, N):
        out = FourierSeries.constant(self.coeff, N)
        for m in self.chars:
            out = out * theta.theta_const(m, N)
        return out

    def slash(self, M):
        factor, out = symplectic.slash_theta_product(self.chars, M)
        return ThetaMonomialAtom(out, self.coeff * factor)

    def eval(self, tau):
        out = complex(self.coeff)
        for m in self.chars:
            out *= theta.eval_theta_char(m, tau)
        return out

    def sexpr(self):
        labels = ",".join(theta.char_label(m) for m in self.chars)
        if self.coeff == CycRat.one():
            return f"(thetas {labels})"
        if self.coeff.is_rational():
            return f"(thetas {labels} {self.coeff.as_fraction()})"
        return f"(thetas {labels} cyc:{':'.join(self.coeff.to_strings())})"


class LatticeAtom(Expr):
    """theta_S(tau) for an even Gram matrix; slash is structural (1, M2, K)."""

    def __init__(self, gram, latname):
        self.gram = gram
        self.latname = latname
        self.weight = Fraction(gram.n, 2)

    def key(self):
        return ("lat", self.latname)

    def _series(self, N):
        return theta.theta_lattice(self.gram, 2, 1, N)

    def slash(self, M):
        if M == symplectic.I4:
            return self
        if M == symplectic.M2:
            return self  # integral exponents: translation by S0 acts trivially
        if M == symplectic.K:
            const, dual, s = symplectic.slash_lattice_J(self.gram)
            if s != 3:
                raise NotImplementedError("K-slash implemented for 3-scaled duals")
            return StarLatticeAtom(dual, const,
                                   f"{self.latname}_dual", translated=True)
        raise NotImplementedError(
            f"lattice theta slash by {M!r} is not series-representable here")

    def eval(self, tau):
        return theta.eval_lattice(self.latname, tau)

    def sexpr(self):
        return f"(lattice {self.latname})"


class StarLatticeAtom(Expr):
    """const * theta_S((tau + S0)/3): image of a lattice theta under K.

    Full three-variable expansions are deliberately not materialized at
    rank >= 6 (they are never needed); the diagonal-restriction data comes
    from exact pair histograms with cube-root phases.
    """

    def __init__(self, gram, const: CycRat, latname: str, translated=True):
        self.gram = gram
        self.const = const
        self.latname = latname
        self.translated = translated
        self.weight = Fraction(gram.n, 2)

    def key(self):
        return ("starlat", self.latname, self.translated,
                self.const.num, self.const.den)

    def _series(self, N):
        if self.gram.n > 4:
            raise NotImplementedError(
                "full expansion of a slashed rank->=6 lattice theta is not "
                "materialized; use wdata / eval")
        f = theta.theta_lattice(self.gram, 2, 3, N)
        if self.translated:
            f = f.translate(((0, 1), (1, 0)))
        return f.scale_by(self.const)

    def _wseries_weighted(self, N, power):
        hist = lattices.witt_phase_histograms(self.gram, 6 * N)
        omega = [CycRat.root_of_unity(j, 3) for j in range(3)]
        box = 3 * N
        terms_by_phase = {0: {}, 1: {}, 2: {}}
        for (qx, qy), rows in hist.items():
            a, c = qx // 2, qy // 2
            if a > box or c > box:
                continue
            vals = rows[power]
            for cls in range(3):
                if vals[cls]:
                    terms_by_phase[cls][(a, 0, c)] = vals[cls]
        total = FourierSeries.zero(N, 3)
        for cls in range(3):
            if terms_by_phase[cls]:
                part = FourierSeries(3, N, terms_by_phase[cls], certified=True)
                if self.translated and cls:
                    part = part.scale_by(omega[cls])
                total = total + part
        return total.scale_by(self.const * CycRat.from_rational(
            Fraction(1, 3**power)))

    def _wpair(self, N):
        return (self._wseries_weighted(N, 0), self._wseries_weighted(N, 1))

    def _wd12sq(self, N):
        return self._wseries_weighted(N, 2)

    def slash(self, M):
        if M == symplectic.I4:
            return self
        raise NotImplementedError("iterated slashes of starred lattices")

    def eval(self, tau):
        t11, t12 = complex(tau[0][0]), complex(tau[0][1])
        t22 = complex(tau[1][1])
        if self.translated:
            t12 = t12 + 1
        arg = ((t11 / 3, t12 / 3), (t12 / 3, t22 / 3))
        name = self.latname.replace("_dual", "")
        # the dual Gram of a catalog lattice is itself a catalog lattice
        dual_names = {"a2": "a2", "e6": "e6s", "e6s": "e6", "e8": "e8"}
        return complex(self.const) * theta.eval_lattice(dual_names[name], arg)

    def sexpr(self):
        return f"(starlattice {self.latname})"


class E8Atom(Expr):
    """The weight-4 theta of the unimodular rank-8 lattice (level one)."""

    def __init__(self):
        self.weight = Fraction(4)

    def key(self):
        return ("lat", "e8")

    def _series(self, N):
        return theta.phi4_series(N)

    def slash(self, M):
        # full-level modular form of even weight: invariant under Sp(2, Z)
        return self

    def eval(self, tau):
        return theta.eval_lattice("e8", tau)

    def sexpr(self):
        return "(lattice e8)"


class HarmonicAtom(Expr):
    """The harmonic weight-4 lattice sum; K-slash supplied by the catalog."""

    def __init__(self):
        self.weight = Fraction(4)
        self._k_image = None  # set by the level-3 catalog

    def key(self):
        return ("lat", "c4harm")

    def _series(self, N):
        return theta.theta_harmonic_c4(N)

    def set_k_image(self, expr: Expr):
        self._k_image = expr

    def slash(self, M):
        if M == symplectic.I4:
            return self
        if M == symplectic.K and self._k_image is not None:
            return self._k_image
        raise NotImplementedError("harmonic form slash only along 1 and K")

    def eval(self, tau):
        return theta.eval_harmonic_c4(tau)

    def sexpr(self):
        return "(lattice c4harm)"


# ---------------------------------------------------------------------------
# S-expression parsing
# ---------------------------------------------------------------------------


def _tokenize(text):
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _parse(tokens, pos):
    tok = tokens[pos]
    if tok != "(":
        raise ValueError(f"expected '(' at token {pos}")
    head = tokens[pos + 1]
    args = []
    pos += 2
    while tokens[pos] != ")":
        if tokens[pos] == "(":
            node, pos = _parse(tokens, pos)
            args.append(node)
        else:
            args.append(tokens[pos])
            pos += 1
    return (head, args), pos + 1


def parse_sexpr(text: str, resolver) -> Expr | Sym2Expr:
    """Parse an S-expression; `resolver(name)` maps generator names to atoms."""
    (node, _) = _parse(_tokenize(text), 0)

    def build(n):
        head, args = n
        if head == "gen":
            return resolver(args[0])
        if head == "const":
            return Const(Fraction(args[0]))
        if head == "sum":
            return Sum(tuple(build(a) for a in args))
        if head == "prod":
            return Prod(tuple(build(a) for a in args))
        if head == "pow":
            return Pow(build(args[0]), int(args[1]))
        if head == "scale":
            return scale(build(args[1]), Fraction(args[0]))
        if head == "br2":
            return Br2(*(build(a) for a in args))
        if head == "br3":
            return Br3(*(build(a) for a in args))
        if head == "br4":
            return Br4(*(build(a) for a in args))
        if head == "s2scale":
            return S2Scale(build(args[0]), build(args[1]))
        if head == "s2sum":
            return S2Sum(tuple(build(a) for a in args))
        raise ValueError(f"unknown S-expression head {head!r}")

    return build(node)
