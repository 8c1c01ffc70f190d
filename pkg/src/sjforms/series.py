"""Sparse truncated Fourier expansions on the degree-two upper half space.

A series is a finite sum of terms  coeff * e(n*t11 + r*t12 + m*t22)  with
e(x) = exp(2*pi*i*x) and exponents (n, r, m) = (a, b, c)/D for integer keys
(a, b, c) and a per-series denominator D dividing 24.  Holomorphy at the
cusp forces a >= 0 and c >= 0; b may be negative.

Truncation contract: a series with trunc = N carries exactly the terms
with a/D <= N and c/D <= N, and those are exact.  Binary operations take
the min of the operands' truncations; the b-range is never truncated (it
is finite for everything built here; series produced by theta sums carry
the certificate b^2 <= 4ac on every key).

Coefficients are held as Z[zeta_24] values (int or 8-tuple of ints, see
cyclotomic.py) with one global rational scale per series, so the inner
loops run on machine integers whenever the series is rational.

Derivatives are normalized: d_ij multiplies the coefficient at exponent
(n, r, m) by n, r or m respectively, i.e. it is (2*pi*i)^{-1} d/dtau_ij.
Every (2*pi*i)-power that the classical operator calculus produces is
absorbed into this normalization, so all quantities stay in Q(zeta_24).
"""

from __future__ import annotations

import cmath
import json
from fractions import Fraction
from math import gcd

from . import _backend
from .cyclotomic import (
    CycRat,
    root24_tuple,
    zc_add,
    zc_complex,
    zc_is_zero,
    zc_mul,
    zc_neg,
    zc_scale_int,
)

__all__ = [
    "FourierSeries",
    "Sym2Series",
    "d_partial",
    "witt",
    "involution",
    "split_types",
    "translate",
    "equal_upto",
    "FirstMismatch",
]

ALLOWED_DENOMS = (1, 2, 3, 4, 6, 8, 12, 24)


class FirstMismatch:
    """First differing coefficient of two series, in (a, c, b) order."""

    __slots__ = ("exponents", "left", "right")

    def __init__(self, exponents, left, right):
        self.exponents = exponents
        self.left = left
        self.right = right

    def __repr__(self):
        n, r, m = self.exponents
        return (
            f"at e({n}*t11 + {r}*t12 + {m}*t22): "
            f"left={self.left!r} right={self.right!r}"
        )


class FourierSeries:
    __slots__ = ("denom", "trunc", "scale", "terms", "weight", "label", "certified")

    def __init__(self, denom, trunc, terms, scale=Fraction(1), weight=None,
                 label=None, certified=False, _clean=False):
        if denom not in ALLOWED_DENOMS:
            raise ValueError(f"denominator {denom} does not divide 24")
        scale = Fraction(scale)
        if _clean:
            clean = terms
        else:
            box = trunc * denom
            clean = {}
            for key, z in terms.items():
                a, b, c = key
                if a < 0 or c < 0:
                    raise ValueError(f"negative diagonal exponent in key {key}")
                if a > box or c > box:
                    continue
                if not zc_is_zero(z):
                    clean[key] = z
            if clean and scale != 0:
                g = 0
                for z in clean.values():
                    if isinstance(z, int):
                        g = gcd(g, z)
                    else:
                        for v in z:
                            g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    clean = {k: _zc_div_int(z, g) for k, z in clean.items()}
                    scale *= g
            if not clean or scale == 0:
                clean = {}
                scale = Fraction(1)
        if certified:
            for a, b, c in clean:
                if b * b > 4 * a * c:
                    raise ValueError(
                        f"certified series has key {(a, b, c)} with b^2 > 4ac")
        self.denom = denom
        self.trunc = trunc
        self.scale = scale
        self.terms = clean
        self.weight = None if weight is None else Fraction(weight)
        self.label = label
        self.certified = certified

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, trunc, denom=1):
        return cls(denom, trunc, {}, certified=True)

    @classmethod
    def constant(cls, value, trunc):
        value = CycRat.from_rational(value) if not isinstance(value, CycRat) else value
        if value.is_zero():
            return cls.zero(trunc)
        num = value.num[0] if value.is_rational() else value.num
        return cls(1, trunc, {(0, 0, 0): num}, scale=Fraction(1, value.den),
                   certified=True)

    @classmethod
    def from_exponents(cls, entries, trunc, weight=None, label=None):
        """Build from (n, r, m, coeff) with rational exponents; denom inferred."""
        denom = 1
        for n, r, m, _ in entries:
            for q in (Fraction(n), Fraction(r), Fraction(m)):
                denom = denom * q.denominator // gcd(denom, q.denominator)
        if denom not in ALLOWED_DENOMS:
            raise ValueError(f"exponent denominator {denom} does not divide 24")
        total = {}
        den_lcm = 1
        cyc_entries = []
        for n, r, m, coeff in entries:
            c = coeff if isinstance(coeff, CycRat) else CycRat.from_rational(coeff)
            cyc_entries.append((n, r, m, c))
            den_lcm = den_lcm * c.den // gcd(den_lcm, c.den)
        for n, r, m, c in cyc_entries:
            key = (int(Fraction(n) * denom), int(Fraction(r) * denom),
                   int(Fraction(m) * denom))
            z = zc_scale_int(c.num if not c.is_rational() else c.num[0],
                             den_lcm // c.den)
            total[key] = zc_add(total.get(key, 0), z)
        return cls(denom, trunc, total, scale=Fraction(1, den_lcm),
                   weight=weight, label=label)

    # -- coefficient access ------------------------------------------------

    def coeff_key(self, key) -> CycRat:
        z = self.terms.get(tuple(key))
        if z is None:
            return CycRat.zero()
        return CycRat.from_zc(z, self.scale)

    def coeff_at(self, n, r, m) -> CycRat:
        """Coefficient at exponents (n, r, m), given as rationals."""
        D = self.denom
        key = []
        for q in (n, r, m):
            q = Fraction(q) * D
            if q.denominator != 1:
                return CycRat.zero()
            key.append(int(q))
        return self.coeff_key(tuple(key))

    def items_cyc(self):
        for key in sorted(self.terms, key=_sort_key):
            yield key, CycRat.from_zc(self.terms[key], self.scale)

    def __len__(self):
        return len(self.terms)

    def is_zero_upto(self, N=None) -> bool:
        if N is None or N >= self.trunc:
            return not self.terms
        box = N * self.denom
        return not any(a <= box and c <= box for a, _, c in self.terms)

    def support_box(self, N):
        box = N * self.denom
        return {k: z for k, z in self.terms.items() if k[0] <= box and k[2] <= box}

    # -- denominator / truncation management -------------------------------

    def lift_denom(self, denom2) -> "FourierSeries":
        if denom2 == self.denom:
            return self
        if denom2 % self.denom or denom2 not in ALLOWED_DENOMS:
            raise ValueError(f"cannot lift denom {self.denom} to {denom2}")
        f = denom2 // self.denom
        terms = {(a * f, b * f, c * f): z for (a, b, c), z in self.terms.items()}
        return FourierSeries(denom2, self.trunc, terms, self.scale, self.weight,
                             self.label, self.certified, _clean=True)

    def reduce_denom(self) -> "FourierSeries":
        """Smallest representation: divide denom by the gcd of all key entries."""
        g = self.denom
        for a, b, c in self.terms:
            g = gcd(g, gcd(a, gcd(b, c)))
            if g == 1:
                return self
        if g == 1 or not self.terms:
            if not self.terms and self.denom != 1:
                return FourierSeries(1, self.trunc, {}, weight=self.weight,
                                     label=self.label, certified=self.certified,
                                     _clean=True)
            return self
        terms = {(a // g, b // g, c // g): z for (a, b, c), z in self.terms.items()}
        return FourierSeries(self.denom // g, self.trunc, terms, self.scale,
                             self.weight, self.label, self.certified, _clean=True)

    def truncate_to(self, N) -> "FourierSeries":
        if N > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {N}")
        if N == self.trunc:
            return self
        box = N * self.denom
        terms = {k: z for k, z in self.terms.items() if k[0] <= box and k[2] <= box}
        return FourierSeries(self.denom, N, terms, self.scale, self.weight,
                             self.label, self.certified, _clean=True)

    def with_weight(self, weight) -> "FourierSeries":
        return FourierSeries(self.denom, self.trunc, self.terms, self.scale,
                             weight, self.label, self.certified, _clean=True)

    def with_label(self, label) -> "FourierSeries":
        return FourierSeries(self.denom, self.trunc, self.terms, self.scale,
                             self.weight, label, self.certified, _clean=True)

    # -- ring operations ----------------------------------------------------

    def _common(self, other):
        D = self.denom * other.denom // gcd(self.denom, other.denom)
        return self.lift_denom(D), other.lift_denom(D)

    def __add__(self, other):
        if not isinstance(other, FourierSeries):
            return NotImplemented
        f, g = self._common(other)
        trunc = min(f.trunc, g.trunc)
        sf, sg = f.scale, g.scale
        if not f.terms:
            return FourierSeries(g.denom, trunc, dict(g.terms), sg,
                                 other.weight, None, g.certified)
        if not g.terms:
            return FourierSeries(f.denom, trunc, dict(f.terms), sf,
                                 self.weight, None, f.certified)
        num = gcd(sf.numerator * sg.denominator, sg.numerator * sf.denominator)
        den = sf.denominator * sg.denominator
        scale = Fraction(num, den)
        mf = int(sf / scale)
        mg = int(sg / scale)
        terms = {k: zc_scale_int(z, mf) for k, z in f.terms.items()}
        for k, z in g.terms.items():
            cur = terms.get(k)
            zz = zc_scale_int(z, mg)
            if cur is None:
                terms[k] = zz
            else:
                terms[k] = zc_add(cur, zz)
        return FourierSeries(f.denom, trunc, terms, scale,
                             _merge_weight(self.weight, other.weight),
                             None, f.certified and g.certified)

    def __sub__(self, other):
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return FourierSeries(self.denom, self.trunc, self.terms, -self.scale,
                             self.weight, self.label, self.certified, _clean=True)

    def scale_by(self, s) -> "FourierSeries":
        """Multiply by a scalar (rational or CycRat)."""
        if isinstance(s, CycRat):
            if s.is_zero():
                return FourierSeries.zero(self.trunc, self.denom)
            if s.is_rational():
                return self.scale_by(s.as_fraction())
            terms = {k: zc_mul(z, s.num) for k, z in self.terms.items()}
            return FourierSeries(self.denom, self.trunc, terms,
                                 self.scale / s.den, self.weight, None,
                                 self.certified)
        s = Fraction(s)
        if s == 0:
            return FourierSeries.zero(self.trunc, self.denom)
        return FourierSeries(self.denom, self.trunc, self.terms, self.scale * s,
                             self.weight, self.label, self.certified, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycRat)):
            return self.scale_by(other)
        if not isinstance(other, FourierSeries):
            return NotImplemented
        f, g = self._common(other)
        trunc = min(f.trunc, g.trunc)
        if not f.terms or not g.terms:
            return FourierSeries.zero(trunc, f.denom)
        box = trunc * f.denom
        fk, fv = _packed_items(f.terms)
        gk, gv = _packed_items(g.terms)
        if len(fk) > len(gk):
            fk, fv, gk, gv = gk, gv, fk, fv
        raw = _backend.mul_packed(fk, fv, gk, gv, box, box)
        unpack = _backend.unpack_key
        terms = {}
        for p, z in raw.items():
            if not zc_is_zero(z):
                terms[unpack(p)] = z
        weight = None
        if self.weight is not None and other.weight is not None:
            weight = self.weight + other.weight
        return FourierSeries(f.denom, trunc, terms, f.scale * g.scale, weight,
                             None, f.certified and g.certified)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        if n == 0:
            return FourierSeries.constant(1, self.trunc)
        out = None
        base = self
        while True:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if not n:
                return out
            base = base * base

    def __eq__(self, other):
        if not isinstance(other, FourierSeries):
            return NotImplemented
        ok, _ = equal_upto(self, other, min(self.trunc, other.trunc))
        return ok

    def __hash__(self):
        return id(self)

    # -- analytic-style operators -------------------------------------------

    def d_partial(self, ij) -> "FourierSeries":
        """Normalized partial derivative; ij in {11, 12, 22} (or '11' etc.)."""
        ij = int(ij)
        if ij not in (11, 12, 22):
            raise ValueError("index pair must be 11, 12 or 22")
        pos = {11: 0, 12: 1, 22: 2}[ij]
        terms = {}
        for key, z in self.terms.items():
            w = key[pos]
            if w:
                terms[key] = zc_scale_int(z, w)
        return FourierSeries(self.denom, self.trunc, terms,
                             self.scale / self.denom, None, None, self.certified)

    def witt(self) -> "FourierSeries":
        """Restriction to tau_12 = 0: sums coefficients over b."""
        terms = {}
        for (a, b, c), z in self.terms.items():
            k = (a, 0, c)
            cur = terms.get(k)
            terms[k] = z if cur is None else zc_add(cur, z)
        return FourierSeries(self.denom, self.trunc, terms, self.scale,
                             self.weight, None, True)

    def involution(self) -> "FourierSeries":
        """tau_12 -> -tau_12, i.e. b -> -b on keys."""
        terms = {(a, -b, c): z for (a, b, c), z in self.terms.items()}
        return FourierSeries(self.denom, self.trunc, terms, self.scale,
                             self.weight, None, self.certified, _clean=True)

    def split_types(self):
        """(even, odd) parts under the involution; their sum is the series."""
        fi = self.involution()
        even = (self + fi).scale_by(Fraction(1, 2))
        odd = (self - fi).scale_by(Fraction(1, 2))
        return even, odd

    def translate(self, S) -> "FourierSeries":
        """tau -> tau + S for an integer symmetric 2x2 matrix S."""
        (s11, s12), (s21, s22) = S
        if s12 != s21:
            raise ValueError("translation matrix must be symmetric")
        mult = 24 // self.denom
        terms = {}
        for key, z in self.terms.items():
            a, b, c = key
            k = ((a * s11 + b * s12 + c * s22) * mult) % 24
            terms[key] = zc_mul(z, root24_tuple(k)) if k else z
        return FourierSeries(self.denom, self.trunc, terms, self.scale,
                             self.weight, None, self.certified)

    def tau_div(self, s: int) -> "FourierSeries":
        """Reinterpret f(tau) as f(tau/s): exponents are divided by s."""
        D = self.denom * s
        if D not in ALLOWED_DENOMS:
            raise ValueError(f"denominator {D} does not divide 24")
        return FourierSeries(D, self.trunc, self.terms, self.scale, self.weight,
                             None, self.certified, _clean=True)

    def swap_vars(self) -> "FourierSeries":
        """Exchange tau_11 and tau_22: key (a, b, c) -> (c, b, a)."""
        terms = {(c, b, a): z for (a, b, c), z in self.terms.items()}
        return FourierSeries(self.denom, self.trunc, terms, self.scale,
                             self.weight, None, self.certified, _clean=True)

    # -- evaluation -----------------------------------------------------------

    def float_eval(self, tau, check_convergence=True) -> complex:
        """Numerically sum the truncated series at a point of H_2."""
        t11, t12, t22 = _tau_entries(tau)
        if check_convergence:
            lam = _min_imag_eig(tau)
            if lam <= 0:
                raise ValueError("point is not in the upper half space")
            if cmath.exp(-2 * cmath.pi * lam * (self.trunc + 1)).real > 1e-8:
                raise ValueError(
                    f"truncation {self.trunc} too small for evaluation here")
        D = self.denom
        total = 0j
        tpii = 2j * cmath.pi
        for (a, b, c), z in self.terms.items():
            total += zc_complex(z) * cmath.exp(
                tpii * (a * t11 + b * t12 + c * t22) / D)
        return total * float(self.scale)

    # -- serialization ----------------------------------------------------------

    def to_json_obj(self):
        f = self.reduce_denom()
        out = {"denom": f.denom, "trunc": f.trunc}
        if f.weight is not None:
            out["weight"] = str(f.weight)
        terms = []
        for key, cyc in f.items_cyc():
            a, b, c = key
            if cyc.is_rational():
                coeff = str(cyc.as_fraction())
            else:
                coeff = cyc.to_strings()
            terms.append([a, b, c, coeff])
        out["terms"] = terms
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj) -> "FourierSeries":
        entries = {}
        denom = obj["denom"]
        den_lcm = 1
        parsed = []
        for a, b, c, coeff in obj["terms"]:
            if isinstance(coeff, str):
                cyc = CycRat.from_rational(Fraction(coeff))
            else:
                cyc = CycRat.from_strings(coeff)
            parsed.append(((a, b, c), cyc))
            den_lcm = den_lcm * cyc.den // gcd(den_lcm, cyc.den)
        for key, cyc in parsed:
            z = zc_scale_int(cyc.num if not cyc.is_rational() else cyc.num[0],
                             den_lcm // cyc.den)
            entries[key] = z
        weight = Fraction(obj["weight"]) if "weight" in obj else None
        return cls(denom, obj["trunc"], entries, Fraction(1, den_lcm), weight)

    @classmethod
    def from_json(cls, text: str) -> "FourierSeries":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        name = self.label or "series"
        return (f"<{name}: {len(self.terms)} terms, denom {self.denom}, "
                f"trunc {self.trunc}>")


def _zc_div_int(z, g):
    if isinstance(z, int):
        return z // g
    return tuple(v // g for v in z)


def _merge_weight(w1, w2):
    return w1 if w1 == w2 else None


def _sort_key(key):
    a, b, c = key
    return (a, c, b)


def _packed_items(terms):
    pack = _backend.pack_key
    pairs = sorted((pack(a, b, c), z) for (a, b, c), z in terms.items())
    return [p for p, _ in pairs], [z for _, z in pairs]


def _tau_entries(tau):
    try:
        t11, t12 = complex(tau[0][0]), complex(tau[0][1])
        t22 = complex(tau[1][1])
    except TypeError:
        raise ValueError("tau must be a 2x2 complex matrix") from None
    return t11, t12, t22


def _min_imag_eig(tau) -> float:
    t11, t12, t22 = _tau_entries(tau)
    y11, y12, y22 = t11.imag, t12.imag, t22.imag
    tr = y11 + y22
    disc = ((y11 - y22) ** 2 + 4 * y12 * y12) ** 0.5
    return (tr - disc) / 2


# -- module-level operator aliases (the artifact's elementary operators) ----

def d_partial(f: FourierSeries, ij) -> FourierSeries:
    return f.d_partial(ij)


def witt(f: FourierSeries) -> FourierSeries:
    return f.witt()


def involution(f: FourierSeries) -> FourierSeries:
    return f.involution()


def split_types(f: FourierSeries):
    return f.split_types()


def translate(f: FourierSeries, S) -> FourierSeries:
    return f.translate(S)


def equal_upto(f: FourierSeries, g: FourierSeries, N: int):
    """Exact comparison within the N-box; (ok, FirstMismatch | None)."""
    if N > f.trunc or N > g.trunc:
        raise ValueError(
            f"comparison at N={N} exceeds certified truncations "
            f"({f.trunc}, {g.trunc})")
    D = f.denom * g.denom // gcd(f.denom, g.denom)
    fl, gl = f.lift_denom(D), g.lift_denom(D)
    box = N * D
    # cross-multiplied integer comparison: scale_f * zf == scale_g * zg
    mf = fl.scale.numerator * gl.scale.denominator
    mg = gl.scale.numerator * fl.scale.denominator
    keys = set(fl.terms) | set(gl.terms)
    for key in sorted(keys, key=_sort_key):
        a, b, c = key
        if a > box or c > box:
            continue
        zf = zc_scale_int(fl.terms.get(key, 0), mf)
        zg = zc_scale_int(gl.terms.get(key, 0), mg)
        if zf != zg and zc_add(zf, zc_neg(zg)) != 0:
            exps = (Fraction(a, D), Fraction(b, D), Fraction(c, D))
            return False, FirstMismatch(exps, fl.coeff_key(key), gl.coeff_key(key))
    return True, None


class Sym2Series:
    """Sym^2-valued series: coefficients of u1^2, u1*u2, u2^2, plus a weight."""

    __slots__ = ("h20", "h11", "h02", "weight")

    def __init__(self, h20, h11, h02, weight=None):
        D = 1
        for f in (h20, h11, h02):
            D = D * f.denom // gcd(D, f.denom)
        N = min(h20.trunc, h11.trunc, h02.trunc)
        self.h20 = h20.lift_denom(D).truncate_to(N)
        self.h11 = h11.lift_denom(D).truncate_to(N)
        self.h02 = h02.lift_denom(D).truncate_to(N)
        self.weight = None if weight is None else Fraction(weight)

    @property
    def denom(self):
        return self.h20.denom

    @property
    def trunc(self):
        return self.h20.trunc

    @classmethod
    def zero(cls, trunc, weight=None):
        z = FourierSeries.zero(trunc)
        return cls(z, z, z, weight)

    def components(self):
        return (self.h20, self.h11, self.h02)

    def __add__(self, other):
        if not isinstance(other, Sym2Series):
            return NotImplemented
        w = self.weight if self.weight == other.weight else None
        return Sym2Series(self.h20 + other.h20, self.h11 + other.h11,
                          self.h02 + other.h02, w)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Sym2Series(-self.h20, -self.h11, -self.h02, self.weight)

    def scale_by(self, s):
        return Sym2Series(self.h20.scale_by(s), self.h11.scale_by(s),
                          self.h02.scale_by(s), self.weight)

    def mul_scalar_series(self, f: FourierSeries):
        w = None
        if self.weight is not None and f.weight is not None:
            w = self.weight + f.weight
        return Sym2Series(f * self.h20, f * self.h11, f * self.h02, w)

    def involution(self):
        """Action of tau_12 -> -tau_12 on Sym^2 forms: u2 -> -u2 as well."""
        return Sym2Series(self.h20.involution(), -self.h11.involution(),
                          self.h02.involution(), self.weight)

    def is_zero_upto(self, N=None):
        return all(f.is_zero_upto(N) for f in self.components())

    def equal_upto(self, other, N):
        for mine, theirs, name in zip(self.components(), other.components(),
                                      ("u1^2", "u1u2", "u2^2")):
            ok, mismatch = equal_upto(mine, theirs, N)
            if not ok:
                return False, (name, mismatch)
        return True, None

    def __repr__(self):
        return (f"<Sym2Series weight {self.weight}: "
                f"{len(self.h20)}/{len(self.h11)}/{len(self.h02)} terms>")
