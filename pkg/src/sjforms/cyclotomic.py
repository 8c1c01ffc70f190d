"""Exact arithmetic in the field Q(zeta) with zeta = e(1/24).

All coefficient arithmetic in this package happens in the 24th cyclotomic
field, the smallest field containing every phase that occurs: eighth roots
of unity from theta multiplier systems and cube roots from translations
acting on exponents in (1/3)Z.  The field has degree 8 over Q with power
basis 1, zeta, ..., zeta^7 and minimal polynomial x^8 - x^4 + 1, so
zeta^8 = zeta^4 - 1.

Two layers:

* low-level "zc" values: algebraic integers in Z[zeta], stored as a plain
  ``int`` (rational integers, by far the common case) or an 8-tuple of
  ints.  These are what sparse series carry as term coefficients, with a
  single global rational scale factored out per series.
* ``CycRat``: the full field element (8-tuple numerator over a positive
  integer denominator, gcd-reduced), used at API boundaries, in linear
  algebra and in serialization.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd

__all__ = [
    "CycRat",
    "zc_add",
    "zc_mul",
    "zc_neg",
    "zc_is_zero",
    "zc_scale_int",
    "zc_complex",
    "root24_tuple",
]

_ZERO8 = (0, 0, 0, 0, 0, 0, 0, 0)


def _reduce_poly(coeffs):
    """Reduce a coefficient list modulo x^8 - x^4 + 1."""
    c = list(coeffs)
    if len(c) < 8:
        c += [0] * (8 - len(c))
    for k in range(len(c) - 1, 7, -1):
        v = c[k]
        if v:
            c[k] = 0
            c[k - 4] += v
            c[k - 8] -= v
    return tuple(c[:8])


def _zeta_powers():
    pows = []
    for k in range(24):
        mono = [0] * (k + 1)
        mono[k] = 1
        pows.append(_reduce_poly(mono))
    return tuple(pows)


ZETA_POW = _zeta_powers()  # ZETA_POW[k] = coordinates of zeta^k


def root24_tuple(k: int):
    """zc value of e(k/24), as an int when rational."""
    t = ZETA_POW[k % 24]
    if t[1:] == _ZERO8[1:]:
        return t[0]
    return t


def zc_is_zero(z) -> bool:
    return z == 0 if isinstance(z, int) else z == _ZERO8


def zc_add(x, y):
    if isinstance(x, int) and isinstance(y, int):
        return x + y
    if isinstance(x, int):
        x, y = y, x
    if isinstance(y, int):
        t = (x[0] + y,) + x[1:]
    else:
        t = tuple(a + b for a, b in zip(x, y))
    if t[1:] == _ZERO8[1:]:
        return t[0]
    return t


def zc_neg(x):
    if isinstance(x, int):
        return -x
    return tuple(-a for a in x)


def zc_scale_int(x, n: int):
    if n == 0:
        return 0
    if isinstance(x, int):
        return x * n
    return tuple(a * n for a in x)


def zc_mul(x, y):
    if isinstance(x, int):
        if isinstance(y, int):
            return x * y
        return zc_scale_int(y, x)
    if isinstance(y, int):
        return zc_scale_int(x, y)
    # full product in Z[zeta]: convolve then reduce
    c = [0] * 15
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                if b:
                    c[i + j] += a * b
    t = _reduce_poly(c)
    if t[1:] == _ZERO8[1:]:
        return t[0]
    return t


_ZETA_COMPLEX = cmath.exp(complex(0.0, cmath.pi / 12.0))
_ZETA_COMPLEX_POW = tuple(_ZETA_COMPLEX**k for k in range(8))


def zc_complex(z) -> complex:
    if isinstance(z, int):
        return complex(z)
    return sum(a * w for a, w in zip(z, _ZETA_COMPLEX_POW) if a)


def _content(t) -> int:
    g = 0
    for a in t:
        g = gcd(g, a)
        if g == 1:
            return 1
    return g


class CycRat:
    """Element of Q(zeta_24): 8 integer coordinates over a positive denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=_ZERO8, den: int = 1, _reduced: bool = False):
        if isinstance(num, int):
            num = (num,) + _ZERO8[1:]
        else:
            num = tuple(num)
            if len(num) != 8:
                raise ValueError("CycRat needs 8 coordinates")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if den < 0:
                num, den = tuple(-a for a in num), -den
            g = gcd(_content(num), den)
            if g > 1:
                num = tuple(a // g for a in num)
                den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("CycRat is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rational(cls, q) -> "CycRat":
        if isinstance(q, CycRat):
            return q
        q = Fraction(q)
        return cls((q.numerator,) + _ZERO8[1:], q.denominator, _reduced=True)

    @classmethod
    def root_of_unity(cls, num: int, den: int) -> "CycRat":
        """e(num/den) for den dividing 24."""
        if den <= 0 or 24 % den:
            raise ValueError(f"denominator {den} does not divide 24")
        return cls(ZETA_POW[(num * (24 // den)) % 24], 1, _reduced=True)

    @classmethod
    def zero(cls) -> "CycRat":
        return _CYC_ZERO

    @classmethod
    def one(cls) -> "CycRat":
        return _CYC_ONE

    @classmethod
    def from_zc(cls, z, scale=1) -> "CycRat":
        """scale * z for a term coefficient z and a rational scale."""
        scale = Fraction(scale)
        if isinstance(z, int):
            num = (z * scale.numerator,) + _ZERO8[1:]
        else:
            num = tuple(a * scale.numerator for a in z)
        return cls(num, scale.denominator)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num == _ZERO8

    def is_rational(self) -> bool:
        return self.num[1:] == _ZERO8[1:]

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "CycRat":
        if not isinstance(other, CycRat):
            other = CycRat.from_rational(other)
        d1, d2 = self.den, other.den
        g = gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        num = tuple(a * m1 + b * m2 for a, b in zip(self.num, other.num))
        return CycRat(num, d1 * m1)

    __radd__ = __add__

    def __neg__(self) -> "CycRat":
        return CycRat(tuple(-a for a in self.num), self.den, _reduced=True)

    def __sub__(self, other) -> "CycRat":
        if not isinstance(other, CycRat):
            other = CycRat.from_rational(other)
        return self + (-other)

    def __rsub__(self, other) -> "CycRat":
        return CycRat.from_rational(other) + (-self)

    def __mul__(self, other) -> "CycRat":
        if not isinstance(other, CycRat):
            other = CycRat.from_rational(other)
        num = zc_mul(self.num, other.num)
        if isinstance(num, int):
            num = (num,) + _ZERO8[1:]
        return CycRat(num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycRat":
        """Multiplicative inverse, by solving the 8x8 linear system x*self = 1."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_24)")
        if self.is_rational():
            q = 1 / self.as_fraction()
            return CycRat.from_rational(q)
        # columns: coordinates of zeta^j * self
        cols = []
        for j in range(8):
            prod = zc_mul(ZETA_POW[j], self.num)
            if isinstance(prod, int):
                prod = (prod,) + _ZERO8[1:]
            cols.append(prod)
        a = [[Fraction(cols[j][i]) for j in range(8)] for i in range(8)]
        rhs = [Fraction(self.den if i == 0 else 0) for i in range(8)]
        x = _solve_fraction_system(a, rhs)
        den = 1
        for v in x:
            den = den * v.denominator // gcd(den, v.denominator)
        num = tuple(int(v * den) for v in x)
        return CycRat(num, den)

    def __truediv__(self, other) -> "CycRat":
        if not isinstance(other, CycRat):
            other = CycRat.from_rational(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycRat":
        return CycRat.from_rational(other) * self.inverse()

    def __pow__(self, n: int) -> "CycRat":
        if n < 0:
            return self.inverse() ** (-n)
        out = _CYC_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- misc -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycRat.from_rational(other)
        if not isinstance(other, CycRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self) -> complex:
        return zc_complex(self.num) / self.den

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycRat({Fraction(self.num[0], self.den)})"
        terms = "; ".join(str(Fraction(a, self.den)) for a in self.num)
        return f"CycRat[{terms}]"

    def to_strings(self) -> list[str]:
        """Serialize as 8 'num/den' strings (golden-file format)."""
        return [str(Fraction(a, self.den)) for a in self.num]

    @classmethod
    def from_strings(cls, strings) -> "CycRat":
        fracs = [Fraction(s) for s in strings]
        den = 1
        for f in fracs:
            den = den * f.denominator // gcd(den, f.denominator)
        return cls(tuple(int(f * den) for f in fracs), den)


def _solve_fraction_system(a, rhs):
    """Gaussian elimination over Fraction; a is modified in place."""
    n = len(rhs)
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        rhs[col] *= inv
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                rhs[r] -= f * rhs[col]
    return rhs


_CYC_ZERO = CycRat(_ZERO8, 1, _reduced=True)
_CYC_ONE = CycRat((1,) + _ZERO8[1:], 1, _reduced=True)
