"""Pure-Python fallback for the sparse-series convolution kernel.

Terms are packed as ((a << 16 | c) << 22) + (b + B_OFFSET) so that sorting
by packed key groups terms by (a, c) with b contiguous inside a group.
Coefficients are Z[zeta_24] values: plain ints or 8-tuples of ints.
"""

from .cyclotomic import zc_add, zc_mul

B_OFFSET = 1 << 21
AC_SHIFT = 22
A_SHIFT = 16
BACKEND = "python"


def pack_key(a: int, b: int, c: int) -> int:
    return ((a << A_SHIFT | c) << AC_SHIFT) + (b + B_OFFSET)


def unpack_key(p: int):
    b = (p & ((1 << AC_SHIFT) - 1)) - B_OFFSET
    ac = p >> AC_SHIFT
    return (ac >> A_SHIFT, b, ac & ((1 << A_SHIFT) - 1))


def _groups(keys):
    """Group boundaries [(a, c, start, end)] of a packed-key sorted list."""
    out = []
    n = len(keys)
    i = 0
    while i < n:
        ac = keys[i] >> AC_SHIFT
        j = i + 1
        while j < n and keys[j] >> AC_SHIFT == ac:
            j += 1
        out.append((ac >> A_SHIFT, ac & ((1 << A_SHIFT) - 1), i, j))
        i = j
    return out


def mul_packed(fkeys, fvals, gkeys, gvals, amax, cmax):
    """Truncated product of two packed term lists; returns dict packed->zc.

    Both key lists must be sorted ascending.  Terms of the product with
    a > amax or c > cmax are never formed.
    """
    out = {}
    get = out.get
    gf = _groups(fkeys)
    gg = _groups(gkeys)
    for a1, c1, fs, fe in gf:
        arem = amax - a1
        if arem < 0:
            continue
        crem = cmax - c1
        if crem < 0:
            continue
        for a2, c2, gs, ge in gg:
            if a2 > arem:
                break
            if c2 > crem:
                continue
            base = ((a1 + a2) << A_SHIFT | (c1 + c2)) << AC_SHIFT
            for i in range(fs, fe):
                z1 = fvals[i]
                p0 = base + (fkeys[i] & ((1 << AC_SHIFT) - 1))
                z1_int = type(z1) is int
                for j in range(gs, ge):
                    z2 = gvals[j]
                    if z1_int and type(z2) is int:
                        prod = z1 * z2
                    else:
                        prod = zc_mul(z1, z2)
                    key = p0 + (gkeys[j] & ((1 << AC_SHIFT) - 1)) - B_OFFSET
                    cur = get(key)
                    if cur is None:
                        out[key] = prod
                    else:
                        out[key] = zc_add(cur, prod)
    return out
