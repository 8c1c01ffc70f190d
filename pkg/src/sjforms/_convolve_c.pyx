# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled convolution kernel for sparse truncated Fourier series.

Same algorithm and packing as _convolve_py; coefficients stay Python
objects (arbitrary-precision ints or 8-tuples), the compiled code removes
the interpreter overhead of the pairing loops.
"""

from .cyclotomic import zc_add, zc_mul

BACKEND = "cython"

DEF B_OFFSET = 2097152      # 1 << 21
DEF AC_SHIFT = 22
DEF A_SHIFT = 16


def pack_key(long long a, long long b, long long c):
    return ((a << A_SHIFT | c) << AC_SHIFT) + (b + B_OFFSET)


def unpack_key(long long p):
    cdef long long b = (p & ((1 << AC_SHIFT) - 1)) - B_OFFSET
    cdef long long ac = p >> AC_SHIFT
    return (ac >> A_SHIFT, b, ac & ((1 << A_SHIFT) - 1))


cdef list _groups(list keys):
    cdef list out = []
    cdef Py_ssize_t n = len(keys)
    cdef Py_ssize_t i = 0, j
    cdef long long ac
    while i < n:
        ac = <long long> keys[i] >> AC_SHIFT
        j = i + 1
        while j < n and (<long long> keys[j] >> AC_SHIFT) == ac:
            j += 1
        out.append((ac >> A_SHIFT, ac & ((1 << A_SHIFT) - 1), i, j))
        i = j
    return out


def mul_packed(list fkeys, list fvals, list gkeys, list gvals,
               long long amax, long long cmax):
    cdef dict out = {}
    cdef list gf = _groups(fkeys)
    cdef list gg = _groups(gkeys)
    cdef long long a1, c1, a2, c2, arem, crem, base, p0, key
    cdef Py_ssize_t fs, fe, gs, ge, i, j
    cdef object z1, z2, prod, cur
    cdef bint z1_int
    for fa in gf:
        a1 = fa[0]; c1 = fa[1]; fs = fa[2]; fe = fa[3]
        arem = amax - a1
        if arem < 0:
            continue
        crem = cmax - c1
        if crem < 0:
            continue
        for ga in gg:
            a2 = ga[0]
            if a2 > arem:
                break
            c2 = ga[1]
            if c2 > crem:
                continue
            gs = ga[2]; ge = ga[3]
            base = ((a1 + a2) << A_SHIFT | (c1 + c2)) << AC_SHIFT
            for i in range(fs, fe):
                z1 = fvals[i]
                p0 = base + ((<long long> fkeys[i]) & ((1 << AC_SHIFT) - 1))
                z1_int = type(z1) is int
                for j in range(gs, ge):
                    z2 = gvals[j]
                    if z1_int and type(z2) is int:
                        prod = z1 * z2
                    else:
                        prod = zc_mul(z1, z2)
                    key = p0 + ((<long long> gkeys[j]) & ((1 << AC_SHIFT) - 1)) - B_OFFSET
                    cur = out.get(key)
                    if cur is None:
                        out[key] = prod
                    else:
                        out[key] = zc_add(cur, prod)
    return out
