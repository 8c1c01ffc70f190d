import random
from fractions import Fraction

import pytest

from sjforms import symplectic as sp
from sjforms import theta
from sjforms.cyclotomic import CycRat
from sjforms.groups import GroupId

TAU = ((0.25 + 1.3j, 0.05 + 0.4j), (0.05 + 0.4j, -0.3 + 1.5j))


def gl_embed(u):
    det = u[0][0] * u[1][1] - u[0][1] * u[1][0]
    assert det in (1, -1)
    uinv_t = ((u[1][1] * det, -u[1][0] * det), (-u[0][1] * det, u[0][0] * det))
    return sp.SymplecticMat.from_blocks(u, ((0, 0), (0, 0)), ((0, 0), (0, 0)),
                                        uinv_t)


def random_symplectic(rng, nfactors=6):
    mats = [sp.I4]
    factors = []
    for _ in range(nfactors):
        kind = rng.randrange(4)
        s = ((rng.randint(-2, 2), rng.randint(-2, 2)),)
        s = ((s[0][0], s[0][1]), (s[0][1], rng.randint(-2, 2)))
        if kind == 0:
            f = [sp.u_mat(s)]
        elif kind == 1:
            f = [sp.v_mat(s)]
        elif kind == 2:
            us = [((1, rng.randint(-2, 2)), (0, 1)), ((1, 0), (rng.randint(-2, 2), 1)),
                  ((0, 1), (-1, 0)), ((1, 0), (0, -1))]
            f = [gl_embed(rng.choice(us))]
        else:
            one = ((1, 0), (0, 1))
            neg = ((-1, 0), (0, -1))
            f = [sp.v_mat(neg), sp.u_mat(one), sp.v_mat(neg)]  # = J
        factors.extend(f)
        for m in f:
            mats.append(mats[-1] * m)
    return mats[-1], factors


def test_named_matrices():
    assert sp.K == sp.SymplecticMat([[0, 0, -1, 0], [0, 0, 0, -1],
                                     [1, 0, 0, 1], [0, 1, 1, 0]])
    # K agrees with the I-conjugate of M1 J up to the central sign
    i = sp.INV
    conj = i * (sp.M1 * sp.J) * i
    assert sp.K in (conj, sp.SymplecticMat([[-v for v in row] for row in conj.rows]))
    with pytest.raises(ValueError):
        sp.SymplecticMat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]])


def test_char_action_cocycle():
    rng = random.Random(1)
    chars = [(a, b, c, d) for a in (0, 1) for b in (0, 1)
             for c in (0, 1) for d in (0, 1)]
    for _ in range(50):
        m1, _ = random_symplectic(rng, 4)
        m2, _ = random_symplectic(rng, 4)
        for m in chars:
            lhs = sp.char_action(m1 * m2, m)
            rhs = sp.char_action(m1, sp.char_action(m2, m))
            assert lhs == rhs


def test_char_action_identity_and_m1():
    for m in ((0, 0, 0, 0), (1, 0, 1, 1), (0, 1, 1, 0)):
        assert sp.char_action(sp.I4, m) == m
    assert sp.char_action(sp.M1, (0, 0, 0, 0)) == (0, 0, 0, 0)
    # preimages under M1 of the X2-characteristics, paper-table order
    minv = sp.M1.inverse()
    got = [sp.char_action(minv, m)
           for m in ((0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (0, 0, 1, 1))]
    assert got == [(0, 0, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (1, 1, 1, 1)]


def test_phi_basics():
    for m in ((0, 0, 0, 0), (1, 1, 0, 1)):
        assert sp.phi_m(sp.I4, m) == 0
    # block diagonal with B = C = 0: every term contains B or C
    g = gl_embed(((1, 2), (0, 1)))
    assert sp.phi_m(g, (0, 0, 0, 0)) == 0


def test_decompose_triangular_basics():
    for m in (sp.I4, sp.M1, sp.M2, sp.M1SQ):
        factors = sp.decompose_triangular(m)
        assert all(f.is_block_triangular() for f in factors)
    factors = sp.decompose_triangular(sp.J)
    prod = factors[0]
    for f in factors[1:]:
        prod = prod * f
    assert prod == sp.J
    # K = J * M2 decomposes through the same machinery
    sp.decompose_triangular(sp.K)
    sp.decompose_triangular(sp.M3)


def test_decompose_random():
    rng = random.Random(2)
    for _ in range(40):
        m, _ = random_symplectic(rng)
        factors = sp.decompose_triangular(m)
        assert all(f.is_block_triangular() for f in factors)


def test_kappa_triangular_and_identity():
    assert sp.kappa_sq(sp.I4) == CycRat.one()
    assert sp.kappa_sq(gl_embed(((1, 0), (0, -1)))) == CycRat.from_rational(-1)
    assert sp.kappa_sq(sp.M1) == CycRat.one()


def test_kappa_cocycle_inverse():
    rng = random.Random(3)
    for _ in range(20):
        m, _ = random_symplectic(rng)
        minv = m.inverse()
        t0 = sp.char_action(minv, (0, 0, 0, 0), reduce=False)
        phase = 2 * sp.phi_m(m, t0)
        val = sp.kappa_sq(m) * sp.kappa_sq(minv) \
            * CycRat.root_of_unity(phase.numerator, phase.denominator)
        assert val == CycRat.one()


def test_kappa_decomposition_independent():
    rng = random.Random(4)
    for _ in range(25):
        m, factors = random_symplectic(rng)
        assert sp.kappa_sq(m) == sp.kappa_sq(m, factors=factors)


def _slash_numeric_check(chars, M, tol=1e-9):
    factor, out = sp.slash_theta_product(chars, M)
    t = len(chars) // 2
    mtau = M.acts_on(TAU)
    det = M.cocycle_det(TAU)
    lhs = det ** (-t)
    for m in chars:
        lhs *= theta.eval_theta_char(m, mtau)
    rhs = complex(factor)
    for n in out:
        rhs *= theta.eval_theta_char(n, TAU)
    assert abs(lhs - rhs) <= tol * max(abs(lhs), abs(rhs), 1e-20), (chars, M)


def test_slash_identity():
    factor, out = sp.slash_theta_product([(0, 0, 0, 0), (1, 0, 0, 1)], sp.I4)
    assert factor == CycRat.one()
    assert out == ((0, 0, 0, 0), (1, 0, 0, 1))


def test_slash_rejects_odd_length():
    with pytest.raises(ValueError):
        sp.slash_theta_product([(0, 0, 0, 0)], sp.M1)


def test_slash_numeric_against_defining_sums():
    reps = [sp.M1, sp.M1SQ, sp.M2, sp.M3, sp.K, sp.J]
    char_sets = [
        [(0, 0, 0, 0)] * 2,
        [(0, 0, 0, 1)] * 4,
        [(0, 1, 0, 0), (0, 1, 1, 0), (1, 0, 0, 0), (1, 0, 0, 1)],
        [(1, 1, 1, 1)] * 2,
    ]
    for M in reps:
        for chars in char_sets:
            _slash_numeric_check(chars, M)


def test_slash_numeric_random_matrices():
    rng = random.Random(5)
    for _ in range(6):
        m, _ = random_symplectic(rng, 5)
        _slash_numeric_check([(0, 0, 0, 0), (0, 0, 1, 1)], m)
        _slash_numeric_check([(1, 1, 1, 1), (0, 1, 1, 0)], m)


def test_slash_m2_matches_translation():
    # upper-unipotent slash is exactly tau -> tau + S0 on series
    chars = [(0, 1, 0, 0), (1, 1, 1, 1)]
    N = 3
    factor, out = sp.slash_theta_product(chars, sp.M2)
    series = theta.theta_const(chars[0], N) * theta.theta_const(chars[1], N)
    lhs = series.translate(((0, 1), (1, 0)))
    rhs = (theta.theta_const(out[0], N) * theta.theta_const(out[1], N)).scale_by(factor)
    assert lhs == rhs


def test_slash_lattice_J():
    from sjforms import lattices

    c, dual, s = sp.slash_lattice_J(lattices.A2)
    assert c == CycRat.from_rational(Fraction(-1, 3))
    assert s == 3
    c6, dual6, s6 = sp.slash_lattice_J(lattices.E6)
    assert c6 == CycRat.from_rational(Fraction(-1, 3))
    assert dual6.entries == lattices.E6S.entries and s6 == 3
    c6s, dual6s, s6s = sp.slash_lattice_J(lattices.E6S)
    assert c6s == CycRat.from_rational(Fraction(-1, 243))
    assert dual6s.entries == lattices.E6.entries and s6s == 3
    c8, dual8, s8 = sp.slash_lattice_J(lattices.E8)
    assert c8 == CycRat.one() and s8 == 1 and dual8.det == 1
    # the inverse Gram presents an isometric copy: same theta expansion
    assert theta.theta_lattice(dual8, degree=2, N=2) == \
        theta.theta_lattice(lattices.E8, degree=2, N=2)


def test_slash_lattice_J_numeric():
    # theta_A2 |_1 [J] = -(1/3) theta_A2(tau/3), checked at a point
    import cmath

    c, dual, s = sp.slash_lattice_J(__import__("sjforms.lattices", fromlist=["A2"]).A2)
    jtau = sp.J.acts_on(TAU)
    det = sp.J.cocycle_det(TAU)
    lhs = det ** (-1) * theta.eval_lattice("a2", jtau)
    scaled = tuple(tuple(v / s for v in row) for row in TAU)
    rhs = complex(c) * theta.eval_lattice("a2", scaled)
    assert abs(lhs - rhs) < 1e-9 * abs(rhs)


def test_coset_reps():
    assert sp.coset_reps(GroupId.SP4) == [sp.I4]
    assert sp.coset_reps(GroupId.GAMMA0_2) == [sp.I4, sp.M1]
    assert sp.coset_reps(GroupId.GAMMA0_4_PSI) == [sp.I4, sp.M1, sp.M1SQ]
    assert sp.coset_reps(GroupId.GAMMA00_2_PSI) == [sp.I4, sp.M1, sp.M2, sp.M3]
    assert sp.coset_reps(GroupId.GAMMA0_3_PSI) == [sp.I4, sp.K]


def test_rightrep_audit():
    for p in (2, 3):
        reps = sp.rightrep_representatives(p)
        assert len(reps) == p**3 + p**2 + p + 1
        assert len({r.rows for r in reps}) == len(reps)
