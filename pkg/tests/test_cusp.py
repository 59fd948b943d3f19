from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from arclink.cusp import (
    Cone,
    CuspError,
    CuspSequence,
    T_MATRIX,
    check_duality,
    cone_position,
    dual_construction,
    dual_sequence,
    enumerate_cusp_components,
    four_cone,
    monodromy,
    recover_sequence,
    recover_with_conjugator,
    reduce_mod_monodromy,
    v_sequence,
)
from arclink.hjcf import Mat2, mono_product

_sequences = st.lists(st.integers(2, 6), min_size=1, max_size=6).filter(
    lambda bs: any(b > 2 for b in bs)
)


# -- sequences and monodromy ---------------------------------------------------


def test_sequence_validation():
    with pytest.raises(CuspError):
        CuspSequence((2, 2))
    with pytest.raises(CuspError):
        CuspSequence((3, 1))
    with pytest.raises(CuspError):
        CuspSequence(())


def test_monodromy_examples():
    assert monodromy(CuspSequence((3,))) == Mat2(3, 1, -1, 0)
    m = monodromy(CuspSequence((3, 3, 3)))
    assert m == Mat2(21, 8, -8, -3)
    assert m.trace() == 18


def test_trace_at_least_three_exhaustive():
    for k in range(1, 6):
        for bs in product(range(2, 7), repeat=k):
            if all(b == 2 for b in bs):
                continue
            assert monodromy(CuspSequence(bs)).trace() >= 3


# -- the v fan -------------------------------------------------------------------


def test_v_sequence_examples():
    c = CuspSequence((3,))
    assert v_sequence(c, 0, 2) == [(0, 1), (1, 0), (3, -1)]
    c3 = CuspSequence((3, 3, 3))
    assert v_sequence(c3, 0, 3)[3] == (8, -3)  # v_3 = M v_0, second column


def test_v_sequence_matches_monodromy_columns():
    # M(b_1..b_i) = (v_{i+1}, v_i) as columns, for every prefix.
    c = CuspSequence((2, 3, 2, 5))
    vs = v_sequence(c, 0, c.k + 1)
    for i in range(1, c.k + 1):
        m = mono_product(c.b[:i])
        assert (m.p, m.r) == vs[i + 1]
        assert (m.q, m.s) == vs[i]


@given(_sequences)
@settings(max_examples=60)
def test_consecutive_determinants_one(bs):
    c = CuspSequence(tuple(bs))
    vs = v_sequence(c, -4, 2 * c.k + 4)
    for u, w in zip(vs, vs[1:]):
        assert w[0] * u[1] - w[1] * u[0] == 1


@given(_sequences)
@settings(max_examples=60)
def test_periodicity_under_monodromy(bs):
    c = CuspSequence(tuple(bs))
    m = monodromy(c)
    vs = v_sequence(c, -c.k, 2 * c.k)
    for i in range(-c.k, c.k):
        assert m.apply(vs[i + c.k]) == vs[i + 2 * c.k]


# -- cone positions ----------------------------------------------------------------


def test_cone_position_examples():
    c = CuspSequence((3,))
    p = cone_position((0, 5), c)
    assert p.cone is Cone.CONE and p.ray_index == 0 and p.coeffs == (5,)
    p = cone_position((1, 1), c)
    assert p.cone is Cone.CONE and p.sector_index == 0 and p.coeffs == (1, 1)
    assert cone_position((0, -1), c).cone is Cone.CONE_MINUS
    with pytest.raises(CuspError):
        cone_position((0, 0), c)


def test_dual_cone_contains_paper_basis():
    # u0 = (-1, 2) and u1 = (-1, 1) lie in the complementary cone.
    c = CuspSequence((3,))
    assert cone_position((-1, 2), c).cone is Cone.DUAL_CONE
    assert cone_position((-1, 1), c).cone is Cone.DUAL_CONE
    assert cone_position((1, -2), c).cone is Cone.DUAL_CONE_MINUS


def test_four_cones_partition():
    c = CuspSequence((2, 3))
    m = monodromy(c)
    counts = {cone: 0 for cone in Cone}
    for x in range(-6, 7):
        for y in range(-6, 7):
            if (x, y) != (0, 0):
                counts[four_cone(m, (x, y))] += 1
    assert all(n > 0 for n in counts.values())
    assert sum(counts.values()) == 13 * 13 - 1
    # Central symmetry swaps each cone with its negative.
    for x, y in [(1, 2), (5, -3), (-4, 1)]:
        a, b = four_cone(m, (x, y)), four_cone(m, (-x, -y))
        assert {a, b} in (
            {Cone.CONE, Cone.CONE_MINUS},
            {Cone.DUAL_CONE, Cone.DUAL_CONE_MINUS},
        )


def test_eigenray_sign_test_never_zero():
    # Lattice points never sit on an eigenray: the Z[sqrt(D)] signs are
    # always nonzero, even for large coordinates.
    rng = random.Random(5)
    c = CuspSequence((2, 2, 3, 4))
    m = monodromy(c)
    from arclink.cusp import _eigen_sign_pair

    for _ in range(400):
        w = (rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        if w == (0, 0):
            continue
        s1, s2 = _eigen_sign_pair(m, w)
        assert s1 != 0 and s2 != 0


# -- reduction and enumeration -------------------------------------------------------


def test_reduce_examples():
    c = CuspSequence((3,))
    rep, ell = reduce_mod_monodromy((1, 0), c)
    assert rep == (0, 1) and ell == -1
    rep, ell = reduce_mod_monodromy((0, 1), c)
    assert rep == (0, 1) and ell == 0
    c3 = CuspSequence((3, 3, 3))
    w = (monodromy(c3) ** 2).apply((1, 1))
    rep, ell = reduce_mod_monodromy(w, c3)
    assert rep == (1, 1) and ell == -2


def test_reduce_rejects_other_cones():
    c = CuspSequence((3,))
    with pytest.raises(CuspError):
        reduce_mod_monodromy((-1, 2), c)


@given(_sequences, st.integers(-5, 5))
@settings(max_examples=60, deadline=None)
def test_reduce_invariant_under_monodromy(bs, j):
    c = CuspSequence(tuple(bs))
    m = monodromy(c)
    w = (2, 1)  # in the open first quadrant, hence inside the cone
    assert cone_position(w, c).cone is Cone.CONE
    rep0, _ = reduce_mod_monodromy(w, c)
    rep, ell = reduce_mod_monodromy((m ** j).apply(w), c)
    assert rep == rep0
    assert (m ** ell).apply((m ** j).apply(w)) == rep
    # The representative lies in the fundamental sectors.
    pos = cone_position(rep, c)
    assert 0 <= pos.index_abs < c.k


def test_enumerate_examples():
    c = CuspSequence((3,))
    comps = enumerate_cusp_components(c, 1)
    assert [x.vector for x in comps] == [(0, 1)]
    comps = enumerate_cusp_components(c, 2)
    assert sorted(x.vector for x in comps) == [(0, 1), (0, 2), (1, 1)]


@given(_sequences, st.integers(1, 4))
@settings(max_examples=25, deadline=None)
def test_enumeration_monotone(bs, n):
    c = CuspSequence(tuple(bs))
    small = {x.vector for x in enumerate_cusp_components(c, n)}
    big = {x.vector for x in enumerate_cusp_components(c, n + 1)}
    assert small < big


def _brute_force_components(c: CuspSequence, bound: int) -> set:
    """Scan a box, keep cone points whose reduced mass fits the bound."""
    vs = v_sequence(c, 0, c.k)
    radius = bound * max(max(abs(v[0]), abs(v[1])) for v in vs)
    found = set()
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            if (x, y) == (0, 0):
                continue
            if cone_position((x, y), c).cone is not Cone.CONE:
                continue
            rep, _ = reduce_mod_monodromy((x, y), c)
            if sum(cone_position(rep, c).coeffs) <= bound:
                found.add(rep)
    return found


@pytest.mark.parametrize("bs,bound", [((3,), 3), ((2, 3), 2), ((3, 3, 3), 2), ((4,), 2)])
def test_enumeration_against_box_scan(bs, bound):
    c = CuspSequence(bs)
    enumerated = {x.vector for x in enumerate_cusp_components(c, bound)}
    assert enumerated == _brute_force_components(c, bound)


# -- duality ------------------------------------------------------------------------


def test_dual_examples():
    assert dual_sequence(CuspSequence((3, 3, 3))).b == (3, 3, 3)
    assert dual_sequence(CuspSequence((2, 3))).b == (4,)
    dual = dual_sequence(CuspSequence((2, 2, 3, 4)))
    assert dual.is_rotation_of(CuspSequence((5, 3, 2)))


def test_check_duality_examples():
    r = check_duality(CuspSequence((2, 3)))
    assert r.m == Mat2(5, 2, -3, -1)
    assert r.m_star == Mat2(4, 1, -1, 0)
    assert r.m * T_MATRIX == Mat2(-3, -1, 2, 1)
    assert r.ok
    r = check_duality(CuspSequence((3, 3, 3)))
    assert r.m * T_MATRIX == Mat2(-13, -5, 5, 2)
    assert r.ok and r.is_auto_dual()


def test_duality_exhaustive_small():
    for k in range(1, 7):
        for bs in product(range(2, 7), repeat=k):
            if all(b == 2 for b in bs):
                continue
            r = check_duality(CuspSequence(bs))
            assert r.t_identity_holds and r.traces_equal, bs


@given(_sequences)
@settings(max_examples=80)
def test_dual_is_involution(bs):
    c = CuspSequence(tuple(bs))
    assert dual_sequence(dual_sequence(c)).is_rotation_of(c)
    assert monodromy(dual_sequence(c)).trace() == monodromy(c).trace()


def test_dual_construction_rotates_to_big_last():
    rot, dual = dual_construction(CuspSequence((4, 2, 2)))
    assert rot.b[-1] >= 3
    assert CuspSequence(dual.b).is_rotation_of(dual_sequence(CuspSequence((4, 2, 2))))


# -- recovery --------------------------------------------------------------------------


def test_recover_examples():
    assert recover_sequence(Mat2(3, 1, -1, 0)).b == (3,)
    assert recover_sequence(Mat2(1, 1, 1, 2)).b == (3,)
    assert recover_sequence(Mat2(21, 8, -8, -3)).is_rotation_of(CuspSequence((3, 3, 3)))


def test_recover_validation():
    with pytest.raises(CuspError):
        recover_sequence(Mat2(1, 0, 0, 1))  # trace 2
    with pytest.raises(CuspError):
        recover_sequence(Mat2(2, 0, 0, 1))  # det 2


def test_recover_conjugated_matrices():
    c = CuspSequence((2, 3, 4))
    m = monodromy(c)
    conj = Mat2(2, 5, 1, 3)
    m2 = conj * m * conj.inverse()
    assert recover_sequence(m2).is_rotation_of(c)
    seq, p = recover_with_conjugator(m2)
    assert p * mono_product(seq.b) == m2 * p


def test_recover_roundtrip_500_random():
    rng = random.Random(12)
    done = 0
    while done < 500:
        k = rng.randint(1, 8)
        bs = tuple(rng.randint(2, 9) for _ in range(k))
        if all(b == 2 for b in bs):
            continue
        done += 1
        c = CuspSequence(bs)
        assert recover_sequence(monodromy(c)).is_rotation_of(c), bs


def test_reduce_huge_vector():
    # Entries around 10^6 still reduce exactly and land in the domain.
    c = CuspSequence((2, 3, 4))
    m = monodromy(c)
    w = (m ** 9).apply((2, 1))
    assert max(abs(w[0]), abs(w[1])) > 10**6
    rep, ell = reduce_mod_monodromy(w, c)
    assert (m ** -ell).apply(rep) == w
    rep0, _ = reduce_mod_monodromy((2, 1), c)
    assert rep == rep0


def test_recover_under_random_conjugation():
    # Recovery is conjugation-invariant: conjugate the monodromy by random
    # SL(2,Z) words and demand the same cyclic sequence back.
    rng = random.Random(77)
    gens = [Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1), Mat2(1, -1, 0, 1), Mat2(1, 0, -1, 1)]
    for _ in range(60):
        k = rng.randint(1, 5)
        bs = tuple(rng.randint(2, 6) for _ in range(k))
        if all(b == 2 for b in bs):
            continue
        c = CuspSequence(bs)
        conj = Mat2.identity()
        for _ in range(rng.randint(0, 6)):
            conj = conj * rng.choice(gens)
        m = conj * monodromy(c) * conj.inverse()
        assert recover_sequence(m).is_rotation_of(c), (bs, m)
        seq, p = recover_with_conjugator(m)
        assert p * mono_product(seq.b) == m * p


def test_cone_position_agrees_with_float_oracle():
    # Away from the eigenrays a float computation is decisive; the exact
    # classifier must agree wherever the float margin is clear.
    import math

    rng = random.Random(2024)
    c = CuspSequence((2, 3, 4))
    m = monodromy(c)
    tau = m.trace()
    disc = math.sqrt(tau * tau - 4)
    v1 = (2 * m.q, (m.s - m.p) + disc)
    v2p = (-2 * m.q, (m.p - m.s) + disc)

    def cross(u, w):
        return u[0] * w[1] - u[1] * w[0]

    checked = 0
    for _ in range(500):
        w = (rng.randint(-1000, 1000), rng.randint(-1000, 1000))
        if w == (0, 0):
            continue
        s1, s2 = cross(v1, w), cross(v2p, w)
        if abs(s1) < 1e-6 or abs(s2) < 1e-6:
            continue  # too close to an eigenray for floats
        checked += 1
        expected = {
            (True, False): Cone.CONE,
            (False, True): Cone.CONE_MINUS,
            (True, True): Cone.DUAL_CONE,
            (False, False): Cone.DUAL_CONE_MINUS,
        }[(s1 > 0, s2 > 0)]
        assert cone_position(w, c).cone is expected, w
    assert checked > 400
