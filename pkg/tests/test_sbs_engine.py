import numpy as np
import pytest
from hypothesis import given, strategies as st

from symbreak import o3_geometry as geo
from symbreak import sbs_engine as se
from symbreak.errors import (InfiniteNormalizer, NotNested, NotPartialBreaking,
                             NotSymmetryBreaking, SymbolicGroup)

VERTEX = geo.vector([np.sqrt(3) / 2, 0.5, 0.0])
OCT_P = geo.l2([0, 0, 1, 0, 0])


def D(name, n=None):
    return geo.canonical_point_group(name, n)


def _same_set(A, B, tol=1e-8):
    if len(A) != len(B):
        return False
    return all(any(a.close_to(b, tol) for b in B) for a in A)


def _euclid(a, b):
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


# ---------------------------------------------------------------- full SBS

def test_d3_full_sbs():
    B = se.full_sbs(D("D3"), VERTEX)
    assert B.orbit_group.label == "D6h"
    objs = B.materialize()
    angles = [np.pi / 6 + k * np.pi / 3 for k in range(6)]
    assert _same_set(objs, [geo.vector([np.cos(t), np.sin(t), 0]) for t in angles])
    assert se.is_equivariant_sbs(B, D("D3"))
    assert se.degeneracy_full(B, D("D3")).value == 1


def test_full_sbs_rotated_input():
    g = geo.rz(0.37)
    S = D("D3").conjugated(g)
    B = se.full_sbs(S, VERTEX)
    assert B.object.close_to(geo.act(g, VERTEX))
    ref = se.full_sbs(D("D3"), VERTEX).materialize()
    assert _same_set(B.materialize(), [geo.act(g, x) for x in ref])


def test_c2_normalizer_is_symbolic():
    B = se.full_sbs(D("C2"))
    assert B.orbit_group.name == "Dinfh" and not B.is_finite
    with pytest.raises(SymbolicGroup):
        B.materialize()
    assert se.degeneracy_full(B, D("C2")).value == "infinite"
    for x in se.enumerate_or_sample(B, 1000, rng_seed=4):
        assert len(se.stabilizer_matrices(D("C2"), x)) == 1
        assert np.linalg.norm(x.vector[:2]) > 1e-3


def test_c1_full_sbs_is_singleton():
    B = se.full_sbs(D("C1"))
    assert len(B.materialize()) == 1


def test_full_sbs_rejects_symmetric_object():
    with pytest.raises(NotSymmetryBreaking):
        se.full_sbs(D("D3"), geo.vector([0, 0, 1]))


_EQUIVARIANCE = [("Cnv", 3), ("Cnv", 4), ("Dn", 3), ("Dn", 4), ("Dnd", 3), ("Dnh", 3),
                 ("Dnh", 4), ("T", None), ("Td", None), ("Th", None), ("O", None), ("Oh", None),
                 ("I", None), ("Ih", None), ("Cn", 3), ("S2n", 2), ("Cnh", 3), ("C1", None)]


@pytest.mark.parametrize("fam,k", _EQUIVARIANCE)
def test_algorithm1_equivariance(fam, k):
    rng = np.random.default_rng(99)
    S = D(fam, k)
    ref = se.full_sbs(S)
    ref_set = ref.finite_set()
    for _ in range(50):
        g = geo.random_rotation(rng)
        B = se.full_sbs(S.conjugated(g))
        assert B.object.close_to(geo.act(g, ref.object), 1e-8)
        if ref_set is None:
            assert not B.is_finite
            for m in geo.sample_many(ref.orbit_group, 5, 0):
                assert B.orbit_group.contains(g @ m @ g.T, 1e-8)
        else:
            assert _same_set(B.finite_set(), [geo.act(g, x) for x in ref_set])


# ---------------------------------------------------------------- equivariance checks

def test_naive_prism_is_not_equivariant():
    B, S = se.naive_prism_scheme()
    assert len(B.materialize()) == 6
    assert not se.is_equivariant_sbs(B, S)
    C = se.equivariant_completion(B, S)
    assert len(C.materialize()) == 12
    assert se.is_equivariant_sbs(C, S)
    assert se.degeneracy_full(C, S).value == 2


def test_partial_orbit_is_not_full_equivariant():
    S, K = D("D8"), D("D2")
    P = se.partial_sbs(S, K, OCT_P)
    assert se.is_equivariant_sbs(P, S, mode="partial", K=K)
    single = se.SBSpec(P.object, S, "partial")
    assert not se.is_equivariant_sbs(single, S, mode="full")


def test_two_disjoint_copies_have_degeneracy_two():
    S = D("D3")
    B = se.full_sbs(S, VERTEX)
    other = geo.vector([np.sqrt(3) / 2 * 0.5, 0.25, 0.0])
    twice = se.SBSpec(B.object, B.orbit_group, extra_seeds=(other,))
    assert se.degeneracy_full(twice, S).value == 2


# ---------------------------------------------------------------- partial SBS

def test_octagon_partial_sbs():
    S, K = D("D8"), D("D2")
    P = se.partial_sbs(S, K, OCT_P)
    assert P.orbit_group.label == "D8h" and P.orbit_group.order == 32
    objs = P.materialize()
    assert len(objs) == 4
    assert se.degeneracy_partial(P, S, K).value == 1


def test_batio3_partial_sbs():
    S = D("Oh")
    K = D("C4v").conjugated(np.array([[0.0, 0, 1], [1, 0, 0], [0, 1, 0]]))
    P = se.partial_sbs(S, K, geo.vector([1, 0, 0]))
    assert P.orbit_group.name == "Oh"
    axes = [geo.vector(s * e) for e in np.eye(3) for s in (1, -1)]
    assert _same_set(P.materialize(), axes)


def test_partial_with_k_equal_s_is_singleton():
    S = D("D4h")
    P = se.partial_sbs(S, S, geo.scalar(1.0))
    assert len(P.materialize()) == 1


def test_partial_rejects_too_symmetric_object():
    with pytest.raises(NotPartialBreaking):
        se.partial_sbs(D("D8"), D("D2"), geo.scalar(1.0))


def test_partial_rejects_unnested():
    with pytest.raises(NotNested):
        se.partial_sbs(D("D3"), D("C4"))


@pytest.mark.parametrize("S_name,K_name", [("D4h", "C4v"), ("Oh", "D4h"), ("Td", "S4"),
                                           ("D4", "C4"), ("D3", "C3"), ("D6h", "C6v")])
def test_default_partial_object_is_exact(S_name, K_name):
    S, K = D(S_name), D(K_name)
    P = se.partial_sbs(S, K)
    assert se.is_equivariant_sbs(P, S, mode="partial", K=K)
    for x in P.materialize():
        assert len(se.stabilizer_matrices(S, x)) == K.order


def test_no_default_object_when_l2_cannot_reach_k():
    # every l <= 2 object fixed by D3 is also fixed by the D6 rotations
    with pytest.raises(NotPartialBreaking):
        se.partial_sbs(D("D6h"), D("D3"))


# ---------------------------------------------------------------- generalized normalizer

def test_generalized_normalizer_k_equals_s():
    S = D("D4")
    assert se.generalized_normalizer(S, S).label == se.oriented_normalizer(S).label


def test_generalized_normalizer_oh_c4v():
    assert se.generalized_normalizer(D("Oh"), D("C4v")).name == "Oh"


def test_generalized_normalizer_octagon():
    N = se.generalized_normalizer(D("D8"), D("D2"))
    assert N.label == "D8h"


# ---------------------------------------------------------------- ideal partial symmetry

def test_octagon_ideal_partial_trace():
    res = se.ideal_partial_object_symmetry(D("D8"), D("D2"))
    assert res is not None and res.H.label == "D2h"
    tr = res.trace
    assert tr["N"].label == "D4h"
    Q = tr["quotient"].group
    assert Q.order == 4 and all(Q.power(x, 2) == Q.identity for x in range(4))
    C = tr["C"]
    assert C.order == 2
    coset = tr["quotient"].lift[[c for c in C.members if c != Q.identity][0]]
    N = tr["N_group"]
    assert any(np.allclose(N.labels[i], geo.mirror([0, 1, 0])) for i in coset)
    # the object the algorithm asks for gives an ideal partial SBS
    assert all(geo.act(h, OCT_P).close_to(OCT_P) for h in res.H.matrices)


def test_batio3_ideal_partial():
    res = se.ideal_partial_object_symmetry(D("Oh"), D("C4v"))
    assert res is not None
    assert all(geo.act(h, geo.vector([0, 0, 1])).close_to(geo.vector([0, 0, 1]))
               for h in res.H.matrices)


def test_ideal_partial_k_equals_s():
    res = se.ideal_partial_object_symmetry(D("D4"), D("D4"))
    assert res is not None and res.trace["Q2"].order == 1


def test_ideal_partial_infinite_normalizer():
    with pytest.raises(InfiniteNormalizer):
        se.ideal_partial_object_symmetry(D("C4"), D("C2"))


# ---------------------------------------------------------------- degeneracy

def test_vector_orbit_as_partial_sbs():
    S, K = D("D8"), D("D2")
    P = se.SBSpec(geo.vector([0.3, 0.7, 0.2]), D("D8h"), "partial")
    assert len(P.materialize()) == 32
    rep = se.degeneracy_partial(P, S, K)
    assert (rep.value, rep.orbit_count) == (8, 2)


def test_partial_degeneracy_with_trivial_k_is_full():
    S = D("D3")
    B = se.equivariant_completion(*se.naive_prism_scheme())
    assert se.degeneracy_partial(B, S, D("C1")).value == se.degeneracy_full(B, S).value == 2


def test_bounds():
    S = D("D3")
    assert se.degeneracy_bound(S, D("D6h")) == 1
    assert se.bound_hypothesis(S, D("D6h"))
    assert se.degeneracy_bound(S, S) == 4
    oct_S, oct_K = D("D8"), D("D2")
    M = se.generalized_normalizer(oct_S, oct_K)
    assert se.degeneracy_bound(oct_S, M, "partial", oct_K, oct_K) == 1
    assert se.bound_hypothesis(oct_S, M, "partial", oct_K)


@pytest.mark.parametrize("name", ["D3", "D4", "C3v", "D2d", "Td", "D4h", "D6h", "O"])
def test_bound_dominates_measured_degeneracy(name):
    S = D(name)
    N = se.oriented_normalizer(S)
    measured = se.degeneracy_full(se.full_sbs(S), S).value
    checked = 0
    for M in (N, S):
        if se.bound_hypothesis(S, M):
            assert se.degeneracy_bound(S, M) >= measured
            checked += 1
    assert checked >= 1


# ---------------------------------------------------------------- misaligned symmetry

def test_misaligned_k_gives_square():
    S = D("D8")
    K_rot = D("D2").conjugated(geo.rz(np.pi / 4))
    J = se.joint_symmetry(S, OCT_P, K_rot)
    assert J.label == "D4" and J.order == 8


# ---------------------------------------------------------------- loss

CORPUS_NAMES = ["C4", "C6", "D3", "D4", "D8", "D4h", "D6h", "D8h", "Oh", "Td"]


def test_loss_zero_on_orbit():
    S = D("D4h")
    act = se.vector_action(S)
    y = np.array([0.3, -0.2, 0.9])
    assert se.orbit_min_loss(S, act, y, y, _euclid) == 0.0
    for m in S.matrices:
        assert se.orbit_min_loss(S, act, m @ y, y, _euclid) == 0.0


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_loss_matches_brute_force(name, rng):
    S = D(name)
    act = se.vector_action(S)
    for _ in range(20):
        yp, yt = rng.normal(size=3), rng.normal(size=3)
        brute = min(_euclid(yp, m @ yt) for m in S.matrices)
        assert se.orbit_min_loss(S, act, yp, yt, _euclid) == pytest.approx(brute, rel=1e-9)


@given(name=st.sampled_from(CORPUS_NAMES),
       yp=st.lists(st.floats(-5, 5), min_size=3, max_size=3),
       yt=st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_loss_target_invariance(name, yp, yt):
    S = D(name)
    act = se.vector_action(S)
    base = se.orbit_min_loss(S, act, yp, yt, _euclid)
    for m in S.matrices:
        assert se.orbit_min_loss(S, act, yp, m @ np.asarray(yt), _euclid) == base


# ---------------------------------------------------------------- sampling and JSON

def test_enumerate_returns_whole_set():
    B = se.full_sbs(D("D3"), VERTEX)
    assert len(se.enumerate_or_sample(B, 10, 0)) == 6
    one = se.enumerate_or_sample(B, 1, 5)
    assert len(one) == 1 and one[0].close_to(se.enumerate_or_sample(B, 1, 5)[0], 0)


def test_sbspec_json_roundtrip():
    B = se.partial_sbs(D("D8"), D("D2"), OCT_P)
    C = se.SBSpec.from_json(B.to_json())
    assert _same_set(B.materialize(), C.materialize())
