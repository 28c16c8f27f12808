"""Acceptance criteria, one test per criterion.

Each test carries a ``criterion`` marker; conftest prints one PASS/FAIL line
per criterion at the end of the run.
"""
import time

import numpy as np
import pytest

from symbreak import group_core as gc
from symbreak import o3_geometry as geo
from symbreak import sbs_engine as se
from symbreak import verify_oracles as vo

VEC_TOL = 1e-8
COUNTEREXAMPLE_SECONDS = 60
TABLES_SECONDS = 120
ORACLE_SECONDS = 300

OCT_P = geo.l2([0, 0, 1, 0, 0])
BATIO3_K = np.array([[0.0, 0, 1], [1, 0, 0], [0, 1, 0]])  # C4v with its 4-fold along x


def D(name, n=None):
    return geo.canonical_point_group(name, n)


def _matches(A, B, tol=VEC_TOL):
    """Bijective match of two object lists within tol."""
    if len(A) != len(B):
        return False
    a = np.asarray([x.vector for x in A])
    b = np.asarray([x.vector for x in B])
    d = np.abs(a[:, None] - b[None]).max(axis=2)
    return bool((d.min(axis=1) <= tol).all() and (d.min(axis=0) <= tol).all())


def _closed_within(objs, mats, tol=VEC_TOL):
    vecs = np.asarray([o.vector for o in objs])
    for m in mats:
        moved = np.asarray([geo.act(m, o).vector for o in objs])
        if np.abs(moved[:, None] - vecs[None]).max(axis=2).min(axis=1).max() > tol:
            return False
    return True


# ------------------------------------------------------------------ 1

@pytest.mark.criterion(1, "counterexample: |G| = 1024, |S| = 256, partial orbit 512, "
                          "complement <a1b1, a2b2>, gKg^-1 claim for all g outside S, <= 60 s")
def test_criterion_1_counterexample():
    t0 = time.perf_counter()
    inst = vo.counterexample_instance()
    reports = {r.claim_id: r for r in vo.appendix_g_counterexample()}
    elapsed = time.perf_counter() - t0
    assert inst.G.order == 1024
    assert inst.S.order == 256 and reports["iii"].observed == 256
    assert reports["v"].observed["orbit"] == 512
    assert reports["ii"].observed == {"order": 4, "complement": True}
    assert reports["iv"].observed == 0
    assert all(r.passed for r in reports.values())
    assert elapsed <= COUNTEREXAMPLE_SECONDS


# ------------------------------------------------------------------ 2

@pytest.mark.criterion(2, "tables: normality, tabulated complements and None rows for n <= 8 "
                          "and T..Ih, zero mismatches, <= 120 s")
def test_criterion_2_tables():
    t0 = time.perf_counter()
    reports = vo.table_oracle(8)
    elapsed = time.perf_counter() - t0
    covered = {r.instance.split(" ")[0] for r in reports}
    for fam in geo.AXIAL:
        for k in range(2, 9):
            assert geo.display_name(fam, k) in covered
    assert {"T", "Td", "Th", "O", "Oh", "I", "Ih"} <= covered
    kinds = {r.claim_id for r in reports}
    assert {"table-complement", "table-none"} <= kinds
    assert [r.instance for r in reports if not r.passed] == []
    assert elapsed <= TABLES_SECONDS


# ------------------------------------------------------------------ 3

@pytest.mark.criterion(3, "D3: 6 vectors, one S-orbit, degeneracy 1, D6h-closed within 1e-8; "
                          "naive prism completion has degeneracy 2")
def test_criterion_3_d3():
    S = D("D3")
    B = se.full_sbs(S, geo.vector([np.sqrt(3) / 2, 0.5, 0.0]))
    objs = B.materialize()
    angles = np.pi / 6 + np.arange(6) * np.pi / 3
    assert _matches(objs, [geo.vector([np.cos(t), np.sin(t), 0.0]) for t in angles])
    rep = se.degeneracy_full(B, S)
    assert rep.orbit_count == 1 and rep.value == 1
    N = se.oriented_normalizer(S)
    assert N.label == "D6h"
    assert _closed_within(objs, N.matrices)
    assert se.is_equivariant_sbs(B, S)

    naive, S2 = se.naive_prism_scheme()
    assert not se.is_equivariant_sbs(naive, S2)
    assert se.degeneracy_full(se.equivariant_completion(naive, S2), S2).value == 2


# ------------------------------------------------------------------ 4

@pytest.mark.criterion(4, "octagon: ideal partial symmetry is D2h via N = D4h, Klein-four quotient, "
                          "C = <Y>; partial SBS degeneracy 1, N_G(S,K) = D8h of order 32",
                       deviation="set has 4 objects, not the stated 8: the stabilizer in D8h "
                                 "is D2h of order 8, so the orbit has 32/8 = 4 elements "
                                 "(literal 8 kept as a strict xfail)")
def test_criterion_4_octagon():
    S, K = D("D8"), D("D2")
    res = se.ideal_partial_object_symmetry(S, K)
    assert res is not None and res.H.label == "D2h"
    tr = res.trace
    assert tr["N"].label == "D4h"
    q = tr["quotient"]
    Q = q.group
    assert Q.order == 4
    X, Y = [x for x in range(4) if x != Q.identity][:2]
    assert Q.power(X, 2) == Q.power(Y, 2) == Q.power(Q.mul(X, Y), 2) == Q.identity
    C = tr["C"]
    assert C.order == 2
    y = [c for c in C.members if c != Q.identity][0]
    coset = [tr["N_group"].labels[i] for i in q.lift[y]]
    assert any(np.allclose(m, geo.mirror([0, 1, 0])) for m in coset)
    # Q2 = image of N' = N ∩ S, and C complements it
    assert tr["Q2"].order == 2 and gc.is_complement(Q, tr["Q2"], C)

    P = se.partial_sbs(S, K, OCT_P)
    NK = P.orbit_group
    assert NK.label == "D8h" and NK.order == 32
    assert se.generalized_normalizer(S, K).order == 32
    objs = P.materialize()
    assert len(objs) == NK.order // len(se.stabilizer_matrices(NK, P.object)) == 4
    assert se.degeneracy_partial(P, S, K).value == 1
    assert se.is_equivariant_sbs(P, S, mode="partial", K=K)


@pytest.mark.xfail(strict=True, reason="Stab_D8h((0,0,1,0,0)) = D2h has order 8, so the "
                                       "orbit has 32 / 8 = 4 elements, not 8")
def test_criterion_4_literal_eight_objects():
    P = se.partial_sbs(D("D8"), D("D2"), OCT_P)
    assert len(P.materialize()) == 8


# ------------------------------------------------------------------ 5

@pytest.mark.criterion(5, "BaTiO3: partial_sbs(Oh, C4v, vector) is the 6 axis unit vectors "
                          "within 1e-8 and N_G(S,K) = Oh")
def test_criterion_5_batio3():
    S = D("Oh")
    K = D("C4v").conjugated(BATIO3_K)
    P = se.partial_sbs(S, K, geo.vector([1.0, 0.0, 0.0]))
    axes = [geo.vector(s * e) for e in np.eye(3) for s in (1.0, -1.0)]
    assert _matches(P.materialize(), axes)
    NK = se.generalized_normalizer(S, K)
    assert NK.name == "Oh" and geo.same_group(NK, S)


# ------------------------------------------------------------------ 6

_FAMILIES = [(f, k) for f in geo.AXIAL for k in (3, 4)] + \
    [(f, None) for f in ("C1", "Ci", "Cs", "T", "Td", "Th", "O", "Oh", "I", "Ih")]


def _random_object(rng):
    return geo.IrrepObject.of((0, "odd", rng.normal(size=1)), (1, "odd", rng.normal(size=3)),
                              (1, "even", rng.normal(size=3)), (2, "even", rng.normal(size=5)),
                              (2, "odd", rng.normal(size=5)))


def _property_suites(rng):
    corpus = vo.oracle_corpus()
    # group axioms
    for G in corpus.values():
        assert gc.check_group_axioms(G)
    # orbit-stabilizer on random integer vectors
    for name in ("D4h", "Oh", "D6h", "Td", "C4"):
        P = D(name)
        for _ in range(20):
            x = geo.vector(rng.integers(-2, 3, size=3).astype(float))
            assert len(geo.object_orbit(P, x)) * geo.object_stabilizer(P, x).order == P.order
    # action composition and norm preservation, 1e-9
    for _ in range(2000):
        g, h = geo.random_rotation(rng), -geo.random_rotation(rng)
        x = _random_object(rng)
        assert np.abs(geo.act(g @ h, x).vector - geo.act(g, geo.act(h, x)).vector).max() <= 1e-9
        assert abs(np.linalg.norm(geo.act(g, x).vector) - np.linalg.norm(x.vector)) <= 1e-9
    # irrep orthogonality
    for l in (0, 1, 2):
        for parity in ("even", "odd"):
            for _ in range(20):
                g = geo.random_rotation(rng) * (1 if rng.integers(2) else -1)
                Dm = np.stack([geo.act(g, geo.IrrepObject.of((l, parity, e))).vector
                               for e in np.eye(2 * l + 1)], axis=1)
                assert np.abs(Dm.T @ Dm - np.eye(2 * l + 1)).max() <= 1e-9
    # full SBS equivariance, 50 rotations per family
    for fam, k in _FAMILIES:
        S = D(fam, k)
        ref = se.full_sbs(S)
        ref_set = ref.finite_set()
        for _ in range(50):
            g = geo.random_rotation(rng)
            B = se.full_sbs(S.conjugated(g))
            assert np.abs(B.object.vector - geo.act(g, ref.object).vector).max() <= VEC_TOL
            if ref_set is not None:
                assert _matches(B.finite_set(), [geo.act(g, x) for x in ref_set])


@pytest.mark.criterion(6, "theorem oracles with zero failures on the corpus (orders <= 48) and "
                          "property suites at stated tolerances, <= 300 s")
def test_criterion_6_oracles_and_properties():
    t0 = time.perf_counter()
    corpus = vo.oracle_corpus()
    assert max(G.order for G in corpus.values()) <= 48
    reports = vo.theorem_suite()
    kinds = {r.claim_id for r in reports}
    assert {"complement->ideal", "no-complement->no-ideal", "generalized-normalizer",
            "partial-complement<->ideal"} <= kinds
    assert [r.instance for r in reports if not r.passed] == []
    _property_suites(np.random.default_rng(2024))
    assert time.perf_counter() - t0 <= ORACLE_SECONDS


# ------------------------------------------------------------------ 7

@pytest.mark.criterion(7, "misaligned K on the octagon generates a D4 of order 8 strictly "
                          "containing both stabilizers")
def test_criterion_7_misaligned():
    S = D("D8")
    stab = se.stabilizer_matrices(S, OCT_P)
    K_rot = D("D2").conjugated(geo.rz(np.pi / 4))
    assert not geo.same_elements(stab, K_rot.matrices)
    J = se.joint_symmetry(S, OCT_P, K_rot)
    assert J.label == "D4" and J.order == 8
    assert all(J.contains(m) for m in stab) and all(J.contains(m) for m in K_rot.matrices)
    assert len(stab) < J.order and K_rot.order < J.order


# ------------------------------------------------------------------ 8

@pytest.mark.criterion(8, "orbit_min_loss is bit-identical under every y_true -> s y_true, "
                          "100 random instances per corpus group")
def test_criterion_8_loss_invariance():
    rng = np.random.default_rng(8)

    def dist(a, b):
        return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))

    for name in vo.oracle_corpus():
        S = D(name)
        act = se.vector_action(S)
        mats = S.matrices
        for _ in range(100):
            yp, yt = rng.normal(size=3), rng.normal(size=3)
            base = se.orbit_min_loss(S, act, yp, yt, dist)
            for m in mats:
                assert se.orbit_min_loss(S, act, yp, m @ yt, dist) == base
