"""Equivariant symmetry breaking sets.

An SBS is stored as a seed object plus the group whose orbit of the seed is
the set.  Finite orbit groups are materialized on demand; symbolic ones
(Dinfh, O3, ...) are sampled unless the seed happens to have a finite orbit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, Union

import numpy as np

from . import group_core as gc
from . import o3_geometry as geo
from . import pointgroup_tables as pt
from .errors import (
    GroupNotClosed,
    HypothesisUnmet,
    InfiniteNormalizer,
    NotNested,
    NotPartialBreaking,
    NotPartialSBS,
    NotSymmetryBreaking,
    SymbolicGroup,
)
from .o3_geometry import IrrepObject, PointGroup

OBJECT_TOL = geo.OBJECT_TOL

# connected part (as generators) and component representatives, local frame
_CONTINUOUS = {
    "Cinf": ([geo.rz(1.0)], [geo.IDENTITY]),
    "Cinfv": ([geo.rz(1.0)], [geo.IDENTITY, geo.SIGMA_X]),
    "Cinfh": ([geo.rz(1.0)], [geo.IDENTITY, geo.SIGMA_H]),
    "Dinf": ([geo.rz(1.0)], [geo.IDENTITY, geo.rx(np.pi)]),
    "Dinfh": ([geo.rz(1.0)], [geo.IDENTITY, geo.rx(np.pi), geo.SIGMA_H, geo.rx(np.pi) @ geo.SIGMA_H]),
    "SO3": ([geo.rz(1.0), geo.rx(1.0)], [geo.IDENTITY]),
    "O3": ([geo.rz(1.0), geo.rx(1.0)], [geo.IDENTITY, geo.INVERSION]),
}
_CONTINUOUS.update({"SO2": _CONTINUOUS["Cinf"], "O2": _CONTINUOUS["Dinf"],
                    "K": _CONTINUOUS["SO3"], "Kh": _CONTINUOUS["O3"]})


# ------------------------------------------------------------- object sets

def _dedupe(objs: Sequence[IrrepObject], tol: float = OBJECT_TOL) -> list[IrrepObject]:
    out: list[IrrepObject] = []
    vecs: list[np.ndarray] = []
    for o in objs:
        v = o.vector
        if vecs and (np.abs(np.asarray(vecs) - v).max(axis=1) <= tol).any():
            continue
        out.append(o)
        vecs.append(v)
    return out


def _index_in(objs: Sequence[IrrepObject], x: IrrepObject, tol: float = OBJECT_TOL) -> Optional[int]:
    for i, o in enumerate(objs):
        if o.close_to(x, tol):
            return i
    return None


def _symbolic_orbit(N: PointGroup, obj: IrrepObject) -> Optional[list[IrrepObject]]:
    """Finite orbit under a symbolic group, or None when it is a continuum."""
    cont, reps = _CONTINUOUS[N.name]
    g = N.orientation
    for c in cont:
        if not geo.act(g @ c @ g.T, obj).close_to(obj):
            return None
    return _dedupe([geo.act(g @ r @ g.T, obj) for r in reps])


def stabilizer_matrices(P: PointGroup, obj: IrrepObject, tol: float = OBJECT_TOL) -> np.ndarray:
    mats = P.matrices
    keep = [i for i, m in enumerate(mats) if geo.act(m, obj).close_to(obj, tol)]
    return mats[keep]


def _subset(A: np.ndarray, P: PointGroup) -> bool:
    return all(P.contains(m) for m in A)


# -------------------------------------------------------------------- SBSpec

@dataclass(frozen=True)
class SBSpec:
    """(object, orbit group) pair; the set is the orbit of the object."""

    object: IrrepObject
    orbit_group: PointGroup
    kind: str = "full"
    extra_seeds: tuple = ()

    @property
    def seeds(self) -> tuple:
        return (self.object,) + tuple(self.extra_seeds)

    def finite_set(self) -> Optional[list[IrrepObject]]:
        N = self.orbit_group
        parts: list[IrrepObject] = []
        for seed in self.seeds:
            if N.symbolic:
                orb = _symbolic_orbit(N, seed)
                if orb is None:
                    return None
            else:
                orb = [geo.act(m, seed) for m in N.matrices]
            parts.extend(orb)
        return _dedupe(parts)

    @property
    def is_finite(self) -> bool:
        return self.finite_set() is not None

    def materialize(self) -> list[IrrepObject]:
        out = self.finite_set()
        if out is None:
            raise SymbolicGroup(f"orbit under {self.orbit_group.name} is infinite")
        return out

    def to_json(self) -> dict:
        out = {"object": self.object.to_json(), "orbit_group": self.orbit_group.to_json(),
               "kind": self.kind}
        if self.extra_seeds:
            out["extra_seeds"] = [s.to_json() for s in self.extra_seeds]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SBSpec":
        g = data["orbit_group"]
        N = PointGroup(np.asarray(g["orientation"], dtype=float).reshape(3, 3), g["name"], g.get("n"))
        extra = tuple(IrrepObject.from_json(s) for s in data.get("extra_seeds", []))
        return cls(IrrepObject.from_json(data["object"]), N, data.get("kind", "full"), extra)


@dataclass(frozen=True)
class DegeneracyReport:
    value: Union[int, str]
    orbit_count: Optional[int]
    bound: Optional[int] = None
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return {"value": self.value, "orbit_count": self.orbit_count,
                "bound": self.bound, "witness": self.witness}


# ---------------------------------------------------------- normalizers

def oriented_normalizer(S: PointGroup) -> PointGroup:
    """N_O(3)(S) from the table, carried into S's frame."""
    orient, N = pt.normalizer_of(S.name, S.n)
    return PointGroup(S.orientation @ N.orientation, N.name, N.n)


def _intersect(A: PointGroup, B: PointGroup) -> np.ndarray:
    if A.symbolic and B.symbolic:
        raise InfiniteNormalizer(f"{A.name} ∩ {B.name} of two symbolic groups is not supported")
    if A.symbolic:
        A, B = B, A
    return np.asarray([m for m in A.matrices if B.contains(m)])


def _product(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    seen: dict = {}
    for a in A:
        for b in B:
            m = a @ b
            seen.setdefault(gc.matrix_key(m), m)
    mats = np.asarray(list(seen.values()))
    if geo.close_matrices(mats, max_order=4 * len(mats)).order != len(mats):
        raise GroupNotClosed("S·N is not a group")
    return mats


def _check_nested(S: PointGroup, K: PointGroup) -> None:
    if S.symbolic or K.symbolic:
        raise NotNested("K and S must both be finite")
    if not _subset(K.matrices, S):
        raise NotNested(f"{K.label} is not a subgroup of {S.label}")


def _local(P: PointGroup, g: np.ndarray) -> PointGroup:
    """P seen in the frame whose orientation is g."""
    return P.conjugated(np.asarray(g).T)


def _normalizer_pair(S: PointGroup, K: PointGroup):
    """(N1, N2) in the frame of S."""
    g = S.orientation
    Sl = PointGroup(np.eye(3), S.name, S.n)
    return oriented_normalizer(Sl), oriented_normalizer(_local(K, g))


def generalized_normalizer(S: PointGroup, K: PointGroup) -> PointGroup:
    """N_G(S, K) = S (N_G(S) ∩ N_G(K)), identified and in world frame."""
    _check_nested(S, K)
    if K.order in (1, S.order):
        return oriented_normalizer(S)
    N1, N2 = _normalizer_pair(S, K)
    Sl = PointGroup(np.eye(3), S.name, S.n)
    mats = _product(Sl.matrices, _intersect(N1, N2))
    return geo.identify_point_group(mats).conjugated(S.orientation)


# ------------------------------------------------------------ full SBS

def full_sbs(S: PointGroup, b: Optional[IrrepObject] = None) -> SBSpec:
    """Full SBS (g·b, g·N) with N the tabulated normalizer of S.

    ``b`` lives in the canonical frame of S; by default the tabulated
    breaking object is used.
    """
    if b is None:
        b = pt.canonical_breaking_object(S.name, S.n)
    obj = geo.act(S.orientation, b)
    if not S.symbolic and len(stabilizer_matrices(S, obj)) > 1:
        raise NotSymmetryBreaking(f"object is fixed by part of {S.label}")
    return SBSpec(obj, oriented_normalizer(S), "full")


# ------------------------------------------- ideal partial object symmetry

@dataclass(frozen=True)
class IdealPartialResult:
    H: PointGroup
    K: PointGroup
    trace: dict = field(default_factory=dict, compare=False, repr=False)


def _materialize_by_presentation(P: PointGroup) -> gc.FiniteGroup:
    """Elements of P ordered by closing its presentation generators."""
    try:
        G, _ = pt.realize_presentation(P.name, P.n)
    except Exception:
        return P.group
    g = P.orientation
    return gc.FiniteGroup(G.compose, [g @ m @ g.T for m in G.labels], key=gc.matrix_key)


def _indices(G: gc.FiniteGroup, mats) -> gc.Subgroup:
    idx = [G.index_of(m) for m in mats]
    if any(i is None for i in idx):
        raise NotNested("matrices are not all inside the ambient group")
    return G.subgroup(idx)


def ideal_partial_object_symmetry(S: PointGroup, K: PointGroup) -> Optional[IdealPartialResult]:
    """The symmetry H an object needs for an ideal partial SBS.

    Returns None when N_S(K)/K has no complement.  The trace records the
    intermediate N, N', Q1, Q2 and C.
    """
    _check_nested(S, K)
    gS = S.orientation
    N1, N2 = _normalizer_pair(S, K)
    if N1.symbolic or N2.symbolic:
        raise InfiniteNormalizer(f"normalizer {N1.name if N1.symbolic else N2.name} is infinite")
    Sl = PointGroup(np.eye(3), S.name, S.n)
    Kl = _local(K, gS)
    Npg = geo.identify_point_group(_intersect(N1, N2))
    Ngrp = _materialize_by_presentation(Npg)
    Np = _indices(Ngrp, _intersect(Sl, N2))
    Ks = _indices(Ngrp, Kl.matrices)
    q = gc.quotient(Ngrp, Ks)
    Q2 = q.group.subgroup(int(q.project[i]) for i in Np.members)
    C = gc.find_complement(q.group, Q2)
    trace = {"N": Npg.conjugated(gS), "N_group": Ngrp, "N_prime": Np, "K_sub": Ks,
             "quotient": q, "Q2": Q2, "C": C}
    if C is None:
        return None
    Hsub = q.lift_subgroup(Ngrp, C)
    H = geo.identify_point_group([Ngrp.labels[i] for i in Hsub.members])
    return IdealPartialResult(H.conjugated(gS), K, trace)


# ------------------------------------------------------------ partial SBS

def _default_partial_object(S: PointGroup, K: PointGroup) -> IrrepObject:
    """An object in the S frame whose S-stabilizer is exactly K."""
    Sl = PointGroup(np.eye(3), S.name, S.n)
    Kl = _local(K, S.orientation)
    fixer_sets = []
    try:
        res = ideal_partial_object_symmetry(S, K)
    except InfiniteNormalizer:
        res = None
    if res is not None:
        fixer_sets.append(_local(res.H, S.orientation).matrices)
    fixer_sets.append(Kl.matrices)
    for fixers in fixer_sets:
        for l, p, c in pt._SEEDS + [(0, "even", (1.0,))]:
            cand = pt._fixed_projection(fixers, IrrepObject.of((l, p, c)))
            if cand is None:
                continue
            stab = stabilizer_matrices(Sl, cand)
            if geo.same_elements(stab, Kl.matrices):
                return cand
    raise NotPartialBreaking(f"no default object with stabilizer {K.label} in {S.label}")


def _stabilizer_below_conjugate(S: PointGroup, K: PointGroup, obj: IrrepObject) -> bool:
    stab = stabilizer_matrices(S, obj)
    for s in S.matrices:
        Kc = K.conjugated(s)
        if _subset(stab, Kc):
            return True
    return False


def partial_sbs(S: PointGroup, K: PointGroup, p: Optional[IrrepObject] = None) -> SBSpec:
    """Partial SBS (g_S·p, N_G(S, K)).

    ``p`` lives in the canonical frame of S.  K = 1 is full symmetry
    breaking and K = S yields a singleton set for a fully symmetric p.
    """
    _check_nested(S, K)
    if p is None:
        p = _default_partial_object(S, K)
    obj = geo.act(S.orientation, p)
    if not _stabilizer_below_conjugate(S, K, obj):
        raise NotPartialBreaking(f"Stab_S(p) is not inside any conjugate of {K.label}")
    return SBSpec(obj, generalized_normalizer(S, K), "partial")


# --------------------------------------------------------- set predicates

def _s_orbits(S: PointGroup, objs: Sequence[IrrepObject]) -> list[list[int]]:
    label = [-1] * len(objs)
    orbits: list[list[int]] = []
    mats = S.matrices
    for i, o in enumerate(objs):
        if label[i] >= 0:
            continue
        members = []
        for m in mats:
            j = _index_in(objs, geo.act(m, o))
            if j is not None and label[j] < 0:
                label[j] = len(orbits)
                members.append(j)
        orbits.append(sorted(members))
    return orbits


def _closed_under(objs: Sequence[IrrepObject], mats: np.ndarray) -> bool:
    return all(_index_in(objs, geo.act(m, o)) is not None for m in mats for o in objs)


def is_equivariant_sbs(B: SBSpec, S: PointGroup, mode: str = "full",
                       K: Optional[PointGroup] = None) -> bool:
    """Setwise N-closure plus the free (full) or partial stabilizer condition."""
    objs = B.materialize()
    if mode == "full":
        N = oriented_normalizer(S)
    else:
        if K is None:
            raise NotNested("partial mode needs K")
        N = generalized_normalizer(S, K)
    if N.symbolic:
        raise SymbolicGroup(f"cannot materialize {N.name}")
    if not _closed_under(objs, N.matrices):
        return False
    for o in objs:
        if mode == "full":
            if len(stabilizer_matrices(S, o)) != 1:
                return False
        elif not _stabilizer_below_conjugate(S, K, o):
            return False
    return True


def equivariant_completion(B: SBSpec, S: PointGroup) -> SBSpec:
    """The same seeds closed under N_G(S)."""
    return SBSpec(B.object, oriented_normalizer(S), B.kind, B.extra_seeds)


def joint_symmetry(S: PointGroup, obj: IrrepObject, K_target: PointGroup) -> PointGroup:
    """Group generated by Stab_S(obj) together with a target stabilizer."""
    mats = list(stabilizer_matrices(S, obj)) + list(K_target.matrices)
    return geo.identify_point_group(geo.close_matrices(mats))


# --------------------------------------------------------------- degeneracy

def degeneracy_full(B: SBSpec, S: PointGroup) -> DegeneracyReport:
    """|B/S|: the number of S-orbits in the set."""
    objs = B.finite_set()
    if objs is None:
        return DegeneracyReport("infinite", None)
    n = len(_s_orbits(S, objs))
    return DegeneracyReport(n, n)


def degeneracy_partial(P: SBSpec, S: PointGroup, K: PointGroup) -> DegeneracyReport:
    """Sum over S-orbits of |K| / |Stab_S(p)| for a representative inside K."""
    _check_nested(S, K)
    objs = P.finite_set()
    if objs is None:
        return DegeneracyReport("infinite", None)
    orbits = _s_orbits(S, objs)
    total = 0
    for orb in orbits:
        for i in orb:
            stab = stabilizer_matrices(S, objs[i])
            if _subset(stab, K):
                total += K.order // len(stab)
                break
        else:
            raise NotPartialSBS("an S-orbit has no representative with stabilizer inside K")
    return DegeneracyReport(total, len(orbits))


def _ambient(M: PointGroup, *subs: PointGroup) -> tuple[gc.FiniteGroup, list[gc.Subgroup]]:
    G = M.group
    out = []
    for P in subs:
        idx = [G.index_of(m) for m in P.matrices]
        if any(i is None for i in idx):
            raise HypothesisUnmet(f"{P.label} is not inside {M.label}")
        out.append(G.subgroup(idx))
    return G, out


def degeneracy_bound(S: PointGroup, M: PointGroup, mode: str = "full",
                     K: Optional[PointGroup] = None, K_prime: Optional[PointGroup] = None) -> int:
    """|N_G(S)/M| (full) or |K/K'|·|N_G(S,K)/M| (partial)."""
    if M.symbolic or S.symbolic:
        raise HypothesisUnmet("bounds need finite S and M")
    if not _subset(S.matrices, M):
        raise HypothesisUnmet(f"{S.label} is not inside {M.label}")
    if mode == "full":
        N = oriented_normalizer(S)
        if N.symbolic or not _subset(M.matrices, N):
            raise HypothesisUnmet("M must sit inside a finite N_G(S)")
        return N.order // M.order
    if K is None or K_prime is None:
        raise HypothesisUnmet("partial bounds need K and K'")
    if not (_subset(K_prime.matrices, K) and _subset(K.matrices, S)):
        raise HypothesisUnmet("need K' <= K <= S")
    NK = generalized_normalizer(S, K)
    NKp = generalized_normalizer(S, K_prime)
    if NK.symbolic or NKp.symbolic or not (_subset(M.matrices, NK) and _subset(M.matrices, NKp)):
        raise HypothesisUnmet("M must sit inside N_G(S,K) ∩ N_G(S,K')")
    return (K.order // K_prime.order) * (NK.order // M.order)


def bound_hypothesis(S: PointGroup, M: PointGroup, mode: str = "full",
                     K_prime: Optional[PointGroup] = None) -> bool:
    """Complement hypothesis behind degeneracy_bound.

    full: S has a complement in M.  partial: N_S(K')/K' has a complement
    in N_M(K')/K'.
    """
    if mode == "full":
        G, (Ss,) = _ambient(M, S)
        return gc.find_complement(G, Ss) is not None
    G, (Ss, Kp) = _ambient(M, S, K_prime)
    NM = gc.normalizer(G, Kp)
    NS = gc.intersection(NM, Ss)
    sub, mem = gc.as_group(NM)
    local = {int(g): i for i, g in enumerate(mem)}
    q = gc.quotient(sub, sub.subgroup(local[g] for g in Kp.members))
    Q2 = q.group.subgroup(int(q.project[local[g]]) for g in NS.members)
    return gc.find_complement(q.group, Q2) is not None


# ----------------------------------------------------------- loss, sampling

def _stable(x: float) -> float:
    """Round to 32 significant bits so float drift below that cannot leak out."""
    if abs(x) < 1e-12:
        return 0.0
    m, e = np.frexp(x)
    return float(np.ldexp(np.round(m * 2.0 ** 32) / 2.0 ** 32, e))


def orbit_min_loss(S: PointGroup, act: gc.GroupAction, y_pred: Any, y_true: Any,
                   dist: Callable[[Any, Any], float]) -> float:
    """min over s in S of dist(y_pred, s·y_true), by enumeration.

    The minimum is rounded to 32 significant bits, which makes the value
    identical when y_true is replaced by any s·y_true.
    """
    best = min(float(dist(y_pred, act.apply(i, y_true))) for i in range(S.order))
    return _stable(best)


def vector_action(S: PointGroup) -> gc.GroupAction:
    """Action of S's element indices on plain 3-vectors."""
    mats = S.matrices
    return gc.GroupAction(apply=lambda i, v: mats[i] @ np.asarray(v, dtype=float),
                          eq=lambda a, b: bool(np.allclose(a, b, atol=OBJECT_TOL)),
                          key=gc.matrix_key)


def enumerate_or_sample(B: SBSpec, count: int, rng_seed: int = 0) -> list[IrrepObject]:
    """The whole set when it fits in ``count``, else a seeded uniform sample."""
    if count < 1:
        raise ValueError("count must be positive")
    objs = B.finite_set() if not B.orbit_group.symbolic else None
    rng = np.random.default_rng(rng_seed)
    if objs is not None:
        if count >= len(objs):
            return list(objs)
        pick = rng.choice(len(objs), size=count, replace=False)
        return [objs[int(i)] for i in pick]
    elems = geo.sample_many(B.orbit_group, count, rng_seed)
    seeds = B.seeds
    which = rng.integers(len(seeds), size=count) if len(seeds) > 1 else np.zeros(count, dtype=int)
    return [geo.act(g, seeds[int(w)]) for g, w in zip(elems, which)]


# -------------------------------------------------------- worked instances

def naive_prism_scheme() -> tuple[SBSpec, PointGroup]:
    """Pairs (vertex vector, ±z vector) for a D3 prism, one S-orbit.

    Returned with orbit group S itself, which is not closed under N_G(S).
    """
    S = geo.canonical_point_group("D3")
    pair = IrrepObject.of((1, "odd", (1.0, 0.0, 0.0)), (1, "odd", (0.0, 0.0, 1.0)))
    return SBSpec(pair, S, "full"), S
