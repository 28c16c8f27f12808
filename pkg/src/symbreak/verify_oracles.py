"""Brute-force checks of the complement theorems and the wreath-product counterexample.

Every check returns OracleReport records instead of raising, so a whole suite
can run and be summarized in one pass.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from typing import Any, Optional, Sequence

import numpy as np

from . import group_core as gc
from . import o3_geometry as geo
from . import pointgroup_tables as pt
from .errors import ClosureOverflow, RelatorViolation
from .group_core import FiniteGroup, Subgroup

MAX_WREATH = 1024
MAX_ORACLE = 48


@dataclass(frozen=True)
class OracleReport:
    claim_id: str
    instance: str
    expected: Any
    observed: Any
    passed: bool
    elapsed: float

    def to_json(self) -> dict:
        return {"claim": self.claim_id, "instance": self.instance, "expected": self.expected,
                "observed": self.observed, "pass": self.passed, "elapsed": round(self.elapsed, 4)}


def _report(claim: str, instance: str, expected, observed, t0: float, tol: float = 1e-8) -> OracleReport:
    if isinstance(expected, float) or isinstance(observed, float):
        ok = abs(float(expected) - float(observed)) <= tol
    else:
        ok = expected == observed
    return OracleReport(claim, instance, expected, observed, bool(ok), time.perf_counter() - t0)


# ------------------------------------------------------------ wreath products

@dataclass(frozen=True)
class WreathSpec:
    """A ≀_Ω H: ``top_action[h]`` is the permutation ω -> h·ω."""

    base: FiniteGroup
    top: FiniteGroup
    omega_size: int
    top_action: tuple

    def __post_init__(self):
        perms = np.asarray(self.top_action, dtype=np.int64)
        if perms.shape != (self.top.order, self.omega_size):
            raise ValueError("top_action needs one permutation of Ω per top element")
        for p in perms:
            if sorted(p.tolist()) != list(range(self.omega_size)):
                raise ValueError("top_action entries must be permutations")
        T = self.top.compose
        # (h1 h2)·ω = h1·(h2·ω)
        lhs = perms[T]
        rhs = perms[np.arange(self.top.order)[:, None, None], perms[None, :, :]]
        if not (lhs == rhs).all():
            raise ValueError("top_action is not a homomorphism")


def wreath_product(spec: WreathSpec) -> FiniteGroup:
    """Elements ((a_ω), h) with ((a),h)((a'),h') = ((a_ω a'_{h^-1 ω}), h h')."""
    A, H, k = spec.base, spec.top, spec.omega_size
    n = A.order ** k * H.order
    if n > MAX_WREATH:
        raise ClosureOverflow(f"wreath product of order {n} exceeds {MAX_WREATH}")
    perms = np.asarray(spec.top_action, dtype=np.int64)
    tuples = np.asarray(list(product(range(A.order), repeat=k)), dtype=np.int64).reshape(-1, k)
    radix = A.order ** np.arange(k - 1, -1, -1)
    avec = np.repeat(tuples, H.order, axis=0)
    hvec = np.tile(np.arange(H.order), len(tuples))
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        back = perms[H.inverse[hvec[i]]]
        shifted = avec[:, back]
        new_a = A.compose[avec[i][None, :], shifted]
        new_h = H.compose[hvec[i], hvec]
        table[i] = (new_a @ radix) * H.order + new_h
    labels = [(tuple(int(x) for x in a), int(h)) for a, h in zip(avec, hvec)]
    return FiniteGroup(table, labels)


def cyclic_group(m: int) -> FiniteGroup:
    idx = np.arange(m)
    return gc.group_from_table((idx[:, None] + idx[None, :]) % m)


def _a2_sign_action(D4: FiniteGroup) -> tuple:
    """Ω = {+1, -1} as indices 0, 1; elements flipping z swap them."""
    ez = np.array([0.0, 0.0, 1.0])
    out = []
    for m in D4.labels:
        out.append((0, 1) if float((m @ ez)[2]) > 0 else (1, 0))
    return tuple(out)


def _relators_hold(G: FiniteGroup, a: int, b: int, c: int) -> bool:
    e = G.identity
    ab, ac = G.mul(a, b), G.mul(a, c)
    return (G.power(a, 2) == e and G.power(b, 4) == e and G.power(ab, 4) == e
            and G.power(c, 2) == e and G.word(b, c, G.inv(b), c) == e and G.power(ac, 4) == e)


def small_group_32_28() -> tuple[FiniteGroup, dict]:
    """C2 ≀ D4 under the A2 sign action, with generators a, b, c.

    The group is pinned down only up to isomorphism, so the generators are
    the first triple (in index order, c taken from the base) that satisfies
    all six relators and generates the whole group.
    """
    D4 = geo.canonical_point_group("D4").group
    spec = WreathSpec(cyclic_group(2), D4, 2, _a2_sign_action(D4))
    G = wreath_product(spec)
    if G.order != 32:
        raise RelatorViolation(f"wreath product has order {G.order}")
    base = [i for i, (_, h) in enumerate(G.labels) if h == D4.identity and i != G.identity]
    for a, b in product(range(G.order), repeat=2):
        if G.element_order(a) != 2 or G.element_order(b) != 4:
            continue
        for c in base:
            if G.element_order(c) == 2 and _relators_hold(G, a, b, c) \
                    and gc.subgroup_generated(G, [a, b, c]).order == 32:
                return G, {"a": a, "b": b, "c": c}
    raise RelatorViolation("no generating triple satisfies the relators")


@dataclass
class CounterexampleInstance:
    G: FiniteGroup
    S: Subgroup
    K: Subgroup
    gens: dict


def counterexample_instance() -> CounterexampleInstance:
    Gp, g = small_group_32_28()
    G = gc.direct_product(Gp, Gp)
    e, n = Gp.identity, Gp.order
    one = {k: v * n + e for k, v in g.items()}
    two = {k: e * n + v for k, v in g.items()}
    gens = {f"{k}1": v for k, v in one.items()} | {f"{k}2": v for k, v in two.items()}
    S = gc.subgroup_generated(G, [one["a"], G.power(one["b"], 2), one["c"],
                                  two["a"], G.power(two["b"], 2), two["c"]])
    K = gc.subgroup_generated(G, [G.mul(one["c"], two["c"])])
    return CounterexampleInstance(G, S, K, gens)


def appendix_g_counterexample() -> list[OracleReport]:
    """The five claims about G = G'×G', S and K.  Never raises."""
    reports = []
    t0 = time.perf_counter()
    try:
        inst = counterexample_instance()
    except Exception as e:  # report, do not raise
        return [OracleReport("build", "G = G'×G'", 1024, repr(e), False, time.perf_counter() - t0)]
    G, S, K = inst.G, inst.S, inst.K
    desc = "G = (C2 wr D4)^2, |G| = 1024"

    t = time.perf_counter()
    NS = gc.normalizer(G, S).order
    NSK = gc.generalized_normalizer(G, S, K).order
    NSK_def = gc.generalized_normalizer_by_definition(G, S, K).order
    reports.append(_report("i", desc + "; N_G(S), N_G(S,K) (lemma, definition)",
                           [1024, 1024, 1024], [NS, NSK, NSK_def], t))

    t = time.perf_counter()
    g = inst.gens
    H = gc.subgroup_generated(G, [G.mul(g["a1"], g["b1"]), G.mul(g["a2"], g["b2"])])
    ok = gc.is_complement(G, S, H)
    reports.append(_report("ii", desc + "; <a1 b1, a2 b2> complements S",
                           {"order": 4, "complement": True}, {"order": H.order, "complement": ok}, t))

    t = time.perf_counter()
    reports.append(_report("iii", desc + "; |S| = ideal full SBS size", 256, S.order, t))

    t = time.perf_counter()
    outside = np.nonzero(~S.mask)[0]
    conj = gc._conjugation_images(G, K)[outside]
    fixes_K = K.mask[conj].all(axis=1)
    sq = G.compose[outside, outside]
    sq_ok = S.mask[sq] & ~K.mask[sq]
    bad = int((fixes_K & ~sq_ok).sum())
    reports.append(_report("iv", desc + "; g not in S with gKg^-1 = K and g^2 not in S-K",
                           0, bad, t))

    t = time.perf_counter()
    # a stabilizer T with T ∩ S = K and T != K would contain some g outside S
    # with <K, g> ∩ S = K; none exists, so Stab_G(p) = K and |P| = |G|/|K|
    extra = 0
    for x in outside:
        m = gc.generated_mask(G, [int(x)], K.mask)
        if int((m & S.mask).sum()) == K.order:
            extra += 1
    orbit = len(gc.left_cosets(G, K))
    reports.append(_report("v", desc + "; exact partial SBS |Orb_G(p)|, larger stabilizers",
                           {"orbit": 512, "larger_stabilizers": 0},
                           {"orbit": orbit, "larger_stabilizers": extra}, t))
    return reports


def counterexample_partial_condition(inst: Optional[CounterexampleInstance] = None) -> bool:
    """Whether N_S(K)/K has a complement in N_{N_G(S,K)}(K)/K for the instance."""
    inst = inst or counterexample_instance()
    return partial_condition(inst.G, inst.S, inst.K)


# -------------------------------------------------------------- theorem oracles

def _sub_in(parent: FiniteGroup, mem: np.ndarray, sub: Subgroup) -> Subgroup:
    pos = {int(g): i for i, g in enumerate(mem)}
    return parent.subgroup(pos[int(g)] for g in sub.members)


def _coset_model(N: FiniteGroup, H: Subgroup):
    """Left cosets of H in N and the translation action on their indices."""
    cosets = gc.left_cosets(N, H)
    where = np.empty(N.order, dtype=np.int64)
    for i, c in enumerate(cosets):
        where[list(c)] = i
    reps = np.asarray([c[0] for c in cosets])
    # action[n, i] = index of n·(coset i)
    action = where[N.compose[:, reps]]
    return cosets, action


def _coset_sbs_checks(N: FiniteGroup, S: Subgroup, H: Subgroup) -> tuple[bool, bool, bool]:
    """(free under S, S-transitive, N-closed) for the coset space N/H."""
    cosets, action = _coset_model(N, H)
    s_act = action[S.array]
    free = all(int((s_act[:, i] == i).sum()) == 1 for i in range(len(cosets)))
    transitive = len(set(s_act[:, 0].tolist())) == len(cosets)
    closed = bool(((action >= 0) & (action < len(cosets))).all())
    return free, transitive, closed


def theorem_complement_oracle(G: FiniteGroup, name: str = "G") -> list[OracleReport]:
    """Complement in N_G(S) exists iff a free, S-transitive, N-closed coset set exists."""
    if G.order > MAX_ORACLE:
        raise ValueError(f"oracle limited to |G| <= {MAX_ORACLE}")
    reports = []
    for S in gc.all_subgroups(G):
        t = time.perf_counter()
        Nsub = gc.normalizer(G, S)
        N, mem = gc.as_group(Nsub)
        Sl = _sub_in(N, mem, S)
        H = gc.find_complement(N, Sl)
        inst = f"{name}, S = {list(S.members)}"
        if H is not None:
            free, trans, closed = _coset_sbs_checks(N, Sl, H)
            reports.append(_report("complement->ideal", inst, [True, True, True],
                                   [free, trans, closed], t))
        else:
            hits = 0
            for Hp in gc.all_subgroups(N):
                # a free transitive S-set has exactly |S| points
                if Hp.order * Sl.order != N.order:
                    continue
                free, trans, _ = _coset_sbs_checks(N, Sl, Hp)
                hits += int(free and trans)
            reports.append(_report("no-complement->no-ideal", inst, 0, hits, t))
    return reports


def gen_normalizer_oracle(G: FiniteGroup, name: str = "G") -> list[OracleReport]:
    """S(N(S) ∩ N(K)) against the definition, for every nested K <= S."""
    if G.order > MAX_ORACLE:
        raise ValueError(f"oracle limited to |G| <= {MAX_ORACLE}")
    t = time.perf_counter()
    subs = gc.all_subgroups(G)
    pairs = mismatches = 0
    for S in subs:
        for K in subs:
            if K.order > S.order or S.order % K.order or not K.issubset(S):
                continue
            pairs += 1
            a = gc.generalized_normalizer(G, S, K)
            b = gc.generalized_normalizer_by_definition(G, S, K)
            mismatches += int(a.members != b.members)
    return [_report("generalized-normalizer", f"{name}, {pairs} nested pairs", 0, mismatches, t)]


@dataclass
class _PartialData:
    M: FiniteGroup
    S: Subgroup
    K: Subgroup
    NM: FiniteGroup
    nm_members: np.ndarray
    quotient: gc.Quotient
    C: Optional[Subgroup]


def partial_condition(G: FiniteGroup, S: Subgroup, K: Subgroup) -> bool:
    """N_S(K)/K has a complement in N_{N_G(S,K)}(K)/K."""
    return _partial_quotient(G, S, K).C is not None


def _partial_quotient(G: FiniteGroup, S: Subgroup, K: Subgroup) -> _PartialData:
    M = gc.generalized_normalizer(G, S, K)
    Mg, mem = gc.as_group(M)
    Sl, Kl = _sub_in(Mg, mem, S), _sub_in(Mg, mem, K)
    NM = gc.normalizer(Mg, Kl)
    NS = gc.intersection(NM, Sl)
    NMg, nmem = gc.as_group(NM)
    q = gc.quotient(NMg, _sub_in(NMg, nmem, Kl))
    Q2 = q.group.subgroup(int(q.project[i]) for i in _sub_in(NMg, nmem, NS).members)
    return _PartialData(Mg, Sl, Kl, NMg, nmem, q, gc.find_complement(q.group, Q2))


def _orbit_checks(Mg: FiniteGroup, Sl: Subgroup, Kl: Subgroup, H: Subgroup) -> tuple[bool, bool, int]:
    """(exact, N-closed, degeneracy) for P = Orb_S(H) in the coset space Mg/H."""
    cosets, action = _coset_model(Mg, H)
    s_act = action[Sl.array]
    orbit = sorted(set(s_act[:, 0].tolist()))
    cls = {c.members for c in _classes_in(Sl, Kl)}
    exact = True
    deg = 0
    for i in orbit:
        stab = Mg.subgroup(Sl.array[s_act[:, i] == i])
        exact &= stab.members in cls
    # degeneracy: |K| / |Stab_S(p)| for a representative whose stabilizer lies in K
    for i in orbit:
        stab = Sl.array[s_act[:, i] == i]
        if Kl.mask[stab].all():
            deg = Kl.order // len(stab)
            break
    closed = all(set(action[g, orbit].tolist()) <= set(orbit) for g in range(Mg.order))
    return exact, closed, deg


def _classes_in(S: Subgroup, K: Subgroup) -> list[Subgroup]:
    G = S.parent
    img = gc._conjugation_images(G, K)[S.array]
    out = {}
    for row in img:
        mem = tuple(sorted(set(int(i) for i in row)))
        out.setdefault(mem, G.subgroup(mem))
    return list(out.values())


def partial_theorem_oracle(G: FiniteGroup, name: str = "G") -> list[OracleReport]:
    """Quotient condition iff an exact, S-transitive, closed coset-model set exists."""
    if G.order > MAX_ORACLE:
        raise ValueError(f"oracle limited to |G| <= {MAX_ORACLE}")
    subs = gc.all_subgroups(G)
    t = time.perf_counter()
    cases = good = 0
    failures = []
    for S in subs:
        for K in subs:
            if S.order % K.order or not K.issubset(S):
                continue
            cases += 1
            d = _partial_quotient(G, S, K)
            if d.C is not None:
                # H is the union of the cosets in C; P is the S-orbit of the coset H
                Hl = d.quotient.lift_subgroup(d.NM, d.C)
                H = d.M.subgroup(int(d.nm_members[i]) for i in Hl.members)
                exact, closed, deg = _orbit_checks(d.M, d.S, d.K, H)
                passed = exact and closed and deg == 1
            else:
                passed = not _ideal_coset_exists(d.M, d.S, d.K)
            good += int(passed)
            if not passed:
                failures.append((list(S.members), list(K.members)))
    return [_report("partial-complement<->ideal", f"{name}, {cases} nested pairs",
                    cases, good, t)] + [
        OracleReport("partial-complement<->ideal", f"{name}, failing S={s}, K={k}", True, False, False, 0.0)
        for s, k in failures]


def _ideal_coset_exists(Mg: FiniteGroup, Sl: Subgroup, Kl: Subgroup) -> bool:
    """Any subgroup H whose coset space holds an exact S-transitive closed orbit."""
    for H in gc.all_subgroups(Mg):
        if Mg.order % H.order:
            continue
        cosets, action = _coset_model(Mg, H)
        s_act = action[Sl.array]
        orbit = sorted(set(s_act[:, 0].tolist()))
        if len(orbit) != len(cosets):
            # the orbit must be N_G(S,K)-closed and Mg acts transitively on cosets
            continue
        cls = {c.members for c in _classes_in(Sl, Kl)}
        if all(Mg.subgroup(Sl.array[s_act[:, i] == i]).members in cls for i in orbit):
            return True
    return False


# ------------------------------------------------------------------ corpus

def oracle_corpus() -> dict[str, FiniteGroup]:
    """Fixed groups of order <= 48 used by the theorem oracles."""
    canon = {nm: geo.canonical_point_group(nm).group
             for nm in ("C4", "C6", "D3", "D4", "D4h", "D6h", "Td")}
    D8 = geo.canonical_point_group("D8").group
    D8h, _ = pt.realize_presentation("Dnh", 8)
    Oh, _ = pt.realize_presentation("Oh")
    canon.update({"D8": D8, "D8h": D8h, "Oh": Oh})
    order = ("C4", "C6", "D3", "D4", "D8", "D4h", "D6h", "D8h", "Oh", "Td")
    return {k: canon[k] for k in order}


def theorem_suite(names: Optional[Sequence[str]] = None) -> list[OracleReport]:
    out = []
    for nm, G in oracle_corpus().items():
        if names and nm not in names:
            continue
        out += theorem_complement_oracle(G, nm)
        out += gen_normalizer_oracle(G, nm)
        out += partial_theorem_oracle(G, nm)
    return out


# ------------------------------------------------------------------ tables

def _symbolic_factorization(S: geo.PointGroup, N: geo.PointGroup, H: geo.PointGroup,
                            samples: int = 200, seed: int = 0) -> bool:
    """Sampled check that each n in N is s·h for exactly one s in S."""
    for n in geo.sample_many(N, samples, seed):
        hits = sum(1 for s in S.matrices if H.contains(s.T @ n))
        if hits != 1:
            return False
    return True


def table_oracle(max_n: int = 8) -> list[OracleReport]:
    """Normality, tabulated complements and "None" rows for every instance."""
    reports = []
    for fam, k in pt.family_instances(max_n):
        t = time.perf_counter()
        label = geo.display_name(fam, k)
        ce = pt.complement_entry(fam, k)
        ne = pt.normalizer_entry(fam, k)
        try:
            if ce.complement_words is None and ce.complement_names:
                S = geo.canonical_point_group(fam, k)
                N = geo.PointGroup(np.eye(3), ne.normalizer_name, ne.normalizer_n)
                ok = all(_symbolic_factorization(S, N, geo.PointGroup(np.eye(3), h))
                         for h in ce.complement_names)
                reports.append(_report("table-symbolic", label, True, ok, t))
            elif ce.complement_words is None:
                Np, Sp = pt.finite_normalizer_proxy(fam, k)
                normal = gc.is_normal(Np, Sp)
                none = gc.complement_by_extension(Np, Sp) is None
                reports.append(_report("table-none", f"{label} in D{Np.order // 4}h proxy",
                                       [True, True], [normal, none], t))
            else:
                G, S, H = pt.realized_pair(fam, k)
                same = geo.same_elements([G.labels[i] for i in S.members],
                                         geo.canonical_point_group(fam, k).matrices)
                reports.append(_report("table-complement", label, [True, True, True],
                                       [same, gc.is_normal(G, S), gc.is_complement(G, S, H)], t))
        except Exception as e:  # report, do not raise
            reports.append(OracleReport("table", label, True, repr(e), False, time.perf_counter() - t))
    return reports
