"""Finite groups stored as composition tables.

Every group here is a table of element indices.  Subgroups, orbits,
normalizers, quotients and complements are all computed by table lookups,
so the cost of building a group is paid once in ``close_generators``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from .errors import (
    ClosureOverflow,
    NotInvertible,
    NotNested,
    NotNormal,
    SubgroupOverflow,
)

DEFAULT_TOL = 1e-8
HASH_GRID = 1e-6


def matrix_key(m: np.ndarray, grid: float = HASH_GRID) -> bytes:
    """Hash key for a float array: entries rounded to a fixed grid."""
    r = np.rint(np.asarray(m, dtype=float) / grid).astype(np.int64)
    r[r == 0] = 0
    return r.tobytes()


def matrix_eq(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.max(np.abs(np.asarray(a) - np.asarray(b))) <= tol)


class FiniteGroup:
    """A finite group given by its full composition table.

    ``compose[a, b]`` is the index of the product a*b.  ``labels`` optionally
    holds the concrete element behind each index (a matrix, a tuple, ...).
    """

    def __init__(self, compose: np.ndarray, labels: Optional[Sequence[Any]] = None,
                 key: Optional[Callable[[Any], Hashable]] = None):
        table = np.ascontiguousarray(compose, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("composition table must be square")
        self.compose = table
        self.compose.setflags(write=False)
        diag = np.nonzero((table == np.arange(n)[None, :]).all(axis=1))[0]
        if len(diag) != 1:
            raise NotInvertible("no unique identity element")
        self.identity = int(diag[0])
        rows, cols = np.nonzero(table == self.identity)
        if len(rows) != n or len(np.unique(rows)) != n:
            raise NotInvertible("some element has no inverse")
        inv = np.empty(n, dtype=np.int32)
        inv[rows] = cols
        self.inverse = inv
        self.inverse.setflags(write=False)
        self.labels = tuple(labels) if labels is not None else None
        self._key = key
        self._index: Optional[dict] = None

    @property
    def order(self) -> int:
        return int(self.compose.shape[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.compose[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def word(self, *elems: int) -> int:
        out = self.identity
        for e in elems:
            out = int(self.compose[out, e])
        return out

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k):
            out = int(self.compose[out, a])
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.compose[x, a])
            k += 1
        return k

    def index_of(self, label: Any) -> Optional[int]:
        """Index of a label, or None when it is not an element."""
        if self.labels is None or self._key is None:
            raise ValueError("group has no label lookup")
        if self._index is None:
            self._index = {self._key(lab): i for i, lab in enumerate(self.labels)}
        return self._index.get(self._key(label))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(int(m) for m in members))))

    def to_json(self) -> dict:
        out: dict = {"order": self.order, "compose": self.compose.ravel().tolist()}
        if self.labels is not None:
            out["labels"] = [_jsonable(lab) for lab in self.labels]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        n = int(data["order"])
        table = np.asarray(data["compose"], dtype=np.int32).reshape(n, n)
        return cls(table, labels=data.get("labels"))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def _jsonable(x: Any) -> Any:
    if isinstance(x, np.ndarray):
        return x.ravel().tolist()
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, repr=False)
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "_parent_id", id(self.parent))

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> np.ndarray:
        m = self.__dict__.get("_mask")
        if m is None:
            m = np.zeros(self.parent.order, dtype=bool)
            m[list(self.members)] = True
            object.__setattr__(self, "_mask", m)
        return m

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def __contains__(self, g: int) -> bool:
        return bool(self.mask[g])

    def __len__(self) -> int:
        return len(self.members)

    def issubset(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.array].all())

    def to_json(self) -> list:
        return list(self.members)


@dataclass(frozen=True)
class Quotient:
    group: FiniteGroup
    project: np.ndarray
    lift: tuple

    def lift_subgroup(self, parent: FiniteGroup, q: Subgroup) -> Subgroup:
        return parent.subgroup(i for c in q.members for i in self.lift[c])


@dataclass(frozen=True)
class GroupAction:
    """An action of a FiniteGroup on an opaque point domain."""

    apply: Callable[[int, Any], Any]
    eq: Callable[[Any, Any], bool]
    key: Optional[Callable[[Any], Hashable]] = None


# ---------------------------------------------------------------- construction

def close_generators(generators: Sequence[Any], compose: Callable[[Any, Any], Any],
                     eq: Callable[[Any, Any], bool], max_order: int = 1024,
                     key: Optional[Callable[[Any], Hashable]] = None) -> FiniteGroup:
    """Close a generating set under composition.

    Elements are ordered breadth first: identity, then the distinct
    generators, then right multiples by generators in insertion order.
    ``key`` must agree with ``eq``; without it lookups fall back to a scan.
    """
    if not generators:
        raise ValueError("need at least one generator")
    if max_order < 1:
        raise ValueError("max_order must be positive")

    elems: list = []
    index: dict = {}

    def find(x):
        if key is not None:
            i = index.get(key(x))
            if i is not None and eq(elems[i], x):
                return i
            if i is not None:
                raise NotInvertible("hash collision between unequal elements")
            return None
        for i, y in enumerate(elems):
            if eq(x, y):
                return i
        return None

    def add(x):
        if len(elems) >= max_order:
            raise ClosureOverflow(f"closure exceeds max_order={max_order}")
        elems.append(x)
        if key is not None:
            index[key(x)] = len(elems) - 1
        return len(elems) - 1

    # identity is the power of the first generator that precedes its return
    g0 = generators[0]
    prev, cur = g0, compose(g0, g0)
    steps = 1
    while not eq(cur, g0):
        prev, cur = cur, compose(cur, g0)
        steps += 1
        if steps > max_order:
            raise ClosureOverflow("generator order exceeds max_order")
    add(prev if steps > 1 else g0)

    gen_idx = []
    for g in generators:
        i = find(g)
        if i is None:
            i = add(g)
        gen_idx.append(i)
    gens = [elems[i] for i in dict.fromkeys(gen_idx)]

    parent = [(-1, -1)] * len(elems)
    for j, i in enumerate(dict.fromkeys(gen_idx)):
        if i != 0:
            parent[i] = (0, j)
    right: list = [[] for _ in gens]
    head = 0
    while head < len(elems):
        x = elems[head]
        for j, g in enumerate(gens):
            y = compose(x, g)
            i = find(y)
            if i is None:
                i = add(y)
                parent.append((head, j))
            right[j].append(i)
        head += 1

    n = len(elems)
    rmul = np.asarray(right, dtype=np.int32)
    # column b of the table: a*b = (a*p)*g where b = p*g in the BFS tree
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    for b in range(1, n):
        p, j = parent[b]
        table[:, b] = rmul[j][table[:, p]]
    try:
        return FiniteGroup(table, labels=elems, key=key)
    except NotInvertible:
        raise NotInvertible("closure is not a group")


def group_from_table(table: np.ndarray, labels=None) -> FiniteGroup:
    return FiniteGroup(table, labels=labels)


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product; element (i, j) has index i * |g2| + j."""
    n1, n2 = g1.order, g2.order
    t1 = g1.compose.astype(np.int64)
    t2 = g2.compose.astype(np.int64)
    table = (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    labels = [(i, j) for i in range(n1) for j in range(n2)]
    return FiniteGroup(table, labels=labels, key=lambda x: tuple(x))


def as_group(sub: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """Materialize a subgroup as its own FiniteGroup.

    Returns the group and the array mapping its indices to parent indices.
    """
    mem = sub.array
    pos = np.full(sub.parent.order, -1, dtype=np.int64)
    pos[mem] = np.arange(len(mem))
    table = pos[sub.parent.compose[np.ix_(mem, mem)]]
    labels = None
    if sub.parent.labels is not None:
        labels = [sub.parent.labels[i] for i in mem]
    return FiniteGroup(table, labels=labels, key=sub.parent._key), mem


# ------------------------------------------------------------------ subgroups

def generated_mask(G: FiniteGroup, gens: Iterable[int], start: Optional[np.ndarray] = None) -> np.ndarray:
    """Membership mask of the subgroup generated by ``gens`` (and ``start``)."""
    gens = [int(g) for g in gens]
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    if start is not None:
        mask |= start
        if not gens:
            return mask
        # right multiplication by gens alone would only give start*<gens>
        gens = gens + _small_gens(G, start)
    if not gens:
        return mask
    return _closure(G, mask, gens)


def _closure(G: FiniteGroup, mask: np.ndarray, gens: Sequence[int],
             limit: Optional[int] = None, forbid: Optional[np.ndarray] = None) -> Optional[np.ndarray]:
    """Close ``mask`` under right multiplication by ``gens``.

    Returns None as soon as the set outgrows ``limit`` or picks up more than
    one element of ``forbid`` (the identity is always shared).
    """
    garr = np.asarray(gens, dtype=np.int64)
    mask = mask.copy()
    mask[garr] = True
    frontier = np.nonzero(mask)[0]
    while len(frontier):
        if limit is not None and int(mask.sum()) > limit:
            return None
        if forbid is not None and int((mask & forbid).sum()) > 1:
            return None
        prod = G.compose[np.ix_(frontier, garr)].ravel()
        fresh = np.unique(prod[~mask[prod]])
        mask[fresh] = True
        frontier = fresh
    return mask


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, tuple(int(i) for i in np.nonzero(generated_mask(G, gens))[0]))


def is_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    mem = np.asarray(sorted(set(members)), dtype=np.int64)
    if len(mem) == 0:
        return False
    mask = np.zeros(G.order, dtype=bool)
    mask[mem] = True
    if not mask[G.identity]:
        return False
    return bool(mask[G.compose[np.ix_(mem, mem)]].all() and mask[G.inverse[mem]].all())


def cyclic_subgroups(G: FiniteGroup) -> list[tuple[int, np.ndarray]]:
    """Distinct cyclic subgroups as (generator, mask), generator minimal."""
    seen: dict = {}
    for g in range(G.order):
        mask = generated_mask(G, [g])
        k = mask.tobytes()
        if k not in seen:
            seen[k] = (g, mask)
    return list(seen.values())


def _subgroup_sort_key(s: Subgroup):
    return (s.order, s.members)


def all_subgroups(G: FiniteGroup, max_count: int = 100000) -> list[Subgroup]:
    """Every subgroup, by cyclic extension, sorted by (order, members)."""
    cyc = cyclic_subgroups(G)
    found: dict = {}
    queue = []
    for g, mask in cyc:
        k = mask.tobytes()
        if k not in found:
            found[k] = mask
            queue.append(mask)
    while queue:
        mask = queue.pop()
        for g, cmask in cyc:
            if mask[g]:
                continue
            new = generated_mask(G, [g] + _small_gens(G, mask), None)
            k = new.tobytes()
            if k not in found:
                found[k] = new
                queue.append(new)
                if len(found) > max_count:
                    raise SubgroupOverflow(f"more than {max_count} subgroups")
    subs = [Subgroup(G, tuple(int(i) for i in np.nonzero(m)[0])) for m in found.values()]
    subs.sort(key=_subgroup_sort_key)
    return subs


def _small_gens(G: FiniteGroup, mask: np.ndarray) -> list[int]:
    """A small generating set for the subgroup given by ``mask``."""
    gens: list[int] = []
    cur = np.zeros(G.order, dtype=bool)
    cur[G.identity] = True
    for g in np.nonzero(mask)[0]:
        if not cur[g]:
            gens.append(int(g))
            cur = generated_mask(G, gens)
            if cur.sum() == mask.sum():
                break
    return gens


def small_generating_set(sub: Subgroup) -> list[int]:
    return _small_gens(sub.parent, sub.mask)


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup(A.parent, tuple(int(i) for i in np.nonzero(A.mask & B.mask)[0]))


def product_set(A: Subgroup, B: Subgroup) -> list[int]:
    """The set {a*b}, sorted."""
    G = A.parent
    return sorted(set(G.compose[np.ix_(A.array, B.array)].ravel().tolist()))


def join(A: Subgroup, B: Subgroup) -> Subgroup:
    G = A.parent
    return Subgroup(G, tuple(int(i) for i in np.nonzero(generated_mask(G, B.members, A.mask))[0]))


# ------------------------------------------------------------ actions, orbits

def orbit(G: FiniteGroup, act: GroupAction, x: Any) -> list:
    """Orbit of ``x`` in element-index order, duplicates removed."""
    out: list = []
    keys: set = set()
    for g in range(G.order):
        y = act.apply(g, x)
        if act.key is not None:
            k = act.key(y)
            if k in keys:
                continue
            keys.add(k)
            out.append(y)
        elif not any(act.eq(y, z) for z in out):
            out.append(y)
    return out


def stabilizer(G: FiniteGroup, act: GroupAction, x: Any) -> Subgroup:
    return Subgroup(G, tuple(g for g in range(G.order) if act.eq(act.apply(g, x), x)))


def conjugate(S: Subgroup, g: int) -> Subgroup:
    """g S g^-1."""
    G = S.parent
    img = G.compose[G.compose[g, S.array], G.inverse[g]]
    return Subgroup(G, tuple(sorted(int(i) for i in img)))


def _conjugation_images(G: FiniteGroup, S: Subgroup) -> np.ndarray:
    """Row g holds g s g^-1 for every s in S."""
    idx = np.arange(G.order)
    left = G.compose[idx[:, None], S.array[None, :]]
    return G.compose[left, G.inverse[:, None]]


def normalizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    img = _conjugation_images(G, S)
    ok = S.mask[img].all(axis=1)
    return Subgroup(G, tuple(int(i) for i in np.nonzero(ok)[0]))


def is_normal(G: FiniteGroup, N: Subgroup) -> bool:
    return normalizer(G, N).order == G.order


def conjugacy_class_of_subgroup(G: FiniteGroup, S: Subgroup) -> list[Subgroup]:
    out: dict = {}
    img = _conjugation_images(G, S)
    for g in range(G.order):
        members = tuple(sorted(set(int(i) for i in img[g])))
        out.setdefault(members, Subgroup(G, members))
    return list(out.values())


def left_cosets(G: FiniteGroup, S: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets gS; the coset S first, then by smallest member."""
    seen = np.zeros(G.order, dtype=bool)
    out = []
    for g in [G.identity] + list(range(G.order)):
        if seen[g]:
            continue
        coset = np.unique(G.compose[g, S.array])
        seen[coset] = True
        out.append(tuple(int(i) for i in coset))
    return out


def left_transversal(G: FiniteGroup, S: Subgroup) -> list[int]:
    """One representative per left coset: identity first, then the smallest index."""
    return [G.identity if i == 0 else c[0] for i, c in enumerate(left_cosets(G, S))]


def quotient(G: FiniteGroup, N: Subgroup) -> Quotient:
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    cosets = left_cosets(G, N)
    project = np.empty(G.order, dtype=np.int64)
    for q, c in enumerate(cosets):
        project[list(c)] = q
    reps = np.asarray([c[0] for c in cosets], dtype=np.int64)
    table = project[G.compose[np.ix_(reps, reps)]]
    qg = FiniteGroup(table, labels=cosets, key=lambda c: tuple(c))
    return Quotient(group=qg, project=project, lift=tuple(cosets))


# ----------------------------------------------------------------- complements

def is_complement(G: FiniteGroup, S: Subgroup, H: Subgroup) -> bool:
    """H ∩ S = {e} and every element of G factors as s*h."""
    if S.order * H.order != G.order:
        return False
    if intersection(S, H).order != 1:
        return False
    return len(product_set(S, H)) == G.order


def find_complement(G: FiniteGroup, S: Subgroup) -> Optional[Subgroup]:
    """First complement of S in G in (order, members) order, or None.

    Normal S goes through the quotient (see ``_complement_of_normal``).
    Otherwise a cyclic-extension search is pruned to subgroups that meet S
    trivially and have order dividing |G|/|S|, since only those can lie
    inside a complement.
    """
    if G.order % S.order:
        return None
    target = G.order // S.order
    if target == 1:
        return G.trivial()
    if S.order == 1:
        return G.whole()
    if is_normal(G, S):
        return _complement_of_normal(G, S)
    return _complement_search(G, S, target)


def _complement_of_normal(G: FiniteGroup, S: Subgroup) -> Optional[Subgroup]:
    """Complements of a normal S are sections of G -> G/S.

    A complement meets each coset of a generator of G/S in exactly one
    element, so enumerating lifts of a generating set finds each complement
    exactly once.  The smallest member list wins.
    """
    Q = quotient(G, S)
    qgens = _small_gens(Q.group, np.ones(Q.group.order, dtype=bool))
    target = Q.group.order
    orders = [Q.group.element_order(q) for q in qgens]
    lifts = []
    for q, k in zip(qgens, orders):
        cands = [g for g in Q.lift[q] if G.element_order(g) == k]
        if not cands:
            return None
        lifts.append(cands)
    best = None
    seen: set = set()

    def rec(i: int, chosen: list, mask: Optional[np.ndarray]):
        nonlocal best
        if i == len(lifts):
            k = mask.tobytes()
            if k in seen:
                return
            seen.add(k)
            if int(mask.sum()) == target:
                H = Subgroup(G, tuple(int(x) for x in np.nonzero(mask)[0]))
                if best is None or H.members < best.members:
                    best = H
            return
        for g in lifts[i]:
            if mask is not None and mask[g]:
                continue
            new = generated_mask(G, [g], mask)
            if int(new.sum()) > target or (new & S.mask).sum() > 1:
                continue
            rec(i + 1, chosen + [g], new)

    rec(0, [], None)
    return best


def _complement_search(G: FiniteGroup, S: Subgroup, target: int) -> Optional[Subgroup]:
    cyc = [(g, m) for g, m in cyclic_subgroups(G)
           if not (m & S.mask).sum() > 1 and target % int(m.sum()) == 0 and g != G.identity]
    found: dict = {}
    queue = []
    for g, m in cyc:
        found.setdefault(m.tobytes(), m)
        queue.append(m)
    hits = []
    while queue:
        mask = queue.pop()
        size = int(mask.sum())
        if size == target:
            hits.append(mask)
            continue
        base = _small_gens(G, mask)
        for g, cm in cyc:
            if mask[g]:
                continue
            new = generated_mask(G, base + [g])
            k = new.tobytes()
            if k in found:
                continue
            found[k] = new
            nsize = int(new.sum())
            if target % nsize or (new & S.mask).sum() > 1:
                continue
            queue.append(new)
    best = None
    for m in hits:
        H = Subgroup(G, tuple(int(i) for i in np.nonzero(m)[0]))
        if is_complement(G, S, H) and (best is None or H.members < best.members):
            best = H
    return best


def complement_by_extension(G: FiniteGroup, S: Subgroup) -> Optional[Subgroup]:
    """Some complement of S, or None, by an exhaustive cyclic-extension scan.

    Every complement is reached through a chain of subgroups that meet S
    trivially and have order dividing |G|/|S|.  Conjugating a complement
    gives another one, so the first link only needs one cyclic subgroup per
    conjugacy class.  Unlike ``find_complement`` this never uses the
    quotient, which makes it an independent check for normal S.
    """
    if G.order % S.order:
        return None
    target = G.order // S.order
    if target == 1:
        return G.trivial()
    cyc = [(g, m) for g, m in cyclic_subgroups(G)
           if g != G.identity and int((m & S.mask).sum()) == 1 and target % int(m.sum()) == 0]
    starts: dict = {}
    for g, m in cyc:
        mem = np.nonzero(m)[0]
        img = np.sort(G.compose[G.compose[:, mem], G.inverse[:, None]], axis=1)
        rep = min(r.tobytes() for r in np.unique(img, axis=0))
        starts.setdefault(rep, m)
    stack = list(starts.values())
    found = {m.tobytes() for m in stack}
    while stack:
        mask = stack.pop()
        if int(mask.sum()) == target:
            H = Subgroup(G, tuple(int(i) for i in np.nonzero(mask)[0]))
            if is_complement(G, S, H):
                return H
            continue
        base = _small_gens(G, mask)
        for g, _ in cyc:
            if mask[g]:
                continue
            new = _closure(G, mask, base + [g], limit=target, forbid=S.mask)
            if new is None:
                continue
            k = new.tobytes()
            if k in found:
                continue
            found.add(k)
            if target % int(new.sum()) == 0 and int((new & S.mask).sum()) == 1:
                stack.append(new)
    return None


def find_complement_exhaustive(G: FiniteGroup, S: Subgroup) -> Optional[Subgroup]:
    """Reference implementation scanning every subgroup of the right order."""
    if G.order % S.order:
        return None
    target = G.order // S.order
    for H in all_subgroups(G):
        if H.order == target and is_complement(G, S, H):
            return H
    return None


# ------------------------------------------------------ generalized normalizer

def _check_nested(G: FiniteGroup, S: Subgroup, K: Subgroup) -> None:
    if S.parent is not G or K.parent is not G:
        raise NotNested("subgroups belong to a different group")
    if not K.issubset(S):
        raise NotNested("K is not contained in S")


def generalized_normalizer(G: FiniteGroup, S: Subgroup, K: Subgroup) -> Subgroup:
    """S * (N_G(S) ∩ N_G(K)), checked to be a subgroup."""
    _check_nested(G, S, K)
    M = intersection(normalizer(G, S), normalizer(G, K))
    out = G.subgroup(product_set(S, M))
    if not is_subgroup(G, out.members):
        raise AssertionError("product S*(N(S)∩N(K)) failed to close")
    return out


def generalized_normalizer_by_definition(G: FiniteGroup, S: Subgroup, K: Subgroup) -> Subgroup:
    """{g in N_G(S) : g K g^-1 is S-conjugate to K}."""
    _check_nested(G, S, K)
    NS = normalizer(G, S)
    S_group, S_map = as_group(S)
    pos = {int(p): i for i, p in enumerate(S_map)}
    K_in_S = S_group.subgroup(pos[k] for k in K.members)
    cls = {tuple(sorted(int(S_map[i]) for i in c.members))
           for c in conjugacy_class_of_subgroup(S_group, K_in_S)}
    keep = [g for g in NS.members if conjugate(K, g).members in cls]
    return G.subgroup(keep)


# ---------------------------------------------------------------- validation

def check_group_axioms(G: FiniteGroup, samples: Optional[int] = None, seed: int = 0) -> bool:
    """Associativity (exhaustive, or on random triples), identity and inverses."""
    T = G.compose
    n = G.order
    idx = np.arange(n)
    if not (T[G.identity] == idx).all() or not (T[:, G.identity] == idx).all():
        return False
    if not (T[idx, G.inverse] == G.identity).all() or not (T[G.inverse, idx] == G.identity).all():
        return False
    if samples is None:
        for a in range(n):
            if not (T[T[a][:, None], idx[None, :]] == T[a][T]).all():
                return False
        return True
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    return bool((T[T[a, b], c] == T[a, T[b, c]]).all())
