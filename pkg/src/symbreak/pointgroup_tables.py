"""Normalizer and complement tables for the finite point groups.

Each finite point group S in its canonical pose has an O(3) normalizer N that
is again canonical, so the orientation element returned with N is the
identity (apart from the degenerate n=1 names, which carry the orientation
of their alias).  Complements are recorded as words in a presentation of N.

Presentations
-------------
D(2n)h:  <a, b, m | a^2n, b^2, m^2, (ab)^2, (am)^2, (bm)^2>
         a = Rz(pi/n), b = Rx(pi), m = mirror through the xz-plane.
Oh:      <a, b, i | a^4, b^4, i^2, (aba)^2, (ab)^3, iai^-1a^-1, ibi^-1b^-1>
         a = Rz(pi/2), b = Rx(pi/2), i = inversion.
Ih:      <r, s, i | r^5, s^3, (rs)^2, i^2, iri^-1r^-1, isi^-1s^-1>
         r, s the canonical 5-fold and 3-fold generators of I.

For some rows the words describe a copy of S that is rotated away from the
canonical pose (Dnd always, Cnv for odd n).  Those rows carry a ``twist``
angle; the presentation is realized with generators conjugated by
Rz(twist), which is an automorphism of the normalizer that carries the word
copy onto the canonical one.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from . import group_core as gc
from . import o3_geometry as geo
from .errors import RelatorViolation, UnknownName
from .o3_geometry import IrrepObject, PointGroup

TABLES_VERSION = "1.0"


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple
    realization: dict = field(compare=False)

    def evaluate(self, word: str) -> np.ndarray:
        return evaluate_word(word, self.realization)

    def check(self, tol: float = geo.TOL) -> None:
        for r in self.relators:
            if not gc.matrix_eq(self.evaluate(r), np.eye(3), tol):
                raise RelatorViolation(f"relator {r} fails")


@dataclass(frozen=True)
class NormalizerEntry:
    family: str
    n: Optional[int]
    normalizer_name: str
    normalizer_n: Optional[int]


@dataclass(frozen=True)
class ComplementEntry:
    family: str
    n: Optional[int]
    subgroup_words: Optional[tuple]
    complement_words: Optional[tuple]
    complement_names: tuple
    twist: float = 0.0


_TOKEN = re.compile(r"([a-z])(?:\^(-?\d+))?")


def evaluate_word(word: str, realization: dict) -> np.ndarray:
    """Evaluate a word such as ``"a^2b"`` or ``"abm"``; empty word is e."""
    out = np.eye(3)
    pos = 0
    word = word.replace(" ", "")
    while pos < len(word):
        m = _TOKEN.match(word, pos)
        if not m:
            raise ValueError(f"bad word {word!r}")
        g = realization[m.group(1)]
        k = int(m.group(2) or 1)
        if k < 0:
            g, k = g.T, -k
        for _ in range(k):
            out = out @ g
        pos = m.end()
    return out


# ----------------------------------------------------------------- tables

def _resolve(name: str, n: Optional[int]) -> tuple[str, Optional[int], np.ndarray]:
    """Canonical (family, n) plus the orientation carrying it onto ``name``."""
    fam, k = geo.parse_name(name, n)
    if fam in geo.SYMBOLIC:
        raise UnknownName(f"{name} is not a finite point group")
    if fam in geo.AXIAL and k == 1:
        P = geo.canonical_point_group(fam, 1)
        return P.name, P.n, P.orientation
    if fam == "Dn" and k == 2:
        return "Dn", 2, np.eye(3)
    return fam, k, np.eye(3)


def normalizer_entry(name: str, n: Optional[int] = None) -> NormalizerEntry:
    fam, k, _ = _resolve(name, n)
    if fam in ("C1", "Ci"):
        return NormalizerEntry(fam, k, "Kh", None)
    if fam in ("Cs", "Cn", "S2n", "Cnh"):
        return NormalizerEntry(fam, k, "Dinfh", None)
    if fam in ("Dn", "Dnh") and k == 2:
        return NormalizerEntry(fam, k, "Oh", None)
    if fam in ("Cnv", "Dnd", "Dnh", "Dn"):
        return NormalizerEntry(fam, k, "Dnh", 2 * k)
    if fam in ("I", "Ih"):
        return NormalizerEntry(fam, k, "Ih", None)
    return NormalizerEntry(fam, k, "Oh", None)


_D2NH_WORDS = {
    "Cnv": (("a^2", "m"), ("am", "bm"), ("C2v",)),
    "Dnd": (("a^2", "abm", "m"), ("bm",), ("Cs",)),
    "Dnh": (("a^2", "b", "m"), ("am",), ("Cs",)),
    "Dn": (("a^2", "b"), ("am", "bm"), ("C2v",)),
}

_OH_WORDS = {
    "D2": (("a^2", "b^2"), ("ab", "ba^2", "i"), ("D3d",)),
    "D2h": (("a^2", "b^2", "i"), ("ab", "ba^2"), ("D3",)),
    "T": (("ab", "ba"), ("a^2b", "i"), ("C2h",)),
    "Td": (("ab", "ba", "ai"), ("a^2b",), ("C2",)),
    "Th": (("ab", "ba", "i"), ("a^2b",), ("C2",)),
    "O": (("a", "b"), ("i",), ("Ci",)),
    "Oh": (("a", "b", "i"), (), ("C1",)),
}


def complement_entry(name: str, n: Optional[int] = None) -> ComplementEntry:
    fam, k, _ = _resolve(name, n)
    ne = normalizer_entry(fam, k)
    if fam == "C1":
        return ComplementEntry(fam, k, None, None, ("Kh",))
    if fam == "Ci":
        return ComplementEntry(fam, k, None, None, ("K",))
    if fam == "Cs":
        return ComplementEntry(fam, k, None, None, ("Cinfv", "Dinf"))
    if ne.normalizer_name == "Dinfh":
        return ComplementEntry(fam, k, None, None, ())
    if ne.normalizer_name == "Dnh":
        sw, hw, names = _D2NH_WORDS[fam]
        twist = np.pi / (2 * k) if fam == "Dnd" or (fam == "Cnv" and k % 2) else 0.0
        return ComplementEntry(fam, k, sw, hw, names, twist)
    if ne.normalizer_name == "Ih":
        if fam == "I":
            return ComplementEntry(fam, k, ("r", "s"), ("i",), ("Ci",))
        return ComplementEntry(fam, k, ("r", "s", "i"), (), ("C1",))
    key = {"Dn": "D2", "Dnh": "D2h"}.get(fam, fam)
    sw, hw, names = _OH_WORDS[key]
    return ComplementEntry(fam, k, sw, hw, names)


# ----------------------------------------------------------- presentations

def presentation(name: str, n: Optional[int] = None, twist: float = 0.0) -> Presentation:
    """Presentation of a tabulated normalizer with its canonical realization.

    ``("Dnh", k)`` realizes <a, b, m> with a = Rz(2 pi / k).
    """
    fam, k = geo.parse_name(name, n)
    c = geo.rz(twist)
    if fam == "Dnh":
        real = {"a": geo.rz(2 * np.pi / k), "b": geo.rx(np.pi), "m": geo.mirror((0, 1, 0))}
        rel = (f"a^{k}", "b^2", "m^2", "abab", "amam", "bmbm")
        gens = ("a", "b", "m")
    elif fam == "Oh":
        real = {"a": geo.rz(np.pi / 2), "b": geo.rx(np.pi / 2), "i": geo.INVERSION.copy()}
        rel = ("a^4", "b^4", "i^2", "abaaba", "ababab", "iaia^-1", "ibib^-1")
        gens = ("a", "b", "i")
    elif fam == "Ih":
        r, s = geo.canonical_generators("I")
        real = {"r": r, "s": s, "i": geo.INVERSION.copy()}
        rel = ("r^5", "s^3", "rsrs", "i^2", "iri^-1r^-1", "isi^-1s^-1")
        gens = ("r", "s", "i")
    else:
        raise UnknownName(f"no tabulated presentation for {name}")
    real = {key: c @ v @ c.T for key, v in real.items()}
    return Presentation(gens, rel, real)


def realize_presentation(name: str, n: Optional[int] = None,
                         twist: float = 0.0) -> tuple[gc.FiniteGroup, dict]:
    """Realized group (closure of a, b, ... in order) and generator indices."""
    pres = presentation(name, n, twist)
    pres.check()
    G = geo.close_matrices([pres.realization[s] for s in pres.generators])
    expected = geo.standard_order(*geo.parse_name(name, n))
    if G.order != expected:
        raise RelatorViolation(f"realized order {G.order} != {expected}")
    names = {s: G.index_of(pres.realization[s]) for s in pres.generators}
    return G, names


def word_index(G: gc.FiniteGroup, pres: Presentation, word: str) -> int:
    i = G.index_of(pres.evaluate(word))
    if i is None:
        raise RelatorViolation(f"word {word} is not in the realized group")
    return i


def words_subgroup(G: gc.FiniteGroup, pres: Presentation, words) -> gc.Subgroup:
    return gc.subgroup_generated(G, [word_index(G, pres, w) for w in words])


# --------------------------------------------------------------- public API

def normalizer_of(name: str, n: Optional[int] = None) -> tuple[np.ndarray, PointGroup]:
    """(n_elem, N): the O(3) normalizer of the canonical group ``name``."""
    fam, k, orient = _resolve(name, n)
    ne = normalizer_entry(fam, k)
    return orient.copy(), PointGroup(orient.copy(), ne.normalizer_name, ne.normalizer_n)


@dataclass(frozen=True)
class ComplementResult:
    words: Optional[tuple]
    group: PointGroup
    names: tuple


def complement_in_normalizer(name: str, n: Optional[int] = None) -> Optional[ComplementResult]:
    """Tabulated complement of the canonical group in its normalizer, or None."""
    fam, k, orient = _resolve(name, n)
    ce = complement_entry(fam, k)
    if not ce.complement_names:
        return None
    if ce.complement_words is None:
        sym = ce.complement_names[0]
        return ComplementResult(None, PointGroup(orient.copy(), sym, None), ce.complement_names)
    G, H = _realized_complement(fam, k)
    P = geo.identify_point_group([G.labels[i] for i in H.members])
    P = PointGroup(orient @ P.orientation, P.name, P.n)
    return ComplementResult(ce.complement_words, P, ce.complement_names)


@lru_cache(maxsize=None)
def _realized_complement(fam: str, k: Optional[int]):
    ce = complement_entry(fam, k)
    ne = normalizer_entry(fam, k)
    pres = presentation(ne.normalizer_name, ne.normalizer_n, ce.twist)
    G, _ = realize_presentation(ne.normalizer_name, ne.normalizer_n, ce.twist)
    H = words_subgroup(G, pres, ce.complement_words)
    return G, H


@lru_cache(maxsize=None)
def realized_pair(fam: str, k: Optional[int]):
    """(N, S, H) realized from the table words; H is None for None rows."""
    ce = complement_entry(fam, k)
    ne = normalizer_entry(fam, k)
    pres = presentation(ne.normalizer_name, ne.normalizer_n, ce.twist)
    G, _ = realize_presentation(ne.normalizer_name, ne.normalizer_n, ce.twist)
    S = words_subgroup(G, pres, ce.subgroup_words)
    H = words_subgroup(G, pres, ce.complement_words) if ce.complement_words is not None else None
    return G, S, H


def _radical(n: int) -> int:
    out, p = 1, 2
    while n > 1:
        if n % p == 0:
            out *= p
            while n % p == 0:
                n //= p
        p += 1
    return out


def finite_normalizer_proxy(name: str, n: Optional[int] = None) -> tuple[gc.FiniteGroup, gc.Subgroup]:
    """(D(m)h, S) standing in for the infinite normalizer Dinfh.

    m carries a strictly larger power of every prime dividing n than S
    needs, so a complement in the proxy would have to exist in Dinfh too.
    """
    fam, k, _ = _resolve(name, n)
    if normalizer_entry(fam, k).normalizer_name != "Dinfh" or fam == "Cs":
        raise UnknownName(f"{name} has no infinite-normalizer proxy")
    m = (2 * k if fam == "S2n" else k) * _radical(k)
    N = geo.close_matrices([geo.rz(2 * np.pi / m), geo.rx(np.pi), geo.SIGMA_H], max_order=4 * m)
    mats = geo.canonical_point_group(fam, k).matrices
    idx = [N.index_of(x) for x in mats]
    if any(i is None for i in idx):
        raise RelatorViolation(f"{name} is not inside its proxy normalizer")
    return N, N.subgroup(idx)


# ------------------------------------------------------- breaking objects

_SEEDS = [
    (1, "odd", (0.83, 0.47, 0.29)),
    (1, "even", (0.83, 0.47, 0.29)),
    (2, "even", (0.31, 0.53, 0.71, 0.23, 0.37)),
    (2, "odd", (0.31, 0.53, 0.71, 0.23, 0.37)),
    (0, "odd", (1.0,)),
]


def _fixed_projection(mats: np.ndarray, seed: IrrepObject) -> Optional[IrrepObject]:
    acc = np.zeros_like(seed.vector)
    for m in mats:
        acc += geo.act(m, seed).vector
    acc /= len(mats)
    norm = np.linalg.norm(acc)
    if norm < 1e-9:
        return None
    acc = acc / norm
    acc[np.abs(acc) < 1e-12] = 0.0
    c = seed.components[0]
    return IrrepObject.of((c.l, c.parity, acc))


def canonical_breaking_object(name: str, n: Optional[int] = None) -> IrrepObject:
    """Object with trivial stabilizer in the canonical group.

    When a tabulated complement H exists the object is fixed by H as well,
    so its orbit under the normalizer is an ideal equivariant set.
    """
    fam, k, orient = _resolve(name, n)
    S = PointGroup(orient, fam, k)
    comp = complement_in_normalizer(fam, k)
    if comp is not None and comp.group.symbolic:
        sym = comp.group.name
        if sym == "Kh":
            return geo.scalar(1.0)
        if sym == "K":
            return geo.pseudoscalar(1.0)
        return geo.vector(orient @ np.array([0.0, 0.0, 1.0]))
    fixers = comp.group.matrices if comp is not None else np.eye(3)[None]
    for l, p, c in _SEEDS:
        seed = IrrepObject.of((l, p, c))
        b = _fixed_projection(fixers, seed)
        if b is not None and geo.object_stabilizer(S, b).order == 1:
            return b
    raise AssertionError(f"no breaking object found for {name}")


# --------------------------------------------------------------- export

def family_instances(max_n: int = 8) -> list[tuple[str, Optional[int]]]:
    out: list = [("C1", None), ("Ci", None), ("Cs", None)]
    for fam in geo.AXIAL:
        for k in range(2, max_n + 1):
            out.append((fam, k))
    out += [(f, None) for f in ("T", "Td", "Th", "O", "Oh", "I", "Ih")]
    return out


def tables_document(max_n: int = 8) -> dict:
    rows = []
    for fam, k in family_instances(max_n):
        ne = normalizer_entry(fam, k)
        ce = complement_entry(fam, k)
        rows.append({
            "family": fam,
            "n": k,
            "label": geo.display_name(fam, k),
            "normalizer": {"name": ne.normalizer_name, "n": ne.normalizer_n,
                           "label": geo.display_name(ne.normalizer_name, ne.normalizer_n)},
            "subgroup_words": list(ce.subgroup_words) if ce.subgroup_words is not None else None,
            "complement_words": list(ce.complement_words) if ce.complement_words is not None else None,
            "complement_names": list(ce.complement_names) or None,
            "twist": ce.twist,
            "object": canonical_breaking_object(fam, k).to_json(),
        })
    pres = {}
    for nm, k in (("Dnh", "2n"), ("Oh", None), ("Ih", None)):
        p = presentation(nm, 4 if k else None)
        pres[nm if not k else "D(2n)h"] = {
            "generators": list(p.generators),
            "relators": list(p.relators) if not k else ["a^2n", "b^2", "m^2", "abab", "amam", "bmbm"],
        }
    return {"version": TABLES_VERSION, "presentations": pres, "families": rows}


def dump_tables(max_n: int = 8) -> str:
    return json.dumps(tables_document(max_n), indent=2, sort_keys=True)
