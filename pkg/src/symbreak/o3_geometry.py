"""O(3) elements, point groups and the irrep objects they act on.

Point groups are stored as an orientation ``g`` (det +1) together with a
Schoenflies name; the elements are ``g @ C @ g.T`` for the canonical group C.

Canonical poses: principal axis on z, a 2-fold axis on x when there is one,
otherwise the yz mirror.  Cubic groups are axis aligned.  Icosahedral groups
put a 5-fold axis on z and a neighbouring 3-fold axis in the xz-plane
(positive x).  ``Cs`` is the horizontal mirror and the ``S2n`` generator is
``Rz(pi/n) @ sigma_h``.

Irrep coefficients: l=1 components are Cartesian (x, y, z).  l=2 components
use the e3nn real spherical harmonic basis, which takes y as the polar axis:

    (xz, xy, y^2 - (x^2 + z^2)/2, yz, (z^2 - x^2)/2)

with the normalization of an orthonormal basis of traceless symmetric
matrices.  In particular (0, 0, 1, 0, 0) is the quadratic form aligned with y.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import group_core as gc
from .errors import (
    BadParameter,
    NotAPointGroup,
    SymbolicGroup,
    UnknownName,
    Unsupported,
    UnsupportedIrrep,
)

TOL = 1e-8
OBJECT_TOL = 1e-6

AXIAL = ("Cn", "Cnv", "Cnh", "S2n", "Dn", "Dnd", "Dnh")
FIXED = ("C1", "Ci", "Cs", "T", "Td", "Th", "O", "Oh", "I", "Ih")
SYMBOLIC = ("Cinf", "Cinfv", "Cinfh", "Dinf", "Dinfh", "SO2", "O2", "SO3", "O3", "K", "Kh")
SAMPLEABLE = ("Cinf", "Cinfv", "Cinfh", "Dinf", "Dinfh", "SO2", "O2", "SO3", "O3", "K", "Kh")
MAX_N = 32

IDENTITY = np.eye(3)
INVERSION = -np.eye(3)
SIGMA_H = np.diag([1.0, 1.0, -1.0])
SIGMA_X = np.diag([-1.0, 1.0, 1.0])


# ------------------------------------------------------------------ matrices

def rotation(axis: Sequence[float], angle: float) -> np.ndarray:
    """Right-handed rotation about ``axis`` by ``angle``."""
    u = np.asarray(axis, dtype=float)
    u = u / np.linalg.norm(u)
    x, y, z = u
    c, s = np.cos(angle), np.sin(angle)
    C = 1 - c
    return np.array([
        [c + x * x * C, x * y * C - z * s, x * z * C + y * s],
        [y * x * C + z * s, c + y * y * C, y * z * C - x * s],
        [z * x * C - y * s, z * y * C + x * s, c + z * z * C],
    ])


def rz(angle: float) -> np.ndarray:
    return rotation((0, 0, 1), angle)


def rx(angle: float) -> np.ndarray:
    return rotation((1, 0, 0), angle)


def mirror(normal: Sequence[float]) -> np.ndarray:
    u = np.asarray(normal, dtype=float)
    u = u / np.linalg.norm(u)
    return np.eye(3) - 2 * np.outer(u, u)


def is_orthogonal(m: np.ndarray, tol: float = TOL) -> bool:
    m = np.asarray(m, dtype=float)
    return m.shape == (3, 3) and bool(np.max(np.abs(m.T @ m - np.eye(3))) <= tol)


def as_o3(m, tol: float = TOL) -> np.ndarray:
    """Validate and return a 3x3 orthogonal matrix."""
    a = np.asarray(m, dtype=float).reshape(3, 3)
    if not is_orthogonal(a, tol):
        raise BadParameter("matrix is not orthogonal")
    return a


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform rotation from a normalized Gaussian quaternion."""
    q = rng.normal(size=4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ])


def rotation_axis(r: np.ndarray) -> np.ndarray:
    """Unit axis of a proper rotation, sign chosen lexicographically largest."""
    _, _, vt = np.linalg.svd(r - np.eye(3))
    return _lex_sign(vt[-1])


def _lex_sign(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    for c in u:
        if abs(c) > 1e-9:
            return u if c > 0 else -u
    return u


def rotation_angle(r: np.ndarray) -> float:
    return float(np.arccos(np.clip((np.trace(r) - 1) / 2, -1.0, 1.0)))


# ---------------------------------------------------------------- names

_CONCRETE = [
    (re.compile(r"^C(\d+)v$"), "Cnv"),
    (re.compile(r"^C(\d+)h$"), "Cnh"),
    (re.compile(r"^C(\d+)$"), "Cn"),
    (re.compile(r"^S(\d+)$"), "S2n"),
    (re.compile(r"^D(\d+)d$"), "Dnd"),
    (re.compile(r"^D(\d+)h$"), "Dnh"),
    (re.compile(r"^D(\d+)$"), "Dn"),
]


def parse_name(token: str, n: Optional[int] = None) -> tuple[str, Optional[int]]:
    """Turn a token such as ``"D3"`` or (``"Dn"``, 3) into (family, n)."""
    if token in FIXED or token in SYMBOLIC:
        if n is not None:
            raise BadParameter(f"{token} takes no n")
        return token, None
    if token in AXIAL:
        if n is None:
            raise BadParameter(f"{token} needs n")
        n = int(n)
        if n < 1:
            raise BadParameter("n must be at least 1")
        return token, n
    for pat, fam in _CONCRETE:
        m = pat.match(token)
        if m:
            k = int(m.group(1))
            if fam == "S2n":
                if k % 2:
                    raise BadParameter("S groups need an even index")
                k //= 2
            if k < 1:
                raise BadParameter("n must be at least 1")
            if n is not None and int(n) != k:
                raise BadParameter(f"{token} conflicts with n={n}")
            return fam, k
    raise UnknownName(f"unknown point group token {token!r}")


def display_name(name: str, n: Optional[int]) -> str:
    """Concrete label, e.g. ("Dnh", 4) -> "D4h"."""
    if n is None:
        return name
    if name == "S2n":
        return f"S{2 * n}"
    return name.replace("n", str(n), 1)


def standard_order(name: str, n: Optional[int]) -> int:
    return {
        "C1": 1, "Ci": 2, "Cs": 2, "T": 12, "Td": 24, "Th": 24, "O": 24,
        "Oh": 48, "I": 60, "Ih": 120,
    }.get(name) or {"Cn": 1, "Cnv": 2, "Cnh": 2, "S2n": 2, "Dn": 2, "Dnd": 4, "Dnh": 4}[name] * n


_ICO_THETA = float(np.arccos(np.sqrt((5 + 2 * np.sqrt(5)) / 15)))
ICO_3FOLD = np.array([np.sin(_ICO_THETA), 0.0, np.cos(_ICO_THETA)])


def canonical_generators(name: str, n: Optional[int] = None) -> list[np.ndarray]:
    if name == "C1":
        return [IDENTITY.copy()]
    if name == "Ci":
        return [INVERSION.copy()]
    if name == "Cs":
        return [SIGMA_H.copy()]
    if name in AXIAL:
        c = rz(2 * np.pi / n)
        if name == "Cn":
            return [c]
        if name == "Cnv":
            return [c, SIGMA_X]
        if name == "Cnh":
            return [c, SIGMA_H]
        if name == "S2n":
            return [rz(np.pi / n) @ SIGMA_H]
        if name == "Dn":
            return [c, rx(np.pi)]
        if name == "Dnh":
            return [c, rx(np.pi), SIGMA_H]
        if name == "Dnd":
            return [c, rx(np.pi), rz(np.pi / n) @ SIGMA_H]
    t = [rz(np.pi), rx(np.pi), rotation((1, 1, 1), 2 * np.pi / 3)]
    if name == "T":
        return t
    if name == "Td":
        return t + [mirror((1, -1, 0))]
    if name == "Th":
        return t + [INVERSION]
    if name == "O":
        return [rz(np.pi / 2), rx(np.pi / 2)]
    if name == "Oh":
        return [rz(np.pi / 2), rx(np.pi / 2), INVERSION]
    ico = [rz(2 * np.pi / 5), rotation(ICO_3FOLD, 2 * np.pi / 3)]
    if name == "I":
        return ico
    if name == "Ih":
        return ico + [INVERSION]
    raise UnknownName(name)


def close_matrices(gens: Sequence[np.ndarray], max_order: int = 1024) -> gc.FiniteGroup:
    return gc.close_generators(list(gens), lambda a, b: a @ b, gc.matrix_eq,
                               max_order=max_order, key=gc.matrix_key)


@lru_cache(maxsize=None)
def _canonical_group(name: str, n: Optional[int]) -> gc.FiniteGroup:
    return close_matrices(canonical_generators(name, n))


# ------------------------------------------------------------- point groups

@dataclass(frozen=True, eq=False)
class PointGroup:
    """A point group as (orientation, name, n).

    Finite names materialize ``group``, a FiniteGroup labelled by matrices.
    Symbolic names (Cinfv, Dinfh, O3, ...) only support membership tests and
    sampling.
    """

    orientation: np.ndarray
    name: str
    n: Optional[int] = None
    _group: Optional[gc.FiniteGroup] = field(default=None, repr=False)

    @property
    def symbolic(self) -> bool:
        return self.name in SYMBOLIC

    @property
    def label(self) -> str:
        return display_name(self.name, self.n)

    @property
    def group(self) -> gc.FiniteGroup:
        if self.symbolic:
            raise SymbolicGroup(f"{self.name} has no finite element list")
        if self._group is None:
            base = _canonical_group(self.name, self.n)
            g = self.orientation
            labels = [g @ m @ g.T for m in base.labels]
            object.__setattr__(self, "_group", gc.FiniteGroup(base.compose, labels, key=gc.matrix_key))
        return self._group

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def matrices(self) -> np.ndarray:
        return np.asarray(self.group.labels)

    def conjugated(self, g: np.ndarray) -> "PointGroup":
        """The point group g P g^-1 (g may be improper)."""
        g = np.asarray(g, dtype=float)
        if np.linalg.det(g) < 0:
            g = -g  # inversion is central, so -g conjugates identically
        return PointGroup(g @ self.orientation, self.name, self.n)

    def contains(self, m: np.ndarray, tol: float = TOL) -> bool:
        m = np.asarray(m, dtype=float)
        if self.symbolic:
            return symbolic_contains(self, m, tol)
        return bool((np.abs(self.matrices - m[None]).max(axis=(1, 2)) <= tol).any())

    def to_json(self) -> dict:
        out = {"orientation": self.orientation.ravel().tolist(), "name": self.name}
        if self.n is not None:
            out["n"] = self.n
        return out

    def __repr__(self) -> str:
        return f"PointGroup({self.label})"


def canonical_point_group(name: str, n: Optional[int] = None) -> PointGroup:
    """Point group in the canonical pose.

    Degenerate n=1 axial names are returned under their usual name
    (e.g. D1 -> C2 along x) with the orientation that realizes them.
    """
    fam, k = parse_name(name, n)
    if fam in SYMBOLIC:
        return PointGroup(np.eye(3), fam, None)
    if fam in AXIAL and k > MAX_N:
        raise BadParameter(f"n={k} exceeds the cap of {MAX_N} for realized groups")
    if fam in AXIAL and k == 1:
        return identify_point_group(_canonical_group(fam, 1))
    return PointGroup(np.eye(3), fam, k)


def same_elements(A: Sequence[np.ndarray], B: Sequence[np.ndarray], tol: float = TOL) -> bool:
    """Set equality of two matrix collections."""
    a = np.asarray(A).reshape(-1, 3, 3)
    b = np.asarray(B).reshape(-1, 3, 3)
    if len(a) != len(b):
        return False
    d = np.abs(a[:, None] - b[None, :]).max(axis=(2, 3))
    return bool((d.min(axis=1) <= tol).all() and (d.min(axis=0) <= tol).all())


def same_group(P: PointGroup, Q: PointGroup, tol: float = TOL) -> bool:
    return same_elements(P.matrices, Q.matrices, tol)


# ----------------------------------------------------------- symbolic groups

def _axis_fixed(m: np.ndarray, tol: float) -> np.ndarray:
    return m @ np.array([0.0, 0.0, 1.0])


def symbolic_contains(P: PointGroup, m: np.ndarray, tol: float = TOL) -> bool:
    """Membership in a symbolic group, tested in its own frame."""
    if not is_orthogonal(m, 1e-6):
        return False
    g = P.orientation
    local = g.T @ m @ g
    det = float(np.linalg.det(local))
    ez = local @ np.array([0.0, 0.0, 1.0])
    z = np.array([0.0, 0.0, 1.0])
    up = np.allclose(ez, z, atol=tol)
    down = np.allclose(ez, -z, atol=tol)
    name = P.name
    if name in ("O3", "Kh"):
        return True
    if name in ("SO3", "K"):
        return det > 0
    if name in ("Cinf", "SO2"):
        return det > 0 and up
    if name == "Cinfv":
        return up
    if name == "Cinfh":
        return (det > 0 and up) or (det < 0 and down)
    if name in ("Dinf", "O2"):
        return det > 0 and (up or down)
    if name == "Dinfh":
        return up or down
    raise Unsupported(name)


def sample_group_element(P: PointGroup, rng_seed: int) -> np.ndarray:
    """Uniform element of a finite group, Haar sample of a symbolic one."""
    rng = np.random.default_rng(rng_seed)
    return _sample(P, rng)


def _sample(P: PointGroup, rng: np.random.Generator) -> np.ndarray:
    if not P.symbolic:
        mats = P.matrices
        return mats[int(rng.integers(len(mats)))].copy()
    name = P.name
    if name not in SAMPLEABLE:
        raise Unsupported(f"cannot sample {name}")
    if name in ("SO3", "K", "O3", "Kh"):
        r = random_rotation(rng)
        if name in ("O3", "Kh") and rng.integers(2):
            r = -r
        return r
    r = rz(rng.uniform(0, 2 * np.pi))
    if name in ("Cinfv",) and rng.integers(2):
        r = r @ SIGMA_X
    if name in ("Dinf", "O2", "Dinfh") and rng.integers(2):
        r = r @ rx(np.pi)
    if name in ("Cinfh", "Dinfh") and rng.integers(2):
        r = r @ SIGMA_H
    g = P.orientation
    return g @ r @ g.T


def sample_many(P: PointGroup, count: int, rng_seed: int) -> list[np.ndarray]:
    rng = np.random.default_rng(rng_seed)
    return [_sample(P, rng) for _ in range(count)]


# -------------------------------------------------------------- irrep objects

_S2 = 1 / np.sqrt(2)
_S6 = 1 / np.sqrt(6)
L2_BASIS = np.array([
    [[0, 0, _S2], [0, 0, 0], [_S2, 0, 0]],
    [[0, _S2, 0], [_S2, 0, 0], [0, 0, 0]],
    [[-_S6, 0, 0], [0, 2 * _S6, 0], [0, 0, -_S6]],
    [[0, 0, 0], [0, 0, _S2], [0, _S2, 0]],
    [[-_S2, 0, 0], [0, 0, 0], [0, 0, _S2]],
])


def l2_to_matrix(c: Sequence[float]) -> np.ndarray:
    return np.tensordot(np.asarray(c, dtype=float), L2_BASIS, axes=1)


def matrix_to_l2(a: np.ndarray) -> np.ndarray:
    return np.tensordot(L2_BASIS, a, axes=([1, 2], [0, 1]))


@dataclass(frozen=True)
class Component:
    l: int
    parity: str
    coeffs: tuple

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise BadParameter(f"bad parity {self.parity!r}")
        if self.l < 0 or self.l > 2:
            raise UnsupportedIrrep(f"l={self.l} is not supported (l <= 2)")
        if len(self.coeffs) != 2 * self.l + 1:
            raise BadParameter(f"l={self.l} needs {2 * self.l + 1} coefficients")


@dataclass(frozen=True)
class IrrepObject:
    """A direct sum of real O(3) irreps, l <= 2."""

    components: tuple

    @classmethod
    def of(cls, *parts: tuple) -> "IrrepObject":
        return cls(tuple(Component(l, p, tuple(float(x) for x in c)) for l, p, c in parts))

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([np.asarray(c.coeffs, dtype=float) for c in self.components])

    def to_json(self) -> list:
        return [{"l": c.l, "parity": c.parity, "coeffs": list(c.coeffs)} for c in self.components]

    @classmethod
    def from_json(cls, data) -> "IrrepObject":
        if isinstance(data, dict):
            data = [data]
        try:
            return cls.of(*[(int(d["l"]), d["parity"], d["coeffs"]) for d in data])
        except (KeyError, TypeError) as e:
            raise BadParameter(f"malformed irrep object: {e}") from None

    def close_to(self, other: "IrrepObject", tol: float = OBJECT_TOL) -> bool:
        if [(c.l, c.parity) for c in self.components] != [(c.l, c.parity) for c in other.components]:
            return False
        return bool(np.max(np.abs(self.vector - other.vector), initial=0.0) <= tol)

    def key(self, grid: float = OBJECT_TOL) -> tuple:
        sig = tuple((c.l, c.parity) for c in self.components)
        return sig, gc.matrix_key(self.vector, grid)


def vector(v: Sequence[float]) -> IrrepObject:
    """Polar vector (odd l=1)."""
    return IrrepObject.of((1, "odd", v))


def pseudovector(v: Sequence[float]) -> IrrepObject:
    return IrrepObject.of((1, "even", v))


def scalar(x: float = 1.0) -> IrrepObject:
    return IrrepObject.of((0, "even", [x]))


def pseudoscalar(x: float = 1.0) -> IrrepObject:
    return IrrepObject.of((0, "odd", [x]))


def l2(c: Sequence[float], parity: str = "even") -> IrrepObject:
    return IrrepObject.of((2, parity, c))


def act_component(g: np.ndarray, comp: Component) -> Component:
    det = 1.0 if np.linalg.det(g) > 0 else -1.0
    c = np.asarray(comp.coeffs, dtype=float)
    if comp.l == 0:
        out = c * det if comp.parity == "odd" else c
    elif comp.l == 1:
        # a polar vector is odd: v -> g v; a pseudovector picks up det(g)
        out = g @ c if comp.parity == "odd" else det * (g @ c)
    else:
        a = l2_to_matrix(c)
        out = matrix_to_l2(g @ a @ g.T)
        if comp.parity == "odd":
            out = det * out
    return Component(comp.l, comp.parity, tuple(float(x) for x in out))


def act(g: np.ndarray, obj: IrrepObject) -> IrrepObject:
    g = np.asarray(g, dtype=float)
    return IrrepObject(tuple(act_component(g, c) for c in obj.components))


def irrep_action(P: PointGroup, tol: float = OBJECT_TOL) -> gc.GroupAction:
    """GroupAction of P's element indices on IrrepObjects."""
    mats = P.matrices
    return gc.GroupAction(
        apply=lambda i, x: act(mats[i], x),
        eq=lambda a, b: a.close_to(b, tol),
        key=lambda x: x.key(),
    )


def object_stabilizer(P: PointGroup, obj: IrrepObject, tol: float = OBJECT_TOL) -> gc.Subgroup:
    return gc.stabilizer(P.group, irrep_action(P, tol), obj)


def object_orbit(P: PointGroup, obj: IrrepObject, tol: float = OBJECT_TOL) -> list[IrrepObject]:
    return gc.orbit(P.group, irrep_action(P, tol), obj)


# ------------------------------------------------------------ identification

def _classify_rotations(mats: np.ndarray, tol: float):
    """Rotation census: list of (axis, order) for proper non-identity elements."""
    out = []
    for m in mats:
        if np.linalg.det(m) < 0 or np.abs(m - np.eye(3)).max() <= tol:
            continue
        ang = rotation_angle(m)
        k = int(round(2 * np.pi / ang)) if ang > 1e-9 else 1
        out.append((rotation_axis(m), k))
    return out


def _unique_axes(axes: list[np.ndarray]) -> list[np.ndarray]:
    uniq: list[np.ndarray] = []
    for a in axes:
        if not any(abs(abs(float(a @ b)) - 1) < 1e-7 for b in uniq):
            uniq.append(a)
    return uniq


def _with_signs(axes: list[np.ndarray]) -> list[np.ndarray]:
    both = []
    for a in axes:
        both.extend([a, -a])
    return sorted(both, key=lambda u: tuple(-u), reverse=False)


def _frame(z: np.ndarray, x: np.ndarray) -> np.ndarray:
    z = z / np.linalg.norm(z)
    x = x - (x @ z) * z
    x = x / np.linalg.norm(x)
    return np.column_stack([x, np.cross(z, x), z])


def _default_perp(z: np.ndarray) -> np.ndarray:
    for e in (np.array([1.0, 0, 0]), np.array([0, 1.0, 0])):
        if abs(e @ z) < 0.9:
            return e
    return np.array([0, 0, 1.0])


def _candidates(mats: np.ndarray, tol: float) -> list[tuple[str, Optional[int]]]:
    N = len(mats)
    proper = [m for m in mats if np.linalg.det(m) > 0]
    r = len(proper)
    rots = _classify_rotations(np.asarray(proper), tol)
    high = _unique_axes([a for a, k in rots if k >= 3])
    improper = N != r
    if N == 1:
        return [("C1", None)]
    if r == 1:
        return [("Ci", None), ("Cs", None)] if N == 2 else []
    if len(high) > 1:
        poly = {12: ["T", "Td", "Th"], 24: ["O", "Oh"], 60: ["I", "Ih"]}.get(r, [])
        return [(nm, None) for nm in poly]
    n = max(k for _, k in rots)
    if r == n:
        if not improper:
            return [("Cn", n)]
        return [("Cnv", n), ("Cnh", n), ("S2n", n)]
    if r == 2 * n:
        if not improper:
            return [("Dn", n)]
        return [("Dnh", n), ("Dnd", n)]
    if r == 4 and n == 2:
        return [("Dn", 2)] if not improper else [("Dnh", 2), ("Dnd", 2)]
    return []


def _orientation_candidates(name: str, mats: np.ndarray, tol: float):
    proper = [m for m in mats if np.linalg.det(m) > 0]
    rots = _classify_rotations(np.asarray(proper), tol)
    improper_axes = [rotation_axis(-m) for m in mats
                     if np.linalg.det(m) < 0 and np.abs(m + np.eye(3)).max() > tol]
    mirrors = [rotation_axis(-m) for m in mats
               if np.linalg.det(m) < 0 and abs(np.trace(m) - 1) < 1e-7]
    if name in ("C1", "Ci"):
        yield np.eye(3)
        return
    if name == "Cs":
        for z in _with_signs(_unique_axes(mirrors)):
            yield _frame(z, _default_perp(z))
        return
    if name in ("T", "Td", "Th", "O", "Oh"):
        k = 4 if name in ("O", "Oh") else 2
        axes = _with_signs(_unique_axes([a for a, o in rots if o == k]))
        for z in axes:
            for x in axes:
                if abs(x @ z) < 1e-7:
                    yield _frame(z, x)
        return
    if name in ("I", "Ih"):
        fives = _with_signs(_unique_axes([a for a, o in rots if o == 5]))
        threes = _with_signs(_unique_axes([a for a, o in rots if o == 3]))
        for z in fives:
            for t in threes:
                if abs(t @ z - ICO_3FOLD[2]) < 1e-6:
                    yield _frame(z, t)
        return
    n = max([k for _, k in rots], default=1)
    zs = [a for a, k in rots if k == n]
    if name == "S2n":
        zs = zs + improper_axes
    if name == "Dnd" and n == 2:
        zs = improper_axes + zs
    for z in _with_signs(_unique_axes(zs)):
        twofold = [a for a, k in rots if k == 2 and abs(a @ z) < 1e-7]
        perp_mirrors = [a for a in mirrors if abs(a @ z) < 1e-7]
        xs = _with_signs(_unique_axes(twofold)) + _with_signs(_unique_axes(perp_mirrors))
        if not xs:
            xs = [_default_perp(z)]
        for x in xs:
            yield _frame(z, x)


def identify_point_group(G, tol: float = TOL) -> PointGroup:
    """Name and orientation of a finite group of orthogonal matrices.

    Accepts a FiniteGroup with matrix labels or a sequence of matrices.
    """
    mats = np.asarray(G.labels if isinstance(G, gc.FiniteGroup) else G, dtype=float).reshape(-1, 3, 3)
    if len(mats) > 120:
        raise NotAPointGroup("more than 120 elements")
    if not all(is_orthogonal(m, max(tol, 1e-9) * 100) for m in mats):
        raise NotAPointGroup("a matrix is not orthogonal")
    for name, n in _candidates(mats, tol):
        if standard_order(name, n) != len(mats) or (n is not None and n > MAX_N):
            continue
        base = _canonical_group(name, n).labels
        for g in _orientation_candidates(name, mats, tol):
            if np.linalg.det(g) < 0:
                g = -g
            if same_elements([g @ m @ g.T for m in base], mats, max(tol, 1e-7)):
                return PointGroup(g, name, n)
    raise NotAPointGroup("no point group name matches")
