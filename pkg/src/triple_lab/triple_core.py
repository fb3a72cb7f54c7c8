"""Triple systems as dense structure-constant tensors.

A system of dimension n stores the tensor c[i, j, k, l]: the l-th coordinate
of the product {e_i, e_j, e_k} of basis elements.  Everything is
real-trilinear; a complex structure, when present, travels as an explicit
matrix J with J^2 = -I so that complex-linearity is a checkable predicate
rather than a storage assumption.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, SystemMismatch, Unsupported
from .report import Report, STATUS_ADVISORY, STATUS_FAIL, STATUS_PASS

NORM_KINDS = ("operator", "spin", "hilbert", "product")

# n^4 tensor entries stay below ~1.7e7 for desk-scale systems.
MAX_DIM = 64


class TripleSystem:
    """A finite-dimensional real-trilinear triple system.

    The tensor is validated and then symmetrized in the outer slots, so
    c[i, j, k, l] == c[k, j, i, l] holds bit-exactly after construction.
    Instances are immutable; all operations on them are pure.
    """

    def __init__(
        self,
        name: str,
        tensor,
        norm_kind: str = "operator",
        rank_hint: int | None = None,
        complex_structure=None,
        factor_kind: str = "custom",
        blocks: tuple | None = None,
    ):
        tensor = np.array(tensor, dtype=float)
        if tensor.ndim != 4 or len(set(tensor.shape)) > 1:
            raise InvalidInput(f"tensor must be n^4, got shape {tensor.shape}")
        n = tensor.shape[0] if tensor.ndim == 4 else 0
        if n > MAX_DIM:
            raise InvalidInput(f"dimension {n} exceeds the cap of {MAX_DIM}")
        if tensor.size and not np.all(np.isfinite(tensor)):
            raise InvalidInput("tensor has non-finite entries")
        swapped = tensor.transpose(2, 1, 0, 3)
        if tensor.size and np.max(np.abs(tensor - swapped)) > 1e-10:
            raise InvalidInput("tensor is not symmetric in the outer slots")
        tensor = 0.5 * (tensor + swapped)
        tensor.flags.writeable = False
        if norm_kind not in NORM_KINDS:
            raise InvalidInput(f"unknown norm_kind {norm_kind!r}")

        if complex_structure is not None:
            complex_structure = np.array(complex_structure, dtype=float)
            if complex_structure.shape != (n, n):
                raise InvalidInput("complex_structure must be an n x n matrix")
            if n and np.max(np.abs(complex_structure @ complex_structure + np.eye(n))) > 1e-10:
                raise InvalidInput("complex_structure does not square to -identity")
            complex_structure.flags.writeable = False

        self.name = str(name)
        self.dim = n
        self.tensor = tensor
        self.norm_kind = norm_kind
        self.rank_hint = None if rank_hint is None else int(rank_hint)
        self.complex_structure = complex_structure
        self.factor_kind = str(factor_kind)
        # (offset, length, factor_kind) per summand; direct sums only.
        self.blocks = None if blocks is None else tuple(blocks)
        self._sym_tensor = None

    def __repr__(self):
        return f"TripleSystem({self.name!r}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, TripleSystem):
            return NotImplemented
        if self.dim != other.dim or not np.array_equal(self.tensor, other.tensor):
            return False
        a, b = self.complex_structure, other.complex_structure
        if (a is None) != (b is None):
            return False
        return a is None or np.array_equal(a, b)

    __hash__ = None

    # -- constructors for attached objects ---------------------------------

    def element(self, coords) -> "Element":
        return Element(self, coords)

    def basis_element(self, index: int) -> "Element":
        coords = np.zeros(self.dim)
        coords[index] = 1.0
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, np.zeros(self.dim))

    def linear_map(self, entries) -> "LinearMap":
        return LinearMap(self, entries)

    def identity_map(self) -> "LinearMap":
        return LinearMap(self, np.eye(self.dim))

    # -- products on raw coordinate arrays ---------------------------------

    def product_arrays(self, x, y, z) -> np.ndarray:
        return np.einsum("ijkl,i,j,k->l", self.tensor, x, y, z)

    def sym_tensor(self) -> np.ndarray:
        """Structure tensor of the fully symmetric product <a,b,c>."""
        if self._sym_tensor is None:
            c = self.tensor
            s = (c + np.einsum("kijl->ijkl", c) + np.einsum("jkil->ijkl", c)) / 3.0
            s.flags.writeable = False
            self._sym_tensor = s
        return self._sym_tensor

    def product_tensor(self, kind: str) -> np.ndarray:
        if kind == "triple":
            return self.tensor
        if kind == "symmetrized":
            return self.sym_tensor()
        raise InvalidInput(f"unknown product kind {kind!r}")


@dataclass(frozen=True, eq=False)
class Element:
    """Coordinate vector in a system's basis."""

    system: TripleSystem
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float).reshape(-1)
        if coords.shape[0] != self.system.dim:
            raise InvalidInput(
                f"coords length {coords.shape[0]} != system dim {self.system.dim}"
            )
        if coords.size and not np.all(np.isfinite(coords)):
            raise InvalidInput("coords have non-finite entries")
        object.__setattr__(self, "coords", coords)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def __add__(self, other: "Element") -> "Element":
        _same_system(self, other)
        return Element(self.system, self.coords + other.coords)

    def __sub__(self, other: "Element") -> "Element":
        _same_system(self, other)
        return Element(self.system, self.coords - other.coords)

    def __mul__(self, scalar: float) -> "Element":
        return Element(self.system, self.coords * float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Real-linear operator on a system, acting on coordinates from the left."""

    system: TripleSystem
    entries: np.ndarray

    def __post_init__(self):
        n = self.system.dim
        entries = np.asarray(self.entries, dtype=float)
        if entries.shape != (n, n):
            raise InvalidInput(f"entries must be {n} x {n}, got {entries.shape}")
        if entries.size and not np.all(np.isfinite(entries)):
            raise InvalidInput("entries have non-finite values")
        object.__setattr__(self, "entries", entries)

    def __call__(self, x: Element) -> Element:
        _same_system_map(self, x)
        return Element(self.system, self.entries @ x.coords)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        _same_system_map(self, other)
        return LinearMap(self.system, self.entries + other.entries)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        _same_system_map(self, other)
        return LinearMap(self.system, self.entries - other.entries)

    def __mul__(self, scalar: float) -> "LinearMap":
        return LinearMap(self.system, self.entries * float(scalar))

    __rmul__ = __mul__


def _same_system(*elements) -> TripleSystem:
    system = elements[0].system
    for e in elements[1:]:
        if e.system is not system and e.system != system:
            raise SystemMismatch("elements belong to different triple systems")
    return system


def _same_system_map(a, b) -> TripleSystem:
    if a.system is not b.system and a.system != b.system:
        raise SystemMismatch("objects belong to different triple systems")
    return a.system


# -- products and operators -------------------------------------------------


def triple_product(x: Element, y: Element, z: Element) -> Element:
    system = _same_system(x, y, z)
    return Element(system, system.product_arrays(x.coords, y.coords, z.coords))


def symmetrized_product(a: Element, b: Element, c: Element) -> Element:
    """Fully symmetric product <a,b,c>: the average of the three cyclic shifts."""
    system = _same_system(a, b, c)
    value = np.einsum("ijkl,i,j,k->l", system.sym_tensor(), a.coords, b.coords, c.coords)
    return Element(system, value)


def L_operator(a: Element, b: Element) -> LinearMap:
    """The map x -> {a, b, x}."""
    system = _same_system(a, b)
    entries = np.einsum("ijkl,i,j->lk", system.tensor, a.coords, b.coords)
    return LinearMap(system, entries)


def Q_operator(a: Element) -> LinearMap:
    """The map x -> {a, x, a}."""
    entries = np.einsum("ijkl,i,k->lj", a.system.tensor, a.coords, a.coords)
    return LinearMap(a.system, entries)


# -- axiom checks -------------------------------------------------------------


def check_jordan_identity(
    system: TripleSystem,
    tol: float = 1e-10,
    samples: int = 1000,
    seed: int = 0,
) -> Report:
    """Residual of L(a,b){xyz} = {L(a,b)x,y,z} - {x,L(b,a)y,z} + {x,y,L(a,b)z}.

    Exhaustive over basis 5-tuples for dim <= 8 (trilinearity makes that
    sufficient), randomized over seeded unit samples above.
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    start = time.perf_counter()
    n = system.dim
    c = system.tensor
    witness = {}
    used_seed = None
    if n == 0:
        max_residual = 0.0
    elif n <= 8:
        lhs = np.einsum("abml,xyzm->abxyzl", c, c, optimize=True)
        t1 = np.einsum("abxm,myzl->abxyzl", c, c, optimize=True)
        t2 = np.einsum("baym,xmzl->abxyzl", c, c, optimize=True)
        t3 = np.einsum("abzm,xyml->abxyzl", c, c, optimize=True)
        res = lhs - t1 + t2 - t3
        norms = np.sqrt(np.einsum("abxyzl,abxyzl->abxyz", res, res))
        max_residual = float(norms.max())
        if max_residual > tol:
            idx = np.unravel_index(int(norms.argmax()), norms.shape)
            witness = {"basis_tuple": [int(i) for i in idx]}
    else:
        used_seed = seed
        rng = np.random.default_rng(seed)
        count = max(int(samples), 1000)
        vecs = rng.standard_normal((5, count, n))
        vecs /= np.linalg.norm(vecs, axis=2, keepdims=True)
        a, b, x, y, z = vecs
        w = np.einsum("ijkl,bi,bj,bk->bl", c, x, y, z, optimize=True)
        lhs = np.einsum("ijkl,bi,bj,bk->bl", c, a, b, w, optimize=True)
        u = np.einsum("ijkl,bi,bj,bk->bl", c, a, b, x, optimize=True)
        t1 = np.einsum("ijkl,bi,bj,bk->bl", c, u, y, z, optimize=True)
        v = np.einsum("ijkl,bi,bj,bk->bl", c, b, a, y, optimize=True)
        t2 = np.einsum("ijkl,bi,bj,bk->bl", c, x, v, z, optimize=True)
        w2 = np.einsum("ijkl,bi,bj,bk->bl", c, a, b, z, optimize=True)
        t3 = np.einsum("ijkl,bi,bj,bk->bl", c, x, y, w2, optimize=True)
        norms = np.linalg.norm(lhs - t1 + t2 - t3, axis=1)
        max_residual = float(norms.max())
        if max_residual > tol:
            worst = int(norms.argmax())
            witness = {"sample_index": worst, "sample": vecs[:, worst, :]}
    status = STATUS_PASS if max_residual <= tol else STATUS_FAIL
    return Report(
        statement_id=f"jordan_identity[{system.name}]",
        status=status,
        residuals={"max_residual": max_residual},
        witnesses=witness,
        seed=used_seed,
        runtime_ms=int(1000 * (time.perf_counter() - start)),
    )


def check_norm_axiom(
    system: TripleSystem,
    samples: int,
    seed: int = 0,
    tol: float = 1e-8,
) -> Report:
    """Relative residual of ||{a,a,a}|| = ||a||^3 on seeded random elements."""
    from .factors import element_norm  # late import: factors builds on this module

    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0
    witness = {}
    for _ in range(int(samples)):
        coords = rng.standard_normal(system.dim)
        if not np.any(coords):
            continue
        cube = system.product_arrays(coords, coords, coords)
        lhs = element_norm(system, cube)
        rhs = element_norm(system, coords) ** 3
        rel = abs(lhs - rhs) / max(rhs, 1e-300)
        if rel > worst:
            worst = rel
            if rel > tol:
                witness = {"coords": coords, "cube_norm": lhs, "norm_cubed": rhs}
    status = STATUS_PASS if worst <= tol else STATUS_FAIL
    return Report(
        statement_id=f"norm_cube_identity[{system.name}]",
        status=status,
        residuals={"max_relative_residual": worst},
        witnesses=witness,
        seed=seed,
        runtime_ms=int(1000 * (time.perf_counter() - start)),
    )


def check_complex_structure(system: TripleSystem, tol: float = 1e-12) -> Report:
    """J-compatibility: {Jx,y,z} = J{x,y,z} and {x,Jy,z} = -J{x,y,z} on basis triples."""
    j = system.complex_structure
    if j is None:
        raise Unsupported(f"{system.name} carries no complex structure")
    start = time.perf_counter()
    c = system.tensor
    outer = np.einsum("ai,ajkl->ijkl", j, c) - np.einsum("lm,ijkm->ijkl", j, c)
    middle = np.einsum("aj,iakl->ijkl", j, c) + np.einsum("lm,ijkm->ijkl", j, c)
    square = j @ j + np.eye(system.dim)
    residuals = {
        "outer_linearity": float(np.max(np.abs(outer))) if outer.size else 0.0,
        "middle_conjugate_linearity": float(np.max(np.abs(middle))) if middle.size else 0.0,
        "j_squares_to_minus_identity": float(np.max(np.abs(square))) if square.size else 0.0,
    }
    worst = max(residuals.values())
    return Report(
        statement_id=f"complex_structure_compatibility[{system.name}]",
        status=STATUS_PASS if worst <= tol else STATUS_FAIL,
        residuals=residuals,
        witnesses={} if worst <= tol else {"tolerance": tol},
        runtime_ms=int(1000 * (time.perf_counter() - start)),
    )


def check_hermitian_surrogate(system: TripleSystem, tol: float = 1e-8) -> Report:
    """Advisory check: L(a,a) symmetric with nonnegative spectrum in coordinates.

    The constructed bases are orthonormal for the natural positive form of
    each factor, so coordinate symmetry of L(a,a) is the finite-dimensional
    surrogate for hermitian-ness.  Advisory only, never acceptance-blocking.
    """
    start = time.perf_counter()
    worst_asym = 0.0
    min_eig = 0.0
    for i in range(system.dim):
        a = np.zeros(system.dim)
        a[i] = 1.0
        m = np.einsum("ijkl,i,j->lk", system.tensor, a, a)
        worst_asym = max(worst_asym, float(np.max(np.abs(m - m.T))) if m.size else 0.0)
        if m.size:
            eigs = np.linalg.eigvalsh(0.5 * (m + m.T))
            min_eig = min(min_eig, float(eigs.min()))
    return Report(
        statement_id=f"hermitian_surrogate[{system.name}]",
        status=STATUS_ADVISORY,
        residuals={
            "max_asymmetry": worst_asym,
            "min_eigenvalue": min_eig,
            "tolerance": tol,
        },
        runtime_ms=int(1000 * (time.perf_counter() - start)),
    )


# -- serialization ------------------------------------------------------------


def system_to_json(system: TripleSystem) -> dict:
    """The wire format: exactly these keys, tensor flat in (i,j,k,l) row-major."""
    j = system.complex_structure
    return {
        "name": system.name,
        "dim": system.dim,
        "tensor": [float(x) for x in system.tensor.reshape(-1)],
        "norm_kind": system.norm_kind,
        "rank_hint": system.rank_hint,
        "complex_structure": None if j is None else [float(x) for x in j.reshape(-1)],
        "factor_kind": system.factor_kind,
    }


def system_from_json(payload: dict) -> TripleSystem:
    n = int(payload["dim"])
    tensor = np.asarray(payload["tensor"], dtype=float)
    if tensor.size != n**4:
        raise InvalidInput(f"tensor length {tensor.size} != dim^4 = {n ** 4}")
    tensor = tensor.reshape(n, n, n, n)
    j = payload.get("complex_structure")
    if j is not None:
        j = np.asarray(j, dtype=float)
        if j.size != n * n:
            raise InvalidInput("complex_structure length != dim^2")
        j = j.reshape(n, n)
    blocks = None
    factor_kind = str(payload.get("factor_kind", "custom"))
    if factor_kind.startswith("sum("):
        from .factors import blocks_from_kind  # late import, see check_norm_axiom

        blocks = blocks_from_kind(factor_kind)
    return TripleSystem(
        name=str(payload["name"]),
        tensor=tensor,
        norm_kind=str(payload["norm_kind"]),
        rank_hint=payload.get("rank_hint"),
        complex_structure=j,
        factor_kind=factor_kind,
        blocks=blocks,
    )


def save_system(system: TripleSystem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(system_to_json(system), fh, sort_keys=True, separators=(",", ":"))


def load_system(path) -> TripleSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return system_from_json(json.load(fh))


def linear_map_to_json(t: LinearMap) -> dict:
    return {
        "dim": t.system.dim,
        "entries": [float(x) for x in t.entries.reshape(-1)],
    }


def linear_map_from_json(payload: dict, system: TripleSystem) -> LinearMap:
    n = int(payload["dim"])
    if n != system.dim:
        raise InvalidInput(f"map dim {n} != system dim {system.dim}")
    entries = np.asarray(payload["entries"], dtype=float)
    if entries.size != n * n:
        raise InvalidInput("entries length != dim^2")
    return LinearMap(system, entries.reshape(n, n))
