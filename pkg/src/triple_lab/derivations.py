"""Derivation spaces of the triple and symmetrized products, and the
predicates separating local triple derivations from triple derivations."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, TooLarge, Unsupported
from .factors import complexify, extend_map_complex
from .numerics import expm, least_squares_residual, null_space, orthonormal_columns
from .report import Report, STATUS_FAIL, STATUS_PASS
from .structure import peirce
from .triple_core import (
    Element,
    L_operator,
    LinearMap,
    TripleSystem,
    _same_system,
)

KINDS = ("triple", "symmetrized", "inner_span")
DEFAULT_SEED = 0xA11CE
DEFAULT_SAMPLES = 256

# Above this many matrix entries the Leibniz system is not stacked densely;
# its Gram matrix is accumulated instead (same kernel, bounded memory).
_DENSE_ENTRY_LIMIT = 2 * 10**8


@dataclass(frozen=True)
class DerivationSpace:
    """Orthonormal basis (Frobenius inner product) of a derivation space."""

    system: TripleSystem
    kind: str
    basis: tuple
    tol: float

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_stack(self) -> np.ndarray:
        n = self.system.dim
        if not self.basis:
            return np.zeros((0, n, n))
        return np.stack([t.entries for t in self.basis])

    def member(self, weights) -> LinearMap:
        """The combination sum_r weights[r] * basis[r]."""
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (self.dim,):
            raise InvalidInput(f"need {self.dim} weights, got {weights.shape}")
        n = self.system.dim
        entries = np.zeros((n, n))
        for w, t in zip(weights, self.basis):
            entries += w * t.entries
        return LinearMap(self.system, entries)

    def project_map(self, t: LinearMap) -> float:
        """Distance from ``t`` to the span of the basis (Frobenius norm)."""
        vec = t.entries.reshape(-1)
        stack = self.basis_stack().reshape(self.dim, -1)
        if self.dim == 0:
            return float(np.linalg.norm(vec))
        return float(np.linalg.norm(vec - stack.T @ (stack @ vec)))


def _leibniz_triples(n: int, kind: str):
    if kind == "triple":
        # outer-slot symmetry {x,y,z} = {z,y,x} halves the outer pairs
        return [(i, j, k) for i in range(n) for j in range(n) for k in range(i, n)]
    # the symmetrized tensor is fully symmetric
    return list(itertools.combinations_with_replacement(range(n), 3))


def _leibniz_block(p: np.ndarray, i: int, j: int, k: int) -> np.ndarray:
    """Rows (over output coordinates) of the Leibniz condition at one triple."""
    n = p.shape[0]
    blk = np.zeros((n, n, n))
    rng = np.arange(n)
    blk[rng, rng, :] = p[i, j, k, :]
    blk[:, :, i] -= p[:, j, k, :].T
    blk[:, :, j] -= p[i, :, k, :].T
    blk[:, :, k] -= p[i, j, :, :].T
    return blk.reshape(n, n * n)


def _assemble_leibniz(p: np.ndarray, kind: str, tol: float) -> np.ndarray:
    """Null space of the Leibniz system, rows scaled to unit norm.

    Rows whose norm is at roundoff scale are identically-zero conditions
    (the structure constants are exact algebraic numbers); normalizing them
    would amplify noise into spurious constraints, so they are dropped.
    """
    n = p.shape[0]
    triples = _leibniz_triples(n, kind)
    total_rows = n * len(triples)
    noise = 1e-10 * max(1.0, float(np.max(np.abs(p))))
    if total_rows * n * n <= _DENSE_ENTRY_LIMIT:
        rows = []
        for i, j, k in triples:
            blk = _leibniz_block(p, i, j, k)
            norms = np.linalg.norm(blk, axis=1)
            keep = norms > noise
            if keep.any():
                rows.append(blk[keep] / norms[keep, None])
        if not rows:
            return np.eye(n * n)
        return null_space(np.vstack(rows), tol=tol)
    # Gram accumulation: kernel of A equals kernel of A^T A.  Eigenvalues are
    # squared singular values, so the threshold floor is widened; the spectral
    # gaps of these algebraic systems are O(1) and classification stays exact.
    gram = np.zeros((n * n, n * n))
    for i, j, k in triples:
        blk = _leibniz_block(p, i, j, k)
        norms = np.linalg.norm(blk, axis=1)
        keep = norms > noise
        if keep.any():
            blk = blk[keep] / norms[keep, None]
            gram += blk.T @ blk
    eigvals, eigvecs = np.linalg.eigh(gram)
    top = eigvals[-1] if eigvals.size else 0.0
    if top <= 0:
        return np.eye(n * n)
    cutoff = max(tol, 1e-7) ** 2 * top
    kernel = eigvecs[:, eigvals <= cutoff]
    return kernel


def derivation_space(
    system: TripleSystem,
    kind: str,
    tol: float = 1e-9,
    max_dim: int = 64,
) -> DerivationSpace:
    """Orthonormal basis of a derivation space, deterministically computed.

    ``kind``:
      * ``triple``       -- Leibniz rule for the triple product;
      * ``symmetrized``  -- Leibniz rule for the fully symmetric product,
        obtained by polarizing the cubic identity;
      * ``inner_span``   -- span of the maps L(e_i, e_j) - L(e_j, e_i).
    """
    if kind not in KINDS:
        raise InvalidInput(f"unknown derivation kind {kind!r}")
    if system.dim > max_dim:
        raise TooLarge(f"dimension {system.dim} exceeds the cap of {max_dim}")
    n = system.dim
    if n == 0:
        return DerivationSpace(system, kind, (), tol)
    if kind == "inner_span":
        vectors = []
        for i in range(n):
            for j in range(i + 1, n):
                delta = (
                    np.einsum("abkl,a,b->lk", system.tensor, _unit(n, i), _unit(n, j))
                    - np.einsum("abkl,a,b->lk", system.tensor, _unit(n, j), _unit(n, i))
                )
                vectors.append(delta.reshape(-1))
        if not vectors:
            return DerivationSpace(system, kind, (), tol)
        basis_matrix = orthonormal_columns(np.column_stack(vectors), tol=tol)
    else:
        p = system.product_tensor(kind)
        basis_matrix = _assemble_leibniz(p, kind, tol)
    maps = tuple(
        LinearMap(system, basis_matrix[:, r].reshape(n, n))
        for r in range(basis_matrix.shape[1])
    )
    space = DerivationSpace(system, kind, maps, tol)
    _validate_space(space)
    return space


def _unit(n: int, i: int) -> np.ndarray:
    v = np.zeros(n)
    v[i] = 1.0
    return v


def _validate_space(space: DerivationSpace) -> None:
    if space.dim == 0:
        return
    stack = space.basis_stack().reshape(space.dim, -1)
    gram = stack @ stack.T
    if float(np.max(np.abs(gram - np.eye(space.dim)))) > 1e-10:
        raise InvalidInput("derivation basis lost orthonormality")
    leibniz_kind = "triple" if space.kind == "inner_span" else space.kind
    worst = max(
        leibniz_residual(t, leibniz_kind)["max_residual"] for t in space.basis
    )
    if worst > 10 * max(space.tol, 1e-9):
        raise InvalidInput(
            f"derivation basis violates its Leibniz identity (residual {worst:.3e})"
        )


def inner_derivation(a: Element, b: Element) -> LinearMap:
    """The inner triple derivation L(a,b) - L(b,a)."""
    _same_system(a, b)
    return L_operator(a, b) - L_operator(b, a)


def leibniz_residual(t: LinearMap, kind: str) -> dict:
    """Max Leibniz defect of ``t`` over all basis triples, with its witness."""
    if kind not in ("triple", "symmetrized"):
        raise InvalidInput(f"no Leibniz identity for kind {kind!r}")
    p = t.system.product_tensor(kind)
    m = t.entries
    res = np.einsum("lm,ijkm->ijkl", m, p, optimize=True)
    res -= np.einsum("mi,mjkl->ijkl", m, p, optimize=True)
    res -= np.einsum("mj,imkl->ijkl", m, p, optimize=True)
    res -= np.einsum("mk,ijml->ijkl", m, p, optimize=True)
    if res.size == 0:
        return {"max_residual": 0.0, "witness_triple": None}
    norms = np.sqrt(np.einsum("ijkl,ijkl->ijk", res, res))
    worst = np.unravel_index(int(norms.argmax()), norms.shape)
    i, j, k = (int(v) for v in worst)
    applied = m @ p[i, j, k, :]
    defect = res[i, j, k, :]
    return {
        "max_residual": float(norms.max()),
        "witness_triple": (i, j, k),
        "witness_lhs": applied,
        "witness_leibniz_sum": applied - defect,
    }


def is_derivation(t: LinearMap, kind: str = "triple", tol: float = 1e-10) -> Report:
    """Pass iff the Leibniz rule of the given product holds within tol."""
    start = time.perf_counter()
    data = leibniz_residual(t, kind)
    worst = data["max_residual"]
    status = STATUS_PASS if worst <= tol else STATUS_FAIL
    witnesses = {}
    if status == STATUS_FAIL:
        witnesses = {
            "basis_triple": list(data["witness_triple"]),
            "map_applied_to_product": data["witness_lhs"],
            "leibniz_sum": data["witness_leibniz_sum"],
        }
    return Report(
        statement_id=f"leibniz_{kind}[{t.system.name}]",
        status=status,
        residuals={"max_residual": worst},
        witnesses=witnesses,
        runtime_ms=int(1000 * (time.perf_counter() - start)),
    )


def default_point_set(
    system: TripleSystem,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> list:
    """Canonical basis plus seeded random unit elements."""
    rng = np.random.default_rng(seed)
    points = [system.basis_element(i) for i in range(system.dim)]
    for _ in range(int(samples)):
        coords = rng.standard_normal(system.dim)
        norm = np.linalg.norm(coords)
        if norm > 0:
            points.append(Element(system, coords / norm))
    return points


def local_derivation_residual(
    t: LinearMap,
    points,
    space: DerivationSpace | None = None,
    tol: float = 1e-8,
    seed: int | None = None,
) -> Report:
    """Worst pointwise distance of T(a) from {D(a) : D a triple derivation}.

    A pass on the sampled set is evidence; a fail is a certified refutation,
    because D(a) ranges over the full derivation space at each point.
    """
    start = time.perf_counter()
    points = list(points)
    if not points:
        raise InvalidInput("local_derivation_residual needs at least one point")
    if space is None:
        space = derivation_space(t.system, "triple")
    elif space.kind != "triple":
        raise InvalidInput("local derivation checks compare against kind='triple'")
    stack = space.basis_stack()
    worst = -1.0
    worst_point = None
    for el in points:
        if el.system is not t.system and el.system != t.system:
            raise InvalidInput("sample point from a different system")
        target = t.entries @ el.coords
        if space.dim == 0:
            residual = float(np.linalg.norm(target))
        else:
            evaluation = np.einsum("rnm,m->nr", stack, el.coords)
            residual = least_squares_residual(evaluation, target)
        if residual > worst:
            worst = residual
            worst_point = el
    status = STATUS_PASS if worst <= tol else STATUS_FAIL
    return Report(
        statement_id=f"local_derivation[{t.system.name}]",
        status=status,
        residuals={"max_residual": worst},
        witnesses={"worst_point": worst_point.coords, "points": len(points)},
        seed=seed,
        runtime_ms=int(1000 * (time.perf_counter() - start)),
    )


def rank_one_local_witness(t: LinearMap, x: Element) -> LinearMap:
    """Inner derivation matching T at x on a rank-one factor.

    With u = x/||x||, the witness is (1 / (2||x||)) * d(T(x) + 3 P1(u)T(x), u)
    where d(a, b) = L(a,b) - L(b,a).  For T in the symmetrized derivation
    space this reproduces T(x) at x to rounding.
    """
    system = _same_system(x)
    if t.system is not system and t.system != system:
        raise InvalidInput("map and point belong to different systems")
    if system.rank_hint != 1:
        raise Unsupported("the witness formula is limited to rank-one factors")
    norm = x.norm()
    if norm == 0.0:
        raise InvalidInput("x must be nonzero")
    u = Element(system, x.coords / norm)
    ps = peirce(u)
    tx = Element(system, t.entries @ x.coords)
    w = Element(system, tx.coords + 3.0 * (ps.p1.entries @ tx.coords))
    delta = inner_derivation(w, u)
    return LinearMap(system, delta.entries / (2.0 * norm))


def check_complex_linearity(space: DerivationSpace, tol: float = 1e-8) -> Report:
    """Commutation of every basis member with the complex structure J."""
    j = space.system.complex_structure
    if j is None:
        raise Unsupported(f"{space.system.name} carries no complex structure")
    start = time.perf_counter()
    worst = 0.0
    worst_index = None
    per_member = []
    for idx, t in enumerate(space.basis):
        comm = float(np.linalg.norm(t.entries @ j - j @ t.entries))
        per_member.append(comm)
        if comm > worst:
            worst = comm
            worst_index = idx
    status = STATUS_PASS if worst <= tol else STATUS_FAIL
    return Report(
        statement_id=f"complex_linearity[{space.system.name}:{space.kind}]",
        status=status,
        residuals={"max_commutator": worst},
        witnesses={
            "worst_member": worst_index,
            "commutators": per_member,
        },
        runtime_ms=int(1000 * (time.perf_counter() - start)),
    )


def exp_flow_check(
    t: LinearMap,
    kind: str,
    t_grid,
    tol: float = 1e-7,
) -> Report:
    """Automorphism defect of exp(tT) for the product of the given kind.

    For each t the residual is the worst basis-triple defect
    ||g{x,y,z} - {gx,gy,gz}||, compared against tol * (1 + ||g||^3).
    """
    start = time.perf_counter()
    p = t.system.product_tensor(kind)
    residuals = {}
    status = STATUS_PASS
    witness = {}
    for value in t_grid:
        g = expm(float(value) * t.entries)
        lhs = np.einsum("lm,ijkm->ijkl", g, p, optimize=True)
        rhs = np.einsum("ai,bj,ck,abcl->ijkl", g, g, g, p, optimize=True)
        diff = lhs - rhs
        if diff.size == 0:
            worst = 0.0
        else:
            worst = float(np.sqrt(np.einsum("ijkl,ijkl->ijk", diff, diff).max()))
        bound = tol * (1.0 + np.linalg.norm(g, 2) ** 3)
        residuals[f"t={value:g}"] = worst
        if worst > bound:
            status = STATUS_FAIL
            witness[f"t={value:g}"] = {"residual": worst, "bound": bound}
    return Report(
        statement_id=f"exp_flow_{kind}[{t.system.name}]",
        status=status,
        residuals=residuals,
        witnesses=witness,
        runtime_ms=int(1000 * (time.perf_counter() - start)),
    )


def check_IAP_finite(system: TripleSystem, tol: float = 1e-8) -> Report:
    """Equality of the inner-derivation span and the triple-derivation space.

    In finite dimension the closure in the inner approximation property
    collapses to the plain span, so mutual containment is the expected
    rendering.  Checked through projections of each orthonormal basis onto
    the other.
    """
    start = time.perf_counter()
    der = derivation_space(system, "triple")
    inner = derivation_space(system, "inner_span")
    worst_inner = max((der.project_map(t) for t in inner.basis), default=0.0)
    worst_der = max((inner.project_map(t) for t in der.basis), default=0.0)
    ok = der.dim == inner.dim and worst_inner <= tol and worst_der <= tol
    return Report(
        statement_id=f"iap_span_equality[{system.name}]",
        status=STATUS_PASS if ok else STATUS_FAIL,
        residuals={
            "triple_dim": float(der.dim),
            "inner_dim": float(inner.dim),
            "inner_outside_triple": worst_inner,
            "triple_outside_inner": worst_der,
        },
        witnesses={} if ok else {"dims": [der.dim, inner.dim]},
        runtime_ms=int(1000 * (time.perf_counter() - start)),
    )


def two_local_lift(
    t: LinearMap,
    samples: int = 64,
    seed: int = DEFAULT_SEED,
) -> Report:
    """Lift T to T~(x + iy) = T(x) + iT(y) on the complexification and test it.

    The report records whether T~ is a local triple derivation and whether it
    is a triple derivation; the status is the lifted-derivation verdict.  For
    a map that agrees with a single derivation on every pair of points, the
    lift is expected to pass.
    """
    start = time.perf_counter()
    system = t.system
    if system.complex_structure is not None:
        raise InvalidInput("two_local_lift expects a map on a real form")
    complexified = complexify(system)
    lifted = extend_map_complex(t, complexified)
    space = derivation_space(complexified, "triple")
    local_report = local_derivation_residual(
        lifted,
        default_point_set(complexified, samples=samples, seed=seed),
        space=space,
        seed=seed,
    )
    derivation_report = is_derivation(lifted, "triple")
    return Report(
        statement_id=f"two_local_lift[{system.name}]",
        status=derivation_report.status,
        residuals={
            "lift_leibniz_residual": derivation_report.residuals["max_residual"],
            "lift_local_residual": local_report.residuals["max_residual"],
        },
        seed=seed,
        runtime_ms=int(1000 * (time.perf_counter() - start)),
        items=(local_report, derivation_report),
    )


# -- serialization of derivation spaces ----------------------------------------


def space_to_json(space: DerivationSpace) -> dict:
    return {
        "kind": space.kind,
        "dim": space.system.dim,
        "tol": space.tol,
        "basis": [[float(x) for x in t.entries.reshape(-1)] for t in space.basis],
    }


def space_from_json(payload: dict, system: TripleSystem) -> DerivationSpace:
    n = int(payload["dim"])
    if n != system.dim:
        raise InvalidInput("dimension mismatch between space and system")
    maps = tuple(
        LinearMap(system, np.asarray(flat, dtype=float).reshape(n, n))
        for flat in payload["basis"]
    )
    return DerivationSpace(system, str(payload["kind"]), maps, float(payload["tol"]))
