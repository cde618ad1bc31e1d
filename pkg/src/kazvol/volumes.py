"""Volumes, mixed volumes, and mixed discriminants.

Mixed volumes of polytopes are computed by the inclusion-exclusion
polarization of the volume over Minkowski subset sums.  Mixed discriminants
come with three independent evaluation paths (permutation definition, subset
inclusion-exclusion, Laplace-style expansion) plus a batched subset-formula
version for Monte Carlo integrands.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import complex_linalg as cl
from .numerics import DEFAULT_TOLERANCE, Tolerance
from .polytope import Polytope, convex_volume

__all__ = [
    "SizeMismatch",
    "SubspaceMismatch",
    "DegenerateFace",
    "MIXED_DISCRIMINANT_PERMUTATION_CAP",
    "face_volume",
    "mixed_volume",
    "mixed_volume_faces",
    "intrinsic_volume",
    "mixed_discriminant",
    "batch_mixed_discriminant",
    "alexandroff_gap",
    "facet_normal_sum",
    "volume_via_facets",
]

MIXED_DISCRIMINANT_PERMUTATION_CAP = 6


class SizeMismatch(ValueError):
    pass


class SubspaceMismatch(ValueError):
    pass


class DegenerateFace(ValueError):
    pass


def face_volume(P: Polytope, face_id) -> float:
    """k-dimensional volume of a face (1.0 for vertices by convention)."""
    return P.face_by_ids(face_id).volume_k


def _body_coords(P: Polytope, basis: cl.SubspaceBasis, tol: Tolerance) -> np.ndarray:
    """Coordinates of the vertices in the subspace frame, after translating to v0."""
    diffs = P.vertices - P.vertices[0]
    coords = diffs @ basis.vectors.T
    residual = diffs - coords @ basis.vectors
    scale_ = max(1.0, float(np.abs(P.vertices).max()))
    if residual.size and np.max(np.abs(residual)) > tol.geom_eps * scale_ * 100:
        raise SubspaceMismatch("body does not lie in a translate of the given subspace")
    return coords


def mixed_volume(
    bodies: list[Polytope],
    basis: cl.SubspaceBasis | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """Mixed volume V_k(A_1, ..., A_k) of k bodies in a common k-dim subspace.

    V_k is the polarization of the k-volume:
    V_k = (1/k!) sum_{I nonempty} (-1)^{k-|I|} vol_k(sum_{l in I} A_l).
    Each body may live in its own translate of the subspace.
    """
    k = len(bodies)
    if k == 0:
        raise SizeMismatch("need at least one body")
    if basis is None:
        stacked = np.vstack([p.vertices - p.vertices[0] for p in bodies])
        basis = cl.SubspaceBasis.from_span(bodies[0].ambient_n, stacked, tol)
    if basis.d != k:
        raise SizeMismatch(f"{k} bodies require a {k}-dimensional subspace, got {basis.d}")
    coords = [_body_coords(p, basis, tol) for p in bodies]
    total = 0.0
    for mask in range(1, 1 << k):
        members = [coords[i] for i in range(k) if mask >> i & 1]
        acc = members[0]
        for c in members[1:]:
            acc = (acc[:, None, :] + c[None, :, :]).reshape(-1, k)
        sign = (-1) ** (k - len(members))
        total += sign * convex_volume(acc)
    return total / math.factorial(k)


def mixed_volume_faces(
    P: Polytope, faces, tol: Tolerance = DEFAULT_TOLERANCE
) -> float:
    """Mixed volume of k faces of (summands of) a polytope sharing one k-dim span."""
    hulls = []
    for f in faces:
        pts = P.vertices[sorted(f.id)] if hasattr(f, "id") else np.asarray(f)
        from .polytope import hull  # local import avoids a cycle at module load

        hulls.append(hull(pts, tol))
    return mixed_volume(hulls, tol=tol)


def intrinsic_volume(P: Polytope, k: int, angles) -> float:
    """v_k(Gamma) = sum over k-faces of vol_k * outer angle.

    ``angles`` is a callable Face -> AngleEstimate (e.g. AnglePass.angle).
    """
    if k < 0 or k > P.dim_real:
        return 0.0
    return float(sum(f.volume_k * angles(f).value for f in P.faces.get(k, [])))


# ---------------------------------------------------------------------------
# Mixed discriminants


def _check_square(mats: list[np.ndarray]) -> tuple[int, list[np.ndarray]]:
    if not mats:
        raise SizeMismatch("need at least one matrix")
    out = [np.asarray(m) for m in mats]
    n = out[0].shape[0]
    for m in out:
        if m.shape != (n, n):
            raise SizeMismatch("all matrices must be square of equal size")
    if len(out) != n:
        raise SizeMismatch(f"need exactly {n} matrices of size {n}, got {len(out)}")
    return n, out


def _mixed_discriminant_permutation(mats: list[np.ndarray]) -> complex:
    n = len(mats)
    total = 0.0 + 0.0j
    cols = [np.asarray(m, dtype=complex) for m in mats]
    for sigma in itertools.permutations(range(n)):
        mixed = np.empty((n, n), dtype=complex)
        for ell in range(n):
            mixed[:, ell] = cols[sigma[ell]][:, ell]
        total += np.linalg.det(mixed)
    return total / math.factorial(n)


def _mixed_discriminant_subset(mats: list[np.ndarray]) -> complex:
    n = len(mats)
    total = 0.0 + 0.0j
    arrs = [np.asarray(m, dtype=complex) for m in mats]
    for mask in range(1, 1 << n):
        members = [arrs[i] for i in range(n) if mask >> i & 1]
        sign = (-1) ** (n - len(members))
        total += sign * np.linalg.det(sum(members))
    return total / math.factorial(n)


def _mixed_discriminant_laplace(mats: list[np.ndarray], ell: int = 0) -> complex:
    """Expansion along the ell-th matrix:
    D_n = (1/n) sum_{j,k} m^(ell)_{jk} (-1)^{j+k} D_{n-1}(others with row j, col k removed).
    """
    n = len(mats)
    if n == 1:
        return complex(np.asarray(mats[0], dtype=complex)[0, 0])
    m = np.asarray(mats[ell], dtype=complex)
    others = [np.asarray(mats[i], dtype=complex) for i in range(n) if i != ell]
    total = 0.0 + 0.0j
    for j in range(n):
        for k in range(n):
            if m[j, k] == 0:
                continue
            minors = [np.delete(np.delete(o, j, axis=0), k, axis=1) for o in others]
            total += m[j, k] * (-1) ** (j + k) * _mixed_discriminant_laplace(minors)
    return total / n


def mixed_discriminant(mats: list[np.ndarray], method: str = "auto") -> complex:
    """Mixed discriminant D_n(M_1, ..., M_n).

    Normalized so that D_n(M, ..., M) = det M.  Methods: "permutation"
    (n <= 6), "subset", "laplace", or "auto" (permutation when allowed,
    subset otherwise).
    """
    n, arrs = _check_square(mats)
    if method == "auto":
        method = "permutation" if n <= MIXED_DISCRIMINANT_PERMUTATION_CAP else "subset"
    if method == "permutation":
        if n > MIXED_DISCRIMINANT_PERMUTATION_CAP:
            raise SizeMismatch(
                f"permutation path limited to n <= {MIXED_DISCRIMINANT_PERMUTATION_CAP}"
            )
        value = _mixed_discriminant_permutation(arrs)
    elif method == "subset":
        value = _mixed_discriminant_subset(arrs)
    elif method == "laplace":
        value = _mixed_discriminant_laplace(arrs)
    else:
        raise ValueError(f"unknown method {method!r}")
    return value


def batch_mixed_discriminant(mats: list[np.ndarray]) -> np.ndarray:
    """Mixed discriminants of n stacks of matrices, shape (N, n, n) each -> (N,).

    Uses the subset inclusion-exclusion formula with numpy's batched det.
    """
    if not mats:
        raise SizeMismatch("need at least one stack")
    n = mats[0].shape[-1]
    if len(mats) != n:
        raise SizeMismatch(f"need exactly {n} stacks of {n}x{n} matrices")
    total = np.zeros(mats[0].shape[0], dtype=complex)
    for mask in range(1, 1 << n):
        members = [mats[i] for i in range(n) if mask >> i & 1]
        sign = (-1) ** (n - len(members))
        total += sign * np.linalg.det(sum(members))
    return total / math.factorial(n)


def alexandroff_gap(m: np.ndarray, other: np.ndarray, rest: list[np.ndarray] = ()) -> float:
    """D(M, N, rest)^2 - D(M, M, rest) * D(N, N, rest); non-negative for
    non-negative Hermitian arguments."""
    rest = list(rest)
    lhs = mixed_discriminant([m, other, *rest])
    rhs = mixed_discriminant([m, m, *rest]) * mixed_discriminant([other, other, *rest])
    return float(lhs.real**2 - rhs.real)


# ---------------------------------------------------------------------------
# Facet identities


def facet_normal_sum(P: Polytope) -> np.ndarray:
    """sum over facets of vol_{d-1}(facet) * outer unit normal; zero for a polytope."""
    total = np.zeros(2 * P.ambient_n)
    for ids, normal in P.facet_data:
        total += P.face_by_ids(ids).volume_k * normal
    return total


def volume_via_facets(P: Polytope) -> float:
    """vol_d(Gamma) = (1/d) sum over facets of h(u) * vol_{d-1}, with h taken
    relative to the centroid (the identity is translation invariant)."""
    d = P.dim_real
    if d == 0:
        return 1.0
    total = 0.0
    for ids, normal in P.facet_data:
        h = float(np.max((P.vertices - P.centroid) @ normal))
        total += h * P.face_by_ids(ids).volume_k
    return total / d
