"""Dual cones and outer angles of polytope faces.

The outer angle of a k-face of a d-polytope is the solid-angle fraction of
its dual cone inside the (d-k)-dimensional space E_Delta^perp ∩ E_Gamma.
Improper faces and facets have exact angles (1 and 1/2); everything else is
estimated by Monte Carlo classification of uniform directions sampled in that
normal space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import complex_linalg as cl
from .numerics import DEFAULT_TOLERANCE, RandomStream, Tolerance, sphere_sample
from .polytope import Face, FaceNotFound, Polytope

__all__ = [
    "AngleEstimate",
    "DualCone",
    "dual_cone",
    "outer_angle",
    "vertex_angle_partition",
    "AnglePass",
    "DEFAULT_ANGLE_SAMPLES",
]

DEFAULT_ANGLE_SAMPLES = 2_000_000
_CHUNK = 250_000


@dataclass(frozen=True)
class AngleEstimate:
    value: float
    std_error: float
    method: str  # "exact" or "monte_carlo"


@dataclass(frozen=True, eq=False)
class DualCone:
    """Dual cone of a face, living in E_Delta^perp ∩ E_Gamma."""

    face_id: tuple[int, ...]
    generators: tuple[np.ndarray, ...]  # outer normals of the facets containing the face
    ambient_basis: cl.SubspaceBasis  # orthonormal basis of the space the cone spans
    witness: np.ndarray  # a relative-interior direction (zero for the improper face)


def _normal_space(P: Polytope, face: Face, tol: Tolerance) -> cl.SubspaceBasis:
    """Orthonormal basis of E_Delta^perp ∩ E_Gamma."""
    span = P.span_basis.vectors
    if face.k == 0:
        return cl.SubspaceBasis(P.ambient_n, span)
    fb = face.hull_basis.vectors
    residual = span - (span @ fb.T) @ fb
    return cl.SubspaceBasis.from_span(P.ambient_n, residual, tol)


def _orthocomplement(P: Polytope, tol: Tolerance) -> cl.SubspaceBasis:
    """Orthonormal basis of E_Gamma^perp in R^{2n}."""
    span = P.span_basis.vectors
    eye = np.eye(2 * P.ambient_n)
    residual = eye - (eye @ span.T) @ span
    return cl.SubspaceBasis.from_span(P.ambient_n, residual, tol)


def dual_cone(P: Polytope, face_id, tol: Tolerance = DEFAULT_TOLERANCE) -> DualCone:
    face = P.face_by_ids(face_id)
    if face.id == P.improper_face.id:
        basis = _orthocomplement(P, tol)
        return DualCone(face.vertex_ids, (), basis, np.zeros(2 * P.ambient_n))
    generators = tuple(P.facets_containing(face))
    if not generators:
        raise FaceNotFound(sorted(face.id))
    return DualCone(face.vertex_ids, generators, _normal_space(P, face, tol),
                    P.witness_direction(face))


def _classify(
    P: Polytope,
    face: Face,
    basis: cl.SubspaceBasis,
    samples: int,
    stream: RandomStream,
    tol: Tolerance,
) -> AngleEstimate:
    """Fraction of directions in the cone's span whose support face equals the face."""
    member = np.array(sorted(face.id))
    other = np.array(sorted(frozenset(range(P.n_vertices)) - face.id))
    scale_ = max(1.0, float(np.abs(P.vertices).max()))
    delta = tol.geom_eps * scale_ * 10
    hits = 0
    valid = 0
    done = 0
    chunk_idx = 0
    while done < samples:
        m = min(_CHUNK, samples - done)
        dirs = sphere_sample(basis.d, stream.substream(chunk_idx), m) @ basis.vectors
        vals = dirs @ P.vertices.T
        v_face = vals[:, member[0]]
        v_other = vals[:, other].max(axis=1)
        gap = v_face - v_other
        ambiguous = np.abs(gap) <= delta
        hits += int(np.sum(gap > delta))
        valid += m - int(np.sum(ambiguous))
        done += m
        chunk_idx += 1
    p = hits / valid if valid else 0.0
    err = float(np.sqrt(p * (1.0 - p) / valid)) if valid else float("inf")
    return AngleEstimate(p, err, "monte_carlo")


def outer_angle(
    P: Polytope,
    face_id,
    samples: int = DEFAULT_ANGLE_SAMPLES,
    stream: RandomStream = RandomStream(),
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> AngleEstimate:
    face = P.face_by_ids(face_id)
    d = P.dim_real
    if face.k == d:
        return AngleEstimate(1.0, 0.0, "exact")
    if face.k == d - 1:
        return AngleEstimate(0.5, 0.0, "exact")
    basis = _normal_space(P, face, tol)
    return _classify(P, face, basis, samples, stream, tol)


def vertex_angle_partition(
    P: Polytope,
    samples: int = DEFAULT_ANGLE_SAMPLES,
    stream: RandomStream = RandomStream(),
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> dict[frozenset[int], AngleEstimate]:
    """Angles of all vertices from a single sampling pass over the sphere of E_Gamma."""
    if P.dim_real == 0:
        only = P.faces[0][0]
        return {only.id: AngleEstimate(1.0, 0.0, "exact")}
    span = P.span_basis
    scale_ = max(1.0, float(np.abs(P.vertices).max()))
    delta = tol.geom_eps * scale_ * 10
    counts = np.zeros(P.n_vertices, dtype=np.int64)
    valid = 0
    done = 0
    chunk_idx = 0
    while done < samples:
        m = min(_CHUNK, samples - done)
        dirs = sphere_sample(span.d, stream.substream(chunk_idx), m) @ span.vectors
        vals = dirs @ P.vertices.T
        order = np.argsort(vals, axis=1)
        best = order[:, -1]
        second = vals[np.arange(m), order[:, -2]] if P.n_vertices > 1 else np.full(m, -np.inf)
        ok = vals[np.arange(m), best] - second > delta
        np.add.at(counts, best[ok], 1)
        valid += int(np.sum(ok))
        done += m
        chunk_idx += 1
    out = {}
    for v in range(P.n_vertices):
        p = counts[v] / valid if valid else 0.0
        err = float(np.sqrt(p * (1.0 - p) / valid)) if valid else float("inf")
        out[frozenset({v})] = AngleEstimate(float(p), err, "monte_carlo")
    return out


class AnglePass:
    """Shared, cached angle computation for all faces of one polytope.

    Per-face Monte Carlo runs use substreams derived from the face's position
    in the lattice, so results are deterministic in (seed, stream_id, samples).
    """

    def __init__(
        self,
        P: Polytope,
        samples: int = DEFAULT_ANGLE_SAMPLES,
        stream: RandomStream = RandomStream(),
        tol: Tolerance = DEFAULT_TOLERANCE,
    ) -> None:
        self.polytope = P
        self.samples = samples
        self.stream = stream
        self.tol = tol
        self._cache: dict[frozenset[int], AngleEstimate] = {}
        self._order = {f.id: i for i, f in enumerate(P.all_faces())}

    def angle(self, face: Face) -> AngleEstimate:
        key = face.id
        if key not in self._cache:
            sub = self.stream.substream(self._order.get(key, len(self._order)))
            self._cache[key] = outer_angle(self.polytope, key, self.samples, sub, self.tol)
        return self._cache[key]
