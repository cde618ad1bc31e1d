"""Real-linear algebra inside C^n.

Points of C^n are stored as real 2n-vectors with interleaved coordinates
(x1, y1, ..., xn, yn), so z_l = xi[2l-2] + i*xi[2l-1].  The module provides
orthonormal subspace bases, the maximal complex subspace E^C = E ∩ iE, the
volume-distortion coefficient rho(E), and the realification of complex
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import DEFAULT_TOLERANCE, RandomStream, Tolerance

__all__ = [
    "NonOrthonormalBasis",
    "SubspaceBasis",
    "DistortionReport",
    "real_to_complex",
    "complex_to_real",
    "multiply_i",
    "hermitian_gram",
    "rho",
    "cr_decomposition",
    "realify",
    "random_unitary",
]


class NonOrthonormalBasis(ValueError):
    """Raised when a basis fails the orthonormality check."""


def real_to_complex(v: np.ndarray) -> np.ndarray:
    """Interleaved real 2n-vector(s) -> complex n-vector(s); works on batches."""
    v = np.asarray(v, dtype=float)
    return v[..., 0::2] + 1j * v[..., 1::2]


def complex_to_real(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],), dtype=float)
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def multiply_i(v: np.ndarray) -> np.ndarray:
    """Real representation of multiplication by i."""
    return complex_to_real(1j * real_to_complex(v))


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Ordered orthonormal real basis of an R-linear subspace of C^n.

    ``vectors`` has shape (d, 2n); rows are orthonormal with respect to the
    real scalar product Re<.,.> (the standard dot product in R^{2n}).
    """

    ambient_n: int
    vectors: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 * self.ambient_n:
            raise ValueError(f"expected shape (d, {2 * self.ambient_n}), got {v.shape}")
        object.__setattr__(self, "vectors", v)

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    def check(self, tol: Tolerance = DEFAULT_TOLERANCE) -> None:
        if self.d == 0:
            return
        gram = self.vectors @ self.vectors.T
        if np.max(np.abs(gram - np.eye(self.d))) > tol.rank_eps * 10:
            raise NonOrthonormalBasis("Gram matrix differs from identity")

    @classmethod
    def from_span(
        cls,
        ambient_n: int,
        vectors: np.ndarray,
        tol: Tolerance = DEFAULT_TOLERANCE,
    ) -> "SubspaceBasis":
        """Orthonormal basis of the span of the given (possibly dependent) rows."""
        v = np.atleast_2d(np.asarray(vectors, dtype=float))
        if v.size == 0:
            return cls(ambient_n, np.zeros((0, 2 * ambient_n)))
        u, s, vt = np.linalg.svd(v, full_matrices=False)
        cutoff = max(s[0], 1.0) * tol.rank_eps if s.size else 0.0
        rank = int(np.sum(s > cutoff))
        return cls(ambient_n, vt[:rank])


@dataclass(frozen=True)
class DistortionReport:
    rho: float
    cr_dim: int
    complex_dim: int
    equidimensional: bool


def hermitian_gram(basis: SubspaceBasis, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Matrix A with A[l, j] = <v_l, v_j> under the standard Hermitian product."""
    basis.check(tol)
    z = real_to_complex(basis.vectors)
    return z @ z.conj().T


def _t_vectors(basis: SubspaceBasis) -> np.ndarray:
    """Rows t_l = i v_l - sum_s Re<i v_l, v_s> v_s, the components of iE off E."""
    v = basis.vectors
    iv = multiply_i(v)
    return iv - (iv @ v.T) @ v


def cr_decomposition(
    basis: SubspaceBasis, tol: Tolerance = DEFAULT_TOLERANCE
) -> tuple[SubspaceBasis, np.ndarray]:
    """Split E into its maximal complex subspace and a spanning set of E'.

    Returns (basis of E^C = E ∩ iE, independent t-vectors spanning
    E' = E^perp ∩ lin_C E).  The number of returned t-vectors equals
    d - dim_R(E^C).
    """
    basis.check(tol)
    d = basis.d
    n2 = 2 * basis.ambient_n
    if d == 0:
        return SubspaceBasis(basis.ambient_n, np.zeros((0, n2))), np.zeros((0, n2))
    t = _t_vectors(basis)
    # Kernel of a -> sum_l a_l t_l corresponds to E^C via sum_l a_l v_l.
    u, s, vt = np.linalg.svd(t, full_matrices=True)
    smax = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > smax * tol.rank_eps))
    kernel = u[:, rank:].T  # rows are coefficient vectors a with a @ t = 0
    ec_vectors = kernel @ basis.vectors
    ec_basis = SubspaceBasis.from_span(basis.ambient_n, ec_vectors, tol)
    # Independent t-vectors: pick rows matching the row space of t.
    if rank == 0:
        prime = np.zeros((0, n2))
    else:
        coeffs = u[:, :rank].T  # row combinations with nonzero image
        prime = coeffs @ t
        # Prefer original t-vectors where they are independent, for the
        # orthogonality statements about the d = 2 case.
        norms = np.linalg.norm(t, axis=1)
        keep = [i for i in range(d) if norms[i] > tol.rank_eps]
        if len(keep) == rank and np.linalg.matrix_rank(t[keep]) == rank:
            prime = t[keep]
    return ec_basis, prime


def rho(basis: SubspaceBasis, tol: Tolerance = DEFAULT_TOLERANCE) -> DistortionReport:
    """Volume-distortion coefficient of the subspace spanned by the basis.

    Computed as det of the Hermitian Gram matrix; cross-checked against the
    Gram determinant of the t-vector basis of E'.
    """
    basis.check(tol)
    d = basis.d
    n = basis.ambient_n
    if d == 0:
        return DistortionReport(rho=1.0, cr_dim=0, complex_dim=0, equidimensional=True)
    z = real_to_complex(basis.vectors)
    complex_dim = int(np.linalg.matrix_rank(z, tol=tol.rank_eps * max(1.0, float(np.abs(z).max()))))
    cr_dim = 2 * (d - complex_dim)
    equi = cr_dim == 0
    if d > n:
        value = 0.0
    else:
        a = z @ z.conj().T
        value = float(np.linalg.det(a).real)
        value = min(max(value, 0.0), 1.0)
        # Debug cross-check through the t-vector route.
        t = _t_vectors(basis)
        alt = float(np.sqrt(max(np.linalg.det(t @ t.T), 0.0)))
        if abs(value - alt) > 1e-8:
            raise AssertionError(
                f"distortion mismatch between Gram ({value}) and t-vector ({alt}) routes"
            )
    if not equi:
        value = 0.0
    return DistortionReport(rho=value, cr_dim=cr_dim, complex_dim=complex_dim, equidimensional=equi)


def realify(m: np.ndarray) -> np.ndarray:
    """2n x 2n real matrix acting on interleaved coordinates as the complex matrix m.

    Satisfies realify(M M') = realify(M) realify(M'), det = |det M|^2, and
    transpose(realify(M)) = realify(conj-transpose(M)).
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("square matrix required")
    out = np.zeros((2 * n, 2 * n))
    out[0::2, 0::2] = m.real
    out[0::2, 1::2] = -m.imag
    out[1::2, 0::2] = m.imag
    out[1::2, 1::2] = m.real
    return out


def random_unitary(n: int, stream: RandomStream) -> np.ndarray:
    """Haar-distributed unitary matrix via QR of a complex Gaussian with phase fix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = stream.generator()
    g = gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases[None, :]
