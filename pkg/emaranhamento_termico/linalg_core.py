"""
Dense complex linear algebra for the small operators of a spin cell:
Hermitian eigendecomposition (cyclic Jacobi), Kronecker products,
matrix functions and the Hilbert-Schmidt distance.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
import numpy.typing as npt

from erros import DimensionError, NotHermitianError

ComplexMatrix = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-8
MATRIX_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def as_complex_matrix(A) -> ComplexMatrix:
    """Converts an array-like into a square complex128 matrix."""
    M = np.array(A, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"A entrada deve ser uma matriz quadrada 2D, recebido formato {M.shape}")
    if M.shape[0] < 1:
        raise DimensionError("A dimensão da matriz deve ser pelo menos 1")
    return M


def hermiticity_deviation(A) -> float:
    """Max-norm of A - A^dagger."""
    M = as_complex_matrix(A)
    return float(np.max(np.abs(M - M.conj().T)))


def _require_hermitian(M: ComplexMatrix, tol: float = HERMITIAN_TOL) -> None:
    deviation = float(np.max(np.abs(M - M.conj().T)))
    if deviation >= tol:
        raise NotHermitianError(f"Desvio de hermiticidade {deviation:.3e} excede {tol:.0e}")


@dataclass(frozen=True)
class SpectralDecomposition:
    """
    Eigenvalues in ascending order and the matching orthonormal eigenvectors,
    stored as the columns of `eigenvectors`.
    """
    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: ComplexMatrix
    labels: Optional[Tuple[str, ...]] = None

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def vector(self, i: int) -> npt.NDArray[np.complex128]:
        return self.eigenvectors[:, i]

    def apply(self, f: Callable[[float], float]) -> ComplexMatrix:
        """Returns sum_i f(lambda_i) |v_i><v_i|."""
        weights = np.array([float(f(lam)) for lam in self.eigenvalues])
        V = self.eigenvectors
        result = (V * weights) @ V.conj().T
        return 0.5 * (result + result.conj().T)

    def reconstruct(self) -> ComplexMatrix:
        return self.apply(lambda lam: lam)

    def orthonormality_error(self) -> float:
        V = self.eigenvectors
        return float(np.max(np.abs(V.conj().T @ V - np.eye(self.dim))))

    def degeneracies(self, tol: float = 1e-9) -> List[Tuple[float, int]]:
        """Groups the ascending eigenvalues into (value, multiplicity) pairs."""
        groups: List[List[float]] = []
        for lam in self.eigenvalues:
            if groups and abs(lam - groups[-1][0]) <= tol * max(1.0, abs(lam)):
                groups[-1].append(float(lam))
            else:
                groups.append([float(lam)])
        return [(float(np.mean(g)), len(g)) for g in groups]


def _jacobi_rotation(M: ComplexMatrix, V: ComplexMatrix, p: int, q: int) -> None:
    """Annihilates M[p, q] in place with a unitary plane rotation."""
    g = M[p, q]
    magnitude = abs(g)
    if magnitude == 0.0:
        return
    phase = g / magnitude
    a = M[p, p].real
    b = M[q, q].real

    theta = (b - a) / (2.0 * magnitude)
    if abs(theta) > 1e150:
        t = 1.0 / (2.0 * theta)
    else:
        t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0.0 else 1.0
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    G = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]], dtype=np.complex128)
    idx = [p, q]
    M[:, idx] = M[:, idx] @ G
    M[idx, :] = G.conj().T @ M[idx, :]
    M[p, q] = 0.0
    M[q, p] = 0.0
    M[p, p] = M[p, p].real
    M[q, q] = M[q, q].real
    V[:, idx] = V[:, idx] @ G


def _off_diagonal_norm(M: ComplexMatrix) -> float:
    off = M - np.diag(np.diag(M))
    return float(np.linalg.norm(off, 'fro'))


def hermitian_eigendecompose(A) -> SpectralDecomposition:
    """
    Cyclic Jacobi eigensolver for a Hermitian matrix.

    Args:
        A: square matrix, Hermitian within 1e-8.

    Returns:
        SpectralDecomposition with ascending eigenvalues.

    Raises:
        DimensionError, NotHermitianError, numpy.linalg.LinAlgError (no convergence).
    """
    M = as_complex_matrix(A)
    _require_hermitian(M)
    M = 0.5 * (M + M.conj().T)
    n = M.shape[0]
    V = np.eye(n, dtype=np.complex128)

    scale = max(1.0, float(np.linalg.norm(M, 'fro')))
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_diagonal_norm(M) < JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotation(M, V, p, q)
    else:
        if _off_diagonal_norm(M) >= JACOBI_TOL * scale:
            raise np.linalg.LinAlgError(
                f"Jacobi não convergiu em {JACOBI_MAX_SWEEPS} varreduras")

    eigenvalues = np.real(np.diag(M)).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return SpectralDecomposition(eigenvalues=eigenvalues[order], eigenvectors=V[:, order])


def kron(A, B) -> ComplexMatrix:
    """Kronecker product; entry (i*dimB + k, j*dimB + l) = A[i, j] * B[k, l]."""
    return np.kron(as_complex_matrix(A), as_complex_matrix(B))


def hermitian_function(A, f: Callable[[float], float]) -> ComplexMatrix:
    """Applies a real function to a Hermitian matrix through its spectrum."""
    return hermitian_eigendecompose(A).apply(f)


def hs_norm_distance(A, B) -> float:
    """Hilbert-Schmidt distance sqrt(Tr[(A - B)^2]) between Hermitian matrices."""
    MA = as_complex_matrix(A)
    MB = as_complex_matrix(B)
    if MA.shape != MB.shape:
        raise DimensionError(f"Dimensões incompatíveis: {MA.shape} e {MB.shape}")
    _require_hermitian(MA)
    _require_hermitian(MB)
    # Tr[(A-B)^2] equals the squared Frobenius norm for Hermitian A - B
    return float(np.linalg.norm(MA - MB, 'fro'))
