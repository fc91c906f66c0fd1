"""Dense complex linear algebra for small Hermitian matrices.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  The
Hermitian eigensolver is a cyclic complex Jacobi method compiled with numba;
every other spectral routine (square roots, trace norms, projectors) is built
on top of it.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numba
import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    InvalidMatrix,
    NonHermitianInput,
    NotPositiveSemidefinite,
)

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
JACOBI_TOL = 1e-12
MAX_SWEEPS = 100


class EigenDecomposition(NamedTuple):
    """Ascending real spectrum and the matching orthonormal eigenvectors.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square, finite complex128 array (no copy if possible)."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise InvalidMatrix(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidMatrix("matrix has non-finite entries")
    return arr


def adjoint(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def check_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate ``m`` and return it; raise NonHermitianInput if it is not Hermitian.

    The test is ``max|M - M^dagger| <= tol * (1 + max|M|)``.
    """
    arr = as_matrix(m)
    err = hermiticity_error(arr)
    scale = 1.0 + float(np.max(np.abs(arr)))
    if err > tol * scale:
        raise NonHermitianInput(
            f"max |M - M^dagger| = {err:.3e} exceeds {tol:.1e} * (1 + max|M|)"
        )
    return arr


@numba.njit(cache=True)
def _jacobi_sweeps(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    frob = 0.0
    for i in range(n):
        for j in range(n):
            frob += a[i, j].real ** 2 + a[i, j].imag ** 2
    threshold = tol * math.sqrt(frob)

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if math.sqrt(off) <= threshold:
            w = np.empty(n)
            for i in range(n):
                w[i] = a[i, i].real
            return w, v, True
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sp = s * phase
                spc = s * phase.conjugate()

                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - spc * akq
                    a[k, q] = sp * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - sp * aqk
                    a[q, k] = spc * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag

                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - spc * vkq
                    v[k, q] = sp * vkp + c * vkq

    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, False


def eigh(m, *, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * ||M||_F``.

    Raises:
        NonHermitianInput: ``m`` is not Hermitian within tolerance.
        ConvergenceFailure: ``max_sweeps`` sweeps did not reach the threshold.
    """
    arr = check_hermitian(m)
    work = 0.5 * (arr + arr.conj().T)
    w, v, converged = _jacobi_sweeps(np.ascontiguousarray(work), tol, max_sweeps)
    if not converged:
        raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], np.ascontiguousarray(v[:, order]))


def eigvalsh(m) -> np.ndarray:
    return eigh(m).eigenvalues


def matrix_sqrt_psd(m, *, psd_tol: float = PSD_TOL, rcond: float = 0.0) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-psd_tol, 0)`` are treated as zero, as are eigenvalues
    not exceeding ``rcond * max(eigenvalue)``.

    Raises:
        NotPositiveSemidefinite: an eigenvalue lies below ``-psd_tol``.
    """
    w, v = eigh(m)
    if w[0] < -psd_tol:
        raise NotPositiveSemidefinite(f"smallest eigenvalue {w[0]:.3e} < -{psd_tol:.1e}")
    cutoff = max(rcond * w[-1], 0.0)
    roots = np.where(w > cutoff, np.sqrt(np.clip(w, 0.0, None)), 0.0)
    s = (v * roots) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigh(m).eigenvalues)))


def split_projectors(h, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Spectral projectors onto the strictly positive and strictly negative parts of ``h``.

    Eigenvalues with ``|lambda| <= tol * max|h_ij|`` go to neither projector.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    w, v = eigh(h)
    scale = float(np.max(np.abs(h)))
    cut = tol * scale
    pos = v[:, w > cut]
    neg = v[:, w < -cut]
    return pos @ pos.conj().T, neg @ neg.conj().T


def kronecker(a, b) -> np.ndarray:
    """Kronecker product; entry ``(i*m + k, j*m + l)`` is ``a[i, j] * b[k, l]``."""
    a = as_matrix(a)
    b = as_matrix(b)
    n, m = a.shape[0], b.shape[0]
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(n * m, n * m)


def hs_inner(a, b) -> float:
    """Hilbert-Schmidt inner product ``Re tr(A B)`` of two Hermitian matrices."""
    a = check_hermitian(a)
    b = check_hermitian(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimensions {a.shape[0]} and {b.shape[0]} differ")
    value = np.sum(a * b.T)
    if abs(value.imag) > 1e-10:
        raise NonHermitianInput(f"tr(AB) has imaginary part {value.imag:.3e}")
    return float(value.real)
