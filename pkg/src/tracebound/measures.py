"""Distinguishability measures between two density matrices.

Every function takes the two states as separate arguments, in the order
(first, second).  Square roots of quantities that are non-negative in exact
arithmetic are guarded against rounding: radicands go through ``max(0, .)``
and spectral or purity deficits at the level of double-precision noise are
treated as exact zeros (see :data:`SPECTRAL_RCOND` and :data:`MIXEDNESS_FLOOR`).
Reported F and G are never clamped to ``[0, 1]``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch
from .states import DensityMatrix, purity

EPS = float(np.finfo(float).eps)

#: Eigenvalues below ``SPECTRAL_RCOND * N`` count as zero in the fidelity
#: (inputs have unit trace, so this is a fixed absolute scale).  Rounding leaves ~1e-17 eigenvalues on the kernel of rank-deficient
#: states, and their square roots (~3e-9 each) would otherwise leak into F.
SPECTRAL_RCOND = EPS

#: ``1 - tr rho^2`` below this is read as an exactly pure state.
MIXEDNESS_FLOOR = 64 * EPS

PROJECTOR_TOL = 1e-12


def _as_state(x) -> DensityMatrix:
    return x if isinstance(x, DensityMatrix) else DensityMatrix(x)


def _pair(a, b) -> tuple[DensityMatrix, DensityMatrix]:
    a, b = _as_state(a), _as_state(b)
    if a.dim != b.dim:
        raise DimensionMismatch(f"DimensionMismatch: dimensions {a.dim} and {b.dim} differ")
    return a, b


def mixedness(rho: DensityMatrix) -> float:
    """``1 - tr rho^2`` with rounding-level values flushed to zero."""
    m = 1.0 - purity(rho)
    return m if m > MIXEDNESS_FLOOR else 0.0


def overlap(a, b) -> float:
    """``tr(a b)`` for two states."""
    a, b = _pair(a, b)
    return float(np.sum(a.matrix * b.matrix.T).real)


def trace_distance(a, b) -> float:
    a, b = _pair(a, b)
    return 0.5 * linalg.trace_norm(a.matrix - b.matrix)


def trace_distance_projector_form(a, b, tol: float = PROJECTOR_TOL) -> float:
    """Trace distance as ``1 - tr(P+ b) - tr(P- a)`` with P+/P- the sign projectors of ``a - b``.

    Eigenvalues of ``a - b`` inside the ``tol`` band belong to neither
    projector; the kernel projector ``P0`` then contributes
    ``-tr(P0 (a + b)) / 2`` so the identity stays exact.
    """
    a, b = _pair(a, b)
    p_plus, p_minus = linalg.split_projectors(a.matrix - b.matrix, tol)
    p_zero = np.eye(a.dim) - p_plus - p_minus
    value = (
        1.0
        - np.sum(p_plus * b.matrix.T)
        - np.sum(p_minus * a.matrix.T)
        - 0.5 * np.sum(p_zero * (a.matrix + b.matrix).T)
    )
    return float(value.real)


def sqrt_fidelity(a, b) -> float:
    """``tr|sqrt(a) sqrt(b)|``, via the spectrum of ``sqrt(a) b sqrt(a)``."""
    a, b = _pair(a, b)
    n = a.dim
    root_a = linalg.matrix_sqrt_psd(a.matrix, rcond=SPECTRAL_RCOND * n)
    inner = root_a @ b.matrix @ root_a
    w = linalg.eigvalsh(0.5 * (inner + inner.conj().T))
    cutoff = SPECTRAL_RCOND * n
    return float(np.sum(np.sqrt(w[w > cutoff])))


def fidelity(a, b) -> float:
    return sqrt_fidelity(a, b) ** 2


def superfidelity(a, b) -> float:
    a, b = _pair(a, b)
    return overlap(a, b) + math.sqrt(mixedness(a)) * math.sqrt(mixedness(b))


def bures_distance(a, b) -> float:
    return math.sqrt(max(0.0, 2.0 - 2.0 * sqrt_fidelity(a, b)))


def d_b_prime(a, b) -> float:
    """Bures-like quantity built on superfidelity; not a metric."""
    return math.sqrt(max(0.0, 2.0 - 2.0 * math.sqrt(max(0.0, superfidelity(a, b)))))


def d_g(a, b) -> float:
    return math.sqrt(max(0.0, 2.0 - 2.0 * superfidelity(a, b)))


def error_probability(a, b) -> float:
    """Minimum error for discriminating two equiprobable states."""
    return 0.5 * (1.0 - trace_distance(a, b))


@dataclass(frozen=True)
class MeasureSet:
    d_tr: float
    fidelity: float
    sqrt_fidelity: float
    superfidelity: float
    bures: float
    d_g: float
    d_b_prime: float
    p_error: float

    def as_dict(self) -> dict:
        return asdict(self)


def measure_all(a, b) -> MeasureSet:
    a, b = _pair(a, b)
    d_tr = trace_distance(a, b)
    root_f = sqrt_fidelity(a, b)
    g = superfidelity(a, b)
    return MeasureSet(
        d_tr=d_tr,
        fidelity=root_f**2,
        sqrt_fidelity=root_f,
        superfidelity=g,
        bures=math.sqrt(max(0.0, 2.0 - 2.0 * root_f)),
        d_g=math.sqrt(max(0.0, 2.0 - 2.0 * g)),
        d_b_prime=math.sqrt(max(0.0, 2.0 - 2.0 * math.sqrt(max(0.0, g)))),
        p_error=0.5 * (1.0 - d_tr),
    )


METRICS = {
    "bures": bures_distance,
    "d_g": d_g,
    "d_b_prime": d_b_prime,
    "trace": trace_distance,
}
