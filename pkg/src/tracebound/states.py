"""Validated density matrices, the parametric state families, and random sampling."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from os import PathLike
from typing import Sequence, Union

import numpy as np

from . import linalg
from .errors import (
    BlochNormExceeded,
    ParameterOutOfRange,
    RankOutOfRange,
    StateValidationError,
    ZeroVector,
)

STATE_TOL = 1e-10
BLOCH_TOL = 1e-12
_U64 = 2**64

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class RngSpec:
    """Seed plus sub-stream index; one independent random stream per pair."""

    seed: int = 0
    stream: int = 0

    def __post_init__(self):
        for name in ("seed", "stream"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or not 0 <= value < _U64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value!r}")

    def substream(self, offset: int) -> "RngSpec":
        return RngSpec(self.seed, (self.stream + offset) % _U64)

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream),))
        return np.random.Generator(np.random.PCG64(seq))

    def as_dict(self) -> dict:
        return {"seed": int(self.seed), "stream": int(self.stream)}


RandomSource = Union[RngSpec, np.random.Generator]


def _generator(rng: RandomSource) -> np.random.Generator:
    if isinstance(rng, RngSpec):
        return rng.generator()
    return rng


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix.

    Construction validates the invariants and freezes a private copy of the
    array; raise :class:`StateValidationError` naming the failed invariant.
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        try:
            arr = linalg.as_matrix(self.matrix)
        except ValueError as exc:
            raise StateValidationError("shape", str(exc)) from None
        arr = np.array(arr, dtype=np.complex128, copy=True)
        herm = linalg.hermiticity_error(arr)
        if herm > STATE_TOL:
            raise StateValidationError("hermitian", f"max |rho - rho^dagger| = {herm:.3e}")
        trace = np.trace(arr).real
        if abs(trace - 1.0) > STATE_TOL:
            raise StateValidationError("unit_trace", f"trace = {trace!r}")
        low = linalg.eigvalsh(arr)[0]
        if low < -STATE_TOL:
            raise StateValidationError("psd", f"smallest eigenvalue {low:.3e}")
        arr.flags.writeable = False
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(linalg.kronecker(self.matrix, other.matrix))

    def conjugate_by(self, unitary: np.ndarray) -> "DensityMatrix":
        out = unitary @ self.matrix @ unitary.conj().T
        return DensityMatrix(0.5 * (out + out.conj().T))

    # file format: {"dim": N, "entries": [[re, im], ...]} row-major
    def to_dict(self) -> dict:
        flat = self.matrix.reshape(-1)
        return {
            "dim": self.dim,
            "entries": [[float(z.real), float(z.imag)] for z in flat],
        }

    @classmethod
    def from_dict(cls, data) -> "DensityMatrix":
        if not isinstance(data, dict) or "dim" not in data or "entries" not in data:
            raise StateValidationError("format", "expected an object with 'dim' and 'entries'")
        dim = data["dim"]
        entries = data["entries"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise StateValidationError("format", f"'dim' must be a positive integer, got {dim!r}")
        if not isinstance(entries, list) or len(entries) != dim * dim:
            raise StateValidationError("format", f"'entries' must hold dim^2 = {dim * dim} pairs")
        values = []
        for pair in entries:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
            ):
                raise StateValidationError("format", f"entry {pair!r} is not a [re, im] pair")
            values.append(complex(pair[0], pair[1]))
        arr = np.array(values, dtype=np.complex128).reshape(dim, dim)
        if not np.all(np.isfinite(arr)):
            raise StateValidationError("finite", "entries must be finite")
        return cls(arr)


def load_state(path: Union[str, PathLike]) -> DensityMatrix:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateValidationError("format", f"{path}: {exc}") from None
    return DensityMatrix.from_dict(data)


def save_state(rho: DensityMatrix, path: Union[str, PathLike]) -> None:
    from .textio import dumps

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(rho.to_dict()))


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.norm() > 1.0 + BLOCH_TOL:
            raise BlochNormExceeded(f"|r| = {self.norm()!r} > 1")

    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    def distance(self, other: "BlochVector") -> float:
        return math.dist((self.x, self.y, self.z), (other.x, other.y, other.z))


def pure_state(amplitudes: Sequence[complex]) -> DensityMatrix:
    """Projector onto the normalized vector ``amplitudes``."""
    psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    norm = np.linalg.norm(psi)
    if psi.size == 0 or norm == 0.0:
        raise ZeroVector("state vector must have a nonzero amplitude")
    psi = psi / norm
    return DensityMatrix(np.outer(psi, psi.conj()))


def basis_state(index: int, dim: int) -> DensityMatrix:
    amps = np.zeros(dim)
    amps[index] = 1.0
    return pure_state(amps)


def qubit_from_bloch(r: Union[BlochVector, Sequence[float]]) -> DensityMatrix:
    """Qubit ``(1 + r . sigma) / 2``."""
    if not isinstance(r, BlochVector):
        r = BlochVector(*r)
    m = 0.5 * (np.eye(2) + r.x * PAULI_X + r.y * PAULI_Y + r.z * PAULI_Z)
    return DensityMatrix(m)


def maximally_mixed(n: int) -> DensityMatrix:
    if n < 1:
        raise ParameterOutOfRange(f"dimension must be >= 1, got {n}")
    return DensityMatrix(np.eye(n, dtype=np.complex128) / n)


def _check_weight(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ParameterOutOfRange(f"{name} must lie in [0, 1], got {value!r}")


def _mix_with_identity(weight: float, projector: np.ndarray) -> DensityMatrix:
    n = projector.shape[0]
    return DensityMatrix(weight * projector + (1.0 - weight) * np.eye(n) / n)


def family_rho_alpha(alpha: float, n: int) -> DensityMatrix:
    """``alpha |0><0| + (1 - alpha) 1/N``."""
    _check_weight("alpha", alpha)
    if n < 2:
        raise ParameterOutOfRange(f"N must be >= 2, got {n}")
    proj = np.zeros((n, n), dtype=np.complex128)
    proj[0, 0] = 1.0
    return _mix_with_identity(alpha, proj)


GHZ_AMPLITUDES = np.array([1, 0, 0, 0, 0, 0, 0, 1], dtype=np.complex128) / math.sqrt(2)


def family_sigma_beta(beta: float) -> DensityMatrix:
    """``beta |GHZ><GHZ| + (1 - beta) 1/8`` on three qubits (``|abc>`` at index ``4a+2b+c``)."""
    _check_weight("beta", beta)
    return _mix_with_identity(beta, np.outer(GHZ_AMPLITUDES, GHZ_AMPLITUDES.conj()))


def family_tau_gamma(gamma: float) -> DensityMatrix:
    """``gamma |010><010| + (1 - gamma) 1/8``; ``|010>`` is basis index 2."""
    _check_weight("gamma", gamma)
    proj = np.zeros((8, 8), dtype=np.complex128)
    proj[2, 2] = 1.0
    return _mix_with_identity(gamma, proj)


def random_density(n: int, rank: int, rng: RandomSource) -> DensityMatrix:
    """Random state ``G G^dagger / tr(G G^dagger)`` with ``G`` an ``n x rank`` Ginibre matrix.

    At ``rank == n`` this samples the Hilbert-Schmidt measure.  Passing an
    :class:`RngSpec` makes the result a pure function of ``(seed, stream)``;
    passing a ``numpy`` generator draws from (and advances) that generator.
    """
    if not 1 <= rank <= n:
        raise RankOutOfRange(f"rank must lie in [1, {n}], got {rank}")
    gen = _generator(rng)
    g = gen.standard_normal((n, rank)) + 1j * gen.standard_normal((n, rank))
    w = g @ g.conj().T
    w = 0.5 * (w + w.conj().T)
    return DensityMatrix(w / np.trace(w).real)


def random_unitary(n: int, rng: RandomSource) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix.

    Columns of Q are rephased by ``diag(R) / |diag(R)|`` so the result is
    Haar distributed rather than biased by the QR sign convention.
    """
    if n < 1:
        raise ParameterOutOfRange(f"dimension must be >= 1, got {n}")
    gen = _generator(rng)
    z = (gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def purity(rho: DensityMatrix) -> float:
    """``tr rho^2``."""
    m = rho.matrix
    return float(np.vdot(m, m).real)
