"""Batch numerical checks of the trace-distance bounds and superfidelity properties.

Every random routine derives one sub-stream per sample (``stream + index``),
so results depend only on the :class:`RngSpec` and never on how the work is
split across processes.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from . import linalg
from .errors import InvalidSpec
from .measures import (
    PROJECTOR_TOL,
    MeasureSet,
    _pair,
    measure_all,
    mixedness,
    overlap,
    superfidelity,
    trace_distance_projector_form,
)
from .states import DensityMatrix, RngSpec, random_density, random_unitary

log = logging.getLogger(__name__)

VIOLATION_TOL = 1e-9
WARN_BAND = 1e-7

BOUND_CHECKS = (
    "main",
    "equivalent_form",
    "weak",
    "fvg_lower",
    "fvg_upper",
    "f_le_g",
    "lemma_1",
    "lemma_2",
    "lemma_3",
    "lemma_4",
    "projector_consistency",
    "weak_vs_main",
    "error_probability",
    "error_probability_identity",
)

# Checks whose slack is minus an absolute discrepancy; they sit at ~0 by
# design, so the near-violation band says nothing about them.
IDENTITY_CHECKS = frozenset(
    {"projector_consistency", "error_probability_identity", "symmetry", "unitary_invariance"}
)

PROPERTY_CHECKS = (
    "g_lower_bound",
    "g_upper_bound",
    "symmetry",
    "unitary_invariance",
    "concavity",
    "joint_concavity",
    "supermultiplicativity",
)


@dataclass(frozen=True)
class BoundReport:
    """Measures of one pair plus the slack of every inequality (``>= 0`` means it holds)."""

    measures: MeasureSet
    slack_fvg_lower: float
    slack_fvg_upper: float
    slack_main: float
    slack_weak: float
    slack_fg: float
    slack_lemma: tuple[float, float, float, float]
    projector_consistency: float
    diff_g_sqrtf: float
    equivalent_form: float

    def check_slacks(self) -> dict[str, float]:
        """Map each named check to a slack that must be ``>= -tolerance``."""
        m = self.measures
        return {
            "main": self.slack_main,
            "equivalent_form": self.equivalent_form - 1.0,
            "weak": self.slack_weak,
            "fvg_lower": self.slack_fvg_lower,
            "fvg_upper": self.slack_fvg_upper,
            "f_le_g": self.slack_fg,
            "lemma_1": self.slack_lemma[0],
            "lemma_2": self.slack_lemma[1],
            "lemma_3": self.slack_lemma[2],
            "lemma_4": self.slack_lemma[3],
            "projector_consistency": -self.projector_consistency,
            "weak_vs_main": self.slack_weak - self.slack_main,
            "error_probability": 0.5 * m.superfidelity - m.p_error,
            "error_probability_identity": -abs(m.p_error - 0.5 * (1.0 - m.d_tr)),
        }


def _tr(x: np.ndarray) -> float:
    return float(np.trace(x).real)


def lemma_slacks(a: DensityMatrix, b: DensityMatrix, tol: float = PROJECTOR_TOL):
    """Left minus right side of the four projector inequalities behind the main bound."""
    r1, r2 = a.matrix, b.matrix
    eye = np.eye(a.dim)
    p_plus, p_minus = linalg.split_projectors(r1 - r2, tol)
    return (
        _tr(p_plus @ (eye - r1) @ r1) - _tr(p_plus @ (eye - r1) @ r2),
        _tr(p_minus @ r1 @ (eye - r1)) - _tr(p_minus @ r1 @ (eye - r2)),
        _tr(p_plus @ (eye - r2) @ r2) - _tr(p_plus @ (eye - r1) @ r2),
        _tr(p_minus @ r2 @ (eye - r2)) - _tr(p_minus @ r1 @ (eye - r2)),
    )


def evaluate_pair(a, b) -> BoundReport:
    a, b = _pair(a, b)
    m = measure_all(a, b)
    d_tr, f, g = m.d_tr, m.fidelity, m.superfidelity
    equivalent = d_tr + overlap(a, b) + math.sqrt(mixedness(a)) * math.sqrt(mixedness(b))
    return BoundReport(
        measures=m,
        slack_fvg_lower=d_tr - (1.0 - m.sqrt_fidelity),
        slack_fvg_upper=math.sqrt(max(0.0, 1.0 - f)) - d_tr,
        slack_main=d_tr - (1.0 - g),
        slack_weak=d_tr - (1.0 - math.sqrt(max(0.0, g))),
        slack_fg=g - f,
        slack_lemma=lemma_slacks(a, b),
        projector_consistency=abs(d_tr - trace_distance_projector_form(a, b)),
        diff_g_sqrtf=g - m.sqrt_fidelity,
        equivalent_form=equivalent,
    )


@dataclass
class VerificationSummary:
    """Aggregate of a batch run.

    ``violations`` holds ``(pair_id, check, slack)`` sorted by sample index;
    ``warnings`` counts slacks inside ``[-tolerance, WARN_BAND]`` per check.
    """

    total_pairs: int
    violations: list[tuple[str, str, float]]
    min_slack_per_check: dict[str, float]
    rng: RngSpec
    tolerance: float = VIOLATION_TOL
    warnings: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "total_pairs": self.total_pairs,
            "tolerance": self.tolerance,
            "ok": self.ok,
            "rng": self.rng.as_dict(),
            "min_slack_per_check": dict(self.min_slack_per_check),
            "near_violation_counts": dict(self.warnings),
            "violations": [
                {"pair": pid, "check": check, "slack": slack}
                for pid, check, slack in self.violations
            ],
        }


@dataclass
class _Partial:
    count: int = 0
    minima: dict = field(default_factory=dict)
    warnings: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def record(self, order, pair_id: str, slacks: dict[str, float], tol: float) -> None:
        self.count += 1
        for check, value in slacks.items():
            if check not in self.minima or value < self.minima[check]:
                self.minima[check] = value
            if value < -tol:
                self.violations.append((order, pair_id, check, value))
            elif value <= WARN_BAND and check not in IDENTITY_CHECKS:
                self.warnings[check] = self.warnings.get(check, 0) + 1

    def merge(self, other: "_Partial") -> None:
        self.count += other.count
        for check, value in other.minima.items():
            if check not in self.minima or value < self.minima[check]:
                self.minima[check] = value
        for check, n in other.warnings.items():
            self.warnings[check] = self.warnings.get(check, 0) + n
        self.violations.extend(other.violations)

    def summary(self, checks: Sequence[str], rng: RngSpec, tol: float) -> VerificationSummary:
        violations = [(pid, check, value) for _, pid, check, value in sorted(self.violations)]
        for _, check, value in violations:
            log.warning("violation: %s slack %.3e", check, value)
        return VerificationSummary(
            total_pairs=self.count,
            violations=violations,
            min_slack_per_check={c: self.minima[c] for c in checks if c in self.minima},
            rng=rng,
            tolerance=tol,
            warnings={c: self.warnings[c] for c in checks if c in self.warnings},
        )


RankSpec = Union[int, str]


def resolve_rank(rank: RankSpec, n: int) -> int:
    """Turn ``1``, ``"half"`` (ceil(N/2)), ``"full"`` (N) or an int into a rank for dim ``n``."""
    if rank == "half":
        return math.ceil(n / 2)
    if rank == "full":
        return n
    r = int(rank)
    if not 1 <= r <= n:
        raise InvalidSpec(f"rank {r} impossible in dimension {n}")
    return r


DEFAULT_RANKS: tuple[RankSpec, ...] = (1, "half", "full")


def _sample_pair(dim: int, ranks: Sequence[RankSpec], index: int, rng: RngSpec):
    nr = len(ranks)
    rank_a = resolve_rank(ranks[index % nr], dim)
    rank_b = resolve_rank(ranks[(index // nr) % nr], dim)
    gen = rng.generator()
    return random_density(dim, rank_a, gen), random_density(dim, rank_b, gen), rank_a, rank_b


def _run_chunk(kind: str, jobs: list, params: dict) -> _Partial:
    part = _Partial()
    tol = params["tolerance"]
    for job in jobs:
        if kind == "bounds":
            order, dim, index = job
            rng = RngSpec(params["seed"], params["stream"]).substream(order)
            a, b, ra, rb = _sample_pair(dim, params["ranks"], index, rng)
            slacks = evaluate_pair(a, b).check_slacks()
            part.record(order, f"dim={dim} sample={index} ranks={ra},{rb}", slacks, tol)
        else:
            order = job
            rng = RngSpec(params["seed"], params["stream"]).substream(order)
            slacks = property_slacks(order, rng.generator())
            part.record(order, f"sample={order}", slacks, tol)
    return part


def _dispatch(kind: str, jobs: list, params: dict, workers: int) -> _Partial:
    if workers <= 1 or len(jobs) < 2:
        return _run_chunk(kind, jobs, params)
    size = math.ceil(len(jobs) / workers)
    chunks = [jobs[i : i + size] for i in range(0, len(jobs), size)]
    total = _Partial()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_run_chunk, [kind] * len(chunks), chunks, [params] * len(chunks)):
            total.merge(part)
    return total


def run_random_verification(
    dims: Iterable[int],
    samples_per_dim: int,
    ranks: Sequence[RankSpec] = DEFAULT_RANKS,
    rng: RngSpec = RngSpec(),
    *,
    tolerance: float = VIOLATION_TOL,
    workers: int = 1,
) -> VerificationSummary:
    """Check every bound on random pairs.

    For each dimension, sample ``i`` pairs rank ``ranks[i % R]`` with rank
    ``ranks[(i // R) % R]`` so all rank combinations are crossed.  The pair
    with global index ``k`` uses sub-stream ``rng.stream + k``.
    """
    dims = list(dims)
    if not dims:
        raise InvalidSpec("dims must be nonempty")
    if any(not isinstance(d, (int, np.integer)) or d < 1 for d in dims):
        raise InvalidSpec(f"dimensions must be positive integers, got {dims}")
    if samples_per_dim < 1:
        raise InvalidSpec(f"samples_per_dim must be >= 1, got {samples_per_dim}")
    if not ranks:
        raise InvalidSpec("ranks must be nonempty")
    for d in dims:
        for r in ranks:
            resolve_rank(r, d)
    jobs = [
        (k * samples_per_dim + i, int(d), i)
        for k, d in enumerate(dims)
        for i in range(samples_per_dim)
    ]
    params = {
        "seed": rng.seed,
        "stream": rng.stream,
        "ranks": tuple(ranks),
        "tolerance": tolerance,
    }
    part = _dispatch("bounds", jobs, params, workers)
    return part.summary(BOUND_CHECKS, rng, tolerance)


PROPERTY_DIMS = (2, 3, 4, 5, 6)


def _random_state(n: int, gen: np.random.Generator) -> DensityMatrix:
    return random_density(n, int(gen.integers(1, n + 1)), gen)


def property_slacks(index: int, gen: np.random.Generator) -> dict[str, float]:
    """One instance of each superfidelity property; dimension cycles with ``index``."""
    n = PROPERTY_DIMS[index % len(PROPERTY_DIMS)]
    r1, r2, r3 = (_random_state(n, gen) for _ in range(3))
    alpha = float(gen.uniform())

    g12 = superfidelity(r1, r2)
    g21 = superfidelity(r2, r1)

    u = random_unitary(n, gen)
    g_rot = superfidelity(r1.conjugate_by(u), r2.conjugate_by(u))

    mix = DensityMatrix(alpha * r2.matrix + (1 - alpha) * r3.matrix)
    concave = superfidelity(r1, mix) - alpha * g12 - (1 - alpha) * superfidelity(r1, r3)

    s1, s2 = _random_state(n, gen), _random_state(n, gen)
    left = DensityMatrix(alpha * r1.matrix + (1 - alpha) * s1.matrix)
    right = DensityMatrix(alpha * r2.matrix + (1 - alpha) * s2.matrix)
    joint = superfidelity(left, right) - alpha * g12 - (1 - alpha) * superfidelity(s1, s2)

    q = [_random_state(2, gen) for _ in range(4)]
    supermult = superfidelity(q[0].tensor(q[1]), q[2].tensor(q[3])) - superfidelity(
        q[0], q[2]
    ) * superfidelity(q[1], q[3])

    return {
        "g_lower_bound": g12,
        "g_upper_bound": 1.0 - g12,
        "symmetry": -abs(g12 - g21),
        "unitary_invariance": -abs(g_rot - g12),
        "concavity": concave,
        "joint_concavity": joint,
        "supermultiplicativity": supermult,
    }


def run_property_checks(
    samples: int,
    rng: RngSpec = RngSpec(),
    *,
    tolerance: float = VIOLATION_TOL,
    workers: int = 1,
) -> VerificationSummary:
    """Bounds, symmetry, unitary invariance, (joint) concavity and supermultiplicativity of G."""
    if samples < 1:
        raise InvalidSpec(f"samples must be >= 1, got {samples}")
    params = {"seed": rng.seed, "stream": rng.stream, "tolerance": tolerance}
    part = _dispatch("properties", list(range(samples)), params, workers)
    return part.summary(PROPERTY_CHECKS, rng, tolerance)
