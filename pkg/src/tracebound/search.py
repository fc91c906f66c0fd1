"""Random search for triangle-inequality violations of fidelity-based distances."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidSpec
from .measures import METRICS
from .states import DensityMatrix, RngSpec, random_density
from .verify import VIOLATION_TOL

SEARCH_METRICS = ("d_b_prime", "d_g", "bures")
SEARCH_MODES = ("uniform", "biased", "mixed")


@dataclass(frozen=True)
class CounterexampleRecord:
    """Three states with ``d(a, c) - d(a, b) - d(b, c) = excess > tolerance``."""

    metric: str
    states: tuple[DensityMatrix, DensityMatrix, DensityMatrix]
    excess: float
    rng: RngSpec

    def recompute_excess(self) -> float:
        d = METRICS[self.metric]
        a, b, c = self.states
        return d(a, c) - d(a, b) - d(b, c)

    def to_dict(self) -> dict:
        a, b, c = self.states
        return {
            "kind": "counterexample",
            "metric": self.metric,
            "excess": self.excess,
            "rng": self.rng.as_dict(),
            "states": {"a": a.to_dict(), "b": b.to_dict(), "c": c.to_dict()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CounterexampleRecord":
        states = tuple(DensityMatrix.from_dict(data["states"][k]) for k in ("a", "b", "c"))
        return cls(
            metric=data["metric"],
            states=states,
            excess=float(data["excess"]),
            rng=RngSpec(**data["rng"]),
        )


@dataclass(frozen=True)
class SearchResult:
    metric: str
    dim: int
    triples: int
    mode: str
    min_slack: float
    record: Optional[CounterexampleRecord]
    rng: RngSpec

    @property
    def found(self) -> bool:
        return self.record is not None

    def to_dict(self) -> dict:
        return {
            "kind": "triangle_search",
            "metric": self.metric,
            "dim": self.dim,
            "triples": self.triples,
            "mode": self.mode,
            "rng": self.rng.as_dict(),
            "min_slack": self.min_slack,
            "found": self.found,
            "counterexample": self.record.to_dict() if self.record else None,
        }


def sample_triple(n: int, gen: np.random.Generator, biased: bool) -> list[DensityMatrix]:
    """Three random states; in biased mode the ends are low rank and the middle is their mixture."""
    if not biased:
        return [random_density(n, int(gen.integers(1, n + 1)), gen) for _ in range(3)]
    low = max(n - 1, 1)
    a = random_density(n, int(gen.integers(1, low + 1)), gen)
    c = random_density(n, int(gen.integers(1, low + 1)), gen)
    t = float(gen.uniform())
    return [a, DensityMatrix((1 - t) * a.matrix + t * c.matrix), c]


def worst_orientation(metric: str, states) -> tuple[float, tuple[int, int, int]]:
    """Smallest ``d(a,b) + d(b,c) - d(a,c)`` over the three choices of middle point."""
    d = METRICS[metric]
    dist = {}
    for i, j in itertools.combinations(range(3), 2):
        dist[i, j] = dist[j, i] = d(states[i], states[j])
    best = None
    for mid in range(3):
        i, k = (x for x in range(3) if x != mid)
        slack = dist[i, mid] + dist[mid, k] - dist[i, k]
        if best is None or slack < best[0]:
            best = (slack, (i, mid, k))
    return best


def search_triangle_violation(
    metric: str,
    dim: int,
    triples: int,
    rng: RngSpec = RngSpec(),
    *,
    mode: str = "mixed",
    tolerance: float = VIOLATION_TOL,
) -> SearchResult:
    """Sample random triples and keep the worst triangle slack.

    ``mode="biased"`` draws two low-rank states and places the third on the
    segment between them; ``"mixed"`` alternates uniform and biased triples.
    Triple ``t`` draws from sub-stream ``rng.stream + t``.
    """
    if metric not in SEARCH_METRICS:
        raise InvalidSpec(f"metric must be one of {SEARCH_METRICS}, got {metric!r}")
    if mode not in SEARCH_MODES:
        raise InvalidSpec(f"mode must be one of {SEARCH_MODES}, got {mode!r}")
    if triples < 1:
        raise InvalidSpec(f"triples must be >= 1, got {triples}")
    if dim < 2:
        raise InvalidSpec(f"dim must be >= 2, got {dim}")

    worst = None
    for t in range(triples):
        sub = rng.substream(t)
        biased = mode == "biased" or (mode == "mixed" and t % 2 == 1)
        states = sample_triple(dim, sub.generator(), biased)
        slack, order = worst_orientation(metric, states)
        if worst is None or slack < worst[0]:
            worst = (slack, order, states, sub)

    slack, order, states, sub = worst
    record = None
    if slack < -tolerance:
        record = CounterexampleRecord(
            metric=metric,
            states=tuple(states[i] for i in order),
            excess=-slack,
            rng=sub,
        )
    return SearchResult(metric, dim, triples, mode, slack, record, rng)
