"""Grid data comparing the superfidelity and fidelity lower bounds on trace distance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidSpec
from .measures import measure_all
from .states import family_rho_alpha, family_sigma_beta, family_tau_gamma, maximally_mixed
from .textio import csv_text

SIGN_TOL = 1e-9
DEFAULT_GRID = 101
DEFAULT_FIG1_DIMS = tuple(range(2, 33))

AXES = {1: ("N", "alpha"), 2: ("alpha", "beta"), 3: ("alpha", "gamma")}
MEASURE_COLUMNS = ("d_tr", "fidelity", "superfidelity", "diff")


def unit_grid(points: int) -> np.ndarray:
    if points < 2:
        raise InvalidSpec(f"grid needs at least 2 points, got {points}")
    return np.linspace(0.0, 1.0, points)


def sign(x: float, tol: float = SIGN_TOL) -> int:
    """+1 / -1 outside the ``tol`` band around zero, 0 inside it."""
    if x > tol:
        return 1
    if x < -tol:
        return -1
    return 0


def figure_pair(figure_id: int, first: float, second: float):
    """The two states compared at one grid point of a figure."""
    if figure_id == 1:
        n = int(first)
        return family_rho_alpha(second, n), maximally_mixed(n)
    if figure_id == 2:
        return family_rho_alpha(first, 8), family_sigma_beta(second)
    if figure_id == 3:
        return family_rho_alpha(first, 8), family_tau_gamma(second)
    raise InvalidSpec(f"figure id must be 1, 2 or 3, got {figure_id!r}")


def figure_row(figure_id: int, first: float, second: float) -> tuple:
    m = measure_all(*figure_pair(figure_id, first, second))
    diff = m.superfidelity - m.sqrt_fidelity
    return (first, second, m.d_tr, m.fidelity, m.superfidelity, diff, sign(diff))


@dataclass(frozen=True)
class FigureTable:
    """Rows ``(p1, p2, d_tr, fidelity, superfidelity, G - sqrt(F), sign)`` in row-major grid order."""

    figure_id: int
    axes: tuple[str, str]
    grid: tuple[tuple, tuple]
    rows: list[tuple]

    @property
    def diff(self) -> np.ndarray:
        return np.array([r[5] for r in self.rows])

    @property
    def signs(self) -> np.ndarray:
        return np.array([r[6] for r in self.rows])

    def diff_matrix(self) -> np.ndarray:
        return self.diff.reshape(len(self.grid[0]), len(self.grid[1]))

    def header(self) -> list[str]:
        cols = list(self.axes) + list(MEASURE_COLUMNS)
        if self.figure_id == 3:
            cols.append("sign")
        return cols

    def to_csv(self) -> str:
        width = len(self.header())
        return csv_text(self.header(), (row[:width] for row in self.rows))


def figure_grid(
    figure_id: int,
    grid: int = DEFAULT_GRID,
    dims: Optional[Sequence[int]] = None,
) -> FigureTable:
    """Evaluate one of the three comparison grids.

    Figure 1 pairs ``rho_alpha`` with ``1/N`` over ``dims x alpha``; figures 2
    and 3 pair ``rho_alpha`` in dimension 8 with ``sigma_beta`` and
    ``tau_gamma`` over a ``grid x grid`` square.
    """
    if figure_id not in AXES:
        raise InvalidSpec(f"figure id must be 1, 2 or 3, got {figure_id!r}")
    values = unit_grid(grid)
    if figure_id == 1:
        dims = tuple(DEFAULT_FIG1_DIMS if dims is None else dims)
        if not dims or any(int(n) < 2 for n in dims):
            raise InvalidSpec(f"figure 1 needs dimensions >= 2, got {dims}")
        first_axis = tuple(int(n) for n in dims)
    else:
        first_axis = tuple(float(v) for v in values)
    second_axis = tuple(float(v) for v in values)
    rows = [figure_row(figure_id, p, q) for p in first_axis for q in second_axis]
    return FigureTable(figure_id, AXES[figure_id], (first_axis, second_axis), rows)
