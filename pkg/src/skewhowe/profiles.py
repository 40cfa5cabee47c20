"""Piecewise-linear profiles with slopes +-1 and the sup-distance used to compare them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np


@dataclass
class PiecewiseLinearProfile:
    """Continuous function through ``(xs, ys)``; slope -1 left of ``xs[0]``, +1 right of ``xs[-1]``.

    ``minima`` and ``maxima`` are kept when the profile was built from an
    interlacing pair, empty otherwise.
    """

    xs: np.ndarray
    ys: np.ndarray
    minima: np.ndarray = field(default_factory=lambda: np.empty(0))
    maxima: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        y = np.interp(x, self.xs, self.ys)
        y = np.where(x < self.xs[0], self.ys[0] + (self.xs[0] - x), y)
        y = np.where(x > self.xs[-1], self.ys[-1] + (x - self.xs[-1]), y)
        return y

    def slopes(self) -> np.ndarray:
        return np.diff(self.ys) / np.diff(self.xs)

    @classmethod
    def from_interlacing(cls, minima: Sequence[float], maxima: Sequence[float],
                         tol: float = 1e-9) -> "PiecewiseLinearProfile":
        """Kerov's interlacing construction: ``f(t) = |t - t0|`` outside the data, ``t0 = sum(min) - sum(max)``.

        Violations up to ``tol`` (eigenvalue rounding) are clipped away.
        """
        lo = np.sort(np.asarray(minima, dtype=float))
        hi = np.sort(np.asarray(maxima, dtype=float))
        if len(hi) != len(lo) - 1:
            raise ValueError("need exactly one maximum between consecutive minima")
        if np.any(hi < lo[:-1] - tol) or np.any(hi > lo[1:] + tol):
            raise ValueError("minima and maxima do not interlace")
        hi = np.clip(hi, lo[:-1], lo[1:])
        center = lo.sum() - hi.sum()
        xs = np.empty(2 * len(lo) - 1)
        xs[0::2] = lo
        xs[1::2] = hi
        ys = np.empty_like(xs)
        ys[0] = abs(lo[0] - center)
        steps = np.diff(xs) * np.where(np.arange(len(xs) - 1) % 2 == 0, 1.0, -1.0)
        ys[1:] = ys[0] + np.cumsum(steps)
        return cls(xs, ys, lo, hi)

    @classmethod
    def from_occupied_cells(cls, cells: Sequence[int], scale: int, left: int) -> "PiecewiseLinearProfile":
        """Profile of a particle configuration on the lattice ``m / scale``.

        ``cells`` are the occupied integer sites ``m`` (each covering
        ``[m, m+1] / scale``); everything below ``left`` counts as occupied and
        the profile equals ``|x|`` there, i.e. ``f(left/scale) = -left/scale``.
        """
        cells = np.asarray(sorted(cells), dtype=int)
        top = int(cells.max()) + 1 if len(cells) else left
        top = max(top, 0)
        occ = np.zeros(top - left, dtype=bool)
        occ[cells - left] = True
        steps = np.where(occ, -1.0, 1.0) / scale
        xs = (left + np.arange(top - left + 1)) / scale
        ys = np.concatenate([[-left / scale], -left / scale + np.cumsum(steps)])
        keep = np.ones(len(xs), dtype=bool)
        if len(steps) > 1:
            keep[1:-1] = steps[1:] != steps[:-1]
        return cls(xs[keep], ys[keep])


def sup_distance(f: Callable, g: Callable, lo: float, hi: float, points: int = 4001,
                 extra: Sequence[float] = ()) -> float:
    """Max of ``|f - g|`` over a uniform grid on ``[lo, hi]`` plus ``extra`` points inside it."""
    grid = np.linspace(lo, hi, points)
    extra = np.asarray(extra, dtype=float)
    extra = extra[(extra >= lo) & (extra <= hi)]
    grid = np.concatenate([grid, extra])
    return float(np.max(np.abs(np.asarray(f(grid)) - np.asarray(g(grid)))))
