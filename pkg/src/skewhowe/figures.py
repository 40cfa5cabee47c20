"""Plot-ready data for the two reference figures: the JUE histogram against its
limiting law, and interlacing profiles against the Howe limit shape."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .howe import HoweParams, line_edge_scaled, sample_howe
from .jue import JueParams, edge_samples_jue, interlacing_profile, sample_spectrum
from .limits import HoweAsymptoticParams, howe_edges, jue_limit_density, ks_distance, limit_shape
from .profiles import sup_distance

FIG1 = {"N": 1000, "c_alpha": 0.95, "c_beta": 1.235}
FIG2 = {"sizes": (50, 500, 1500), "c_alpha": 1.6, "c_beta": 4.8}


@dataclass
class Figure1Data:
    params: JueParams
    bin_edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    grid: np.ndarray
    sigma: np.ndarray
    atoms: list
    ks: float
    zero_count: int
    expected_zeros: int

    def summary(self) -> dict:
        return {"params": self.params.as_dict(), "ks": self.ks, "zero_count": self.zero_count,
                "expected_zeros": self.expected_zeros, "atoms": [list(a) for a in self.atoms],
                "support": [float(self.grid[0]), float(self.grid[-1])]}


def figure1_data(N: int = FIG1["N"], c_alpha: float = FIG1["c_alpha"], c_beta: float = FIG1["c_beta"],
                 seed: int = 0, bins: int = 60, grid_points: int = 400) -> Figure1Data:
    """One JUE spectrum: histogram (atom bin included), the limiting density on a grid, KS distance."""
    params = JueParams(N, c_alpha, c_beta)
    sample = sample_spectrum(params, seed, 0)
    ev = np.clip(sample.eigenvalues, 0.0, 1.0)
    model = jue_limit_density(*params.realized)
    counts, edges = np.histogram(ev, bins=bins, range=(0.0, 1.0))
    dens = counts / (N * np.diff(edges))
    lm, lp = model.support
    grid = np.linspace(lm, lp, grid_points + 2)[1:-1]
    return Figure1Data(params, edges, counts, dens, grid, model(grid), list(model.atoms),
                       ks_distance(sample.eigenvalues, model), sample.zero_count(), max(0, N - params.M_alpha))


@dataclass
class Figure2Data:
    c_alpha: float
    c_beta: float
    seeds: int
    distances: dict[int, list[float]] = field(default_factory=dict)
    violations: dict[int, float] = field(default_factory=dict)
    breakpoints: dict[int, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)
    omega_grid: tuple[np.ndarray, np.ndarray] | None = None

    def medians(self) -> dict[int, float]:
        return {N: float(np.median(d)) for N, d in self.distances.items()}

    def decreasing(self) -> bool:
        m = [self.medians()[N] for N in sorted(self.distances)]
        return all(b < a for a, b in zip(m, m[1:]))

    def summary(self) -> dict:
        return {"c_alpha": self.c_alpha, "c_beta": self.c_beta, "seeds": self.seeds,
                "median_sup_distance": {str(k): v for k, v in self.medians().items()},
                "sup_distances": {str(k): v for k, v in self.distances.items()},
                "max_interlacing_violation": {str(k): v for k, v in self.violations.items()},
                "decreasing": self.decreasing()}


def figure2_data(sizes=FIG2["sizes"], c_alpha: float = FIG2["c_alpha"], c_beta: float = FIG2["c_beta"],
                 seeds: int = 20, seed: int = 0, grid_points: int = 4001) -> Figure2Data:
    """Sup-distance between the interlacing profile and the limit shape, per size and per replica.

    Horizontal coordinate ``t = (c+1) lam - 1`` with ``c = c_beta / c_alpha``; the
    limit shape uses the same nominal ratios for every size.
    """
    hp = HoweAsymptoticParams.from_jue(c_alpha, c_beta)
    omega = limit_shape(hp)
    c = hp.c
    out = Figure2Data(c_alpha, c_beta, seeds)
    grid = np.linspace(-1.0, c, grid_points)
    out.omega_grid = (grid, omega(grid))
    for N in sizes:
        params = JueParams(N, c_alpha, c_beta)
        dists, worst = [], 0.0
        for r in range(seeds):
            s = sample_spectrum(params, seed, r, with_minor=True)
            worst = max(worst, s.interlacing_violation())
            prof = interlacing_profile(s, c)
            dists.append(sup_distance(prof, omega, -1.0, c, grid_points, extra=prof.xs))
            if r == 0:
                out.breakpoints[N] = (prof.xs, prof.ys)
        out.distances[N] = dists
        out.violations[N] = worst
    return out


# -- edge comparison -----------------------------------------------------------


@dataclass
class EdgeComparison:
    n: int
    howe: HoweParams
    jue: JueParams
    x: np.ndarray
    y: np.ndarray
    ks: float
    pvalue: float

    def summary(self) -> dict:
        return {"n": self.n, "howe": {"n": self.howe.n, "k": self.howe.k, "p": self.howe.p},
                "jue": self.jue.as_dict(), "samples": len(self.x), "ks": self.ks, "pvalue": self.pvalue}


def matched_howe_params(n: int, c_alpha: float, c_beta: float) -> HoweParams:
    """Box with ``k = round(c n)`` and ``p/(nk-p)`` closest to ``1/(c_alpha+c_beta-1)``."""
    hp = HoweAsymptoticParams.from_jue(c_alpha, c_beta)
    k = max(1, int(np.floor(hp.c * n + 0.5)))
    p = int(np.floor(hp.alpha_h * n * k / (1 + hp.alpha_h) + 0.5))
    return HoweParams(n, k, p)


def edge_comparison(n: int = 100, c_alpha: float = 1.6, c_beta: float = 4.8, samples: int = 500,
                    seed: int = 0, top: int = 1) -> EdgeComparison:
    """Rescaled first rows of Howe diagrams vs rescaled top JUE eigenvalues, and their two-sample KS."""
    from scipy.stats import ks_2samp

    hparams = matched_howe_params(n, c_alpha, c_beta)
    hp = HoweAsymptoticParams.from_box(hparams.n, hparams.k, hparams.p)
    t_plus = howe_edges(hp)[1]
    diagrams = sample_howe(hparams, samples, seed)
    x = line_edge_scaled(diagrams, n, t_plus, top)
    jparams = JueParams(n, c_alpha, c_beta)
    y = edge_samples_jue(jparams, samples, top, seed)
    res = ks_2samp(x[:, 0], y[:, 0])
    return EdgeComparison(n, hparams, jparams, x, y, float(res.statistic), float(res.pvalue))
