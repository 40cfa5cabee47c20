"""Limiting densities of the JUE and of the skew Howe measure, their Stieltjes
transforms, the Markov-Krein correspondence and a single-cut equilibrium solver.

Quadrature over a band ``[a, b]`` uses ``y = (a+b)/2 - ((b-a)/2) cos(phi)``,
which removes square-root edge behaviour.  Atoms and constant plateaus are
carried exactly and never discretized.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

log = logging.getLogger(__name__)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _band(a: float, b: float, phi):
    return 0.5 * (a + b) - 0.5 * (b - a) * np.cos(phi)


@dataclass
class DensityModel:
    """A measure on the line: continuous part on ``support``, point atoms and constant plateaus.

    ``continuous`` must be vectorized and is only called inside ``support``.
    ``plateaus`` are ``(lo, hi, value)`` pieces of constant density outside
    the band (frozen regions of a particle density).
    """

    continuous: Callable[[np.ndarray], np.ndarray]
    support: tuple[float, float]
    atoms: list[tuple[float, float]] = field(default_factory=list)
    plateaus: list[tuple[float, float, float]] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self._cdf_table = None

    def __call__(self, x):
        """Continuous density plus plateaus; atoms are not included."""
        x = np.asarray(x, dtype=float)
        a, b = self.support
        inside = (x > a) & (x < b)
        out = np.zeros_like(x)
        if np.any(inside):
            out[inside] = self.continuous(x[inside])
        for lo, hi, v in self.plateaus:
            out = np.where((x >= lo) & (x <= hi) & ~inside, v, out)
        return out

    # -- integrals over the band -----------------------------------------

    def _band_integrand(self, phi, weight=None):
        a, b = self.support
        y = _band(a, b, phi)
        val = self.continuous(y) * 0.5 * (b - a) * np.sin(phi)
        return val if weight is None else val * weight(y)

    def _band_integral(self, weight=None, panels: int = 64) -> float:
        a, b = self.support
        if b <= a:
            return 0.0
        edges = np.linspace(0.0, np.pi, panels + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
        half = 0.5 * np.diff(edges)[:, None]
        phi = (mid + half * _GL_NODES[None, :]).ravel()
        w = (half * _GL_WEIGHTS[None, :]).ravel()
        return float(np.sum(w * self._band_integrand(phi, weight)))

    def continuous_mass(self) -> float:
        return self._band_integral()

    def mass(self) -> float:
        """Band quadrature plus plateaus plus atoms."""
        return (self.continuous_mass()
                + sum(v * (hi - lo) for lo, hi, v in self.plateaus)
                + sum(m for _, m in self.atoms))

    def moment(self, m: int) -> float:
        out = self._band_integral(lambda y: y**m)
        out += sum(v * (hi ** (m + 1) - lo ** (m + 1)) / (m + 1) for lo, hi, v in self.plateaus)
        out += sum(w * x**m for x, w in self.atoms)
        return out

    # -- distribution function -------------------------------------------

    def _table(self):
        if self._cdf_table is None:
            panels = 512
            edges = np.linspace(0.0, np.pi, panels + 1)
            half = 0.5 * np.diff(edges)
            mid = 0.5 * (edges[1:] + edges[:-1])
            cum = [0.0]
            for c, h in zip(mid, half):
                phi = c + h * _GL_NODES
                cum.append(cum[-1] + float(np.sum(h * _GL_WEIGHTS * self._band_integrand(phi))))
            self._cdf_table = CubicSpline(edges, np.asarray(cum))
        return self._cdf_table

    def cdf(self, x, left: bool = False):
        """``P(X <= x)``, or ``P(X < x)`` with ``left=True``."""
        x = np.asarray(x, dtype=float)
        a, b = self.support
        out = np.zeros_like(x)
        if b > a:
            spline = self._table()
            z = np.clip((0.5 * (a + b) - x) / (0.5 * (b - a)), -1.0, 1.0)
            band = spline(np.arccos(z))
            out += np.where(x <= a, 0.0, np.where(x >= b, spline(np.pi), band))
        for lo, hi, v in self.plateaus:
            out += v * np.clip(x - lo, 0.0, hi - lo)
        for loc, m in self.atoms:
            out += m * ((x > loc) if left else (x >= loc))
        return out

    # -- Stieltjes transform ---------------------------------------------

    def distance_to_support(self, u: complex) -> float:
        u = complex(u)
        pieces = [self.support] + [(lo, hi) for lo, hi, v in self.plateaus if v] + [(x, x) for x, _ in self.atoms]
        d = np.inf
        for lo, hi in pieces:
            nearest = min(max(u.real, lo), hi)
            d = min(d, abs(u - nearest))
        return d

    def stieltjes(self, u: complex) -> complex:
        """``G(u) = int dens(y) / (u - y) dy`` for ``u`` off the support."""
        if self.distance_to_support(u) <= 1e-6:
            raise ValueError(f"u={u} is within 1e-6 of the support")
        u = complex(u)
        a, b = self.support
        total = 0j
        if b > a:
            def f(phi):
                y = _band(a, b, phi)
                return complex(self.continuous(np.array([y]))[0] * 0.5 * (b - a) * np.sin(phi) / (u - y))

            val, _ = quad(f, 0.0, np.pi, complex_func=True, epsabs=1e-12, epsrel=1e-12, limit=400)
            total += val
        for lo, hi, v in self.plateaus:
            if v and hi > lo:
                total += v * np.log((u - lo) / (u - hi))
        for x, m in self.atoms:
            total += m / (u - x)
        return complex(total)


# -- JUE ---------------------------------------------------------------------


def jue_edges(c_alpha: float, c_beta: float) -> tuple[float, float]:
    s = c_alpha + c_beta
    if s <= 1:
        raise ValueError(f"need c_alpha + c_beta > 1, got {s}")
    r = 2.0 * np.sqrt(c_alpha * c_beta * (s - 1))
    base = c_alpha * (s - 1) + c_beta
    return (base - r) / s**2, (base + r) / s**2


def jue_limit_density(c_alpha: float, c_beta: float) -> DensityModel:
    """Limiting eigenvalue law of the JUE with ``M_alpha ~ c_alpha N``, ``M_beta ~ c_beta N``.

    Continuous part ``(c_alpha + c_beta) sqrt((l+ - x)(x - l-)) / (2 pi x (1-x))`` on
    ``(l-, l+)``, atoms ``max(0, 1-c_alpha)`` at 0 and ``max(0, 1-c_beta)`` at 1.
    """
    c_alpha, c_beta = float(c_alpha), float(c_beta)
    if c_alpha <= 0 or c_beta <= 0:
        raise ValueError("c_alpha and c_beta must be positive")
    lm, lp = jue_edges(c_alpha, c_beta)
    s = c_alpha + c_beta

    def dens(x):
        x = np.asarray(x, dtype=float)
        return s * np.sqrt(np.clip((lp - x) * (x - lm), 0.0, None)) / (2 * np.pi * x * (1 - x))

    atoms = []
    if c_alpha < 1:
        atoms.append((0.0, 1.0 - c_alpha))
    if c_beta < 1:
        atoms.append((1.0, 1.0 - c_beta))
    return DensityModel(dens, (lm, lp), atoms, name=f"jue({c_alpha:g},{c_beta:g})")


# -- skew Howe ---------------------------------------------------------------


@dataclass(frozen=True)
class HoweAsymptoticParams:
    """``c = lim k/n`` and ``alpha_h = p / (nk - p)``."""

    c: float
    alpha_h: float

    def __post_init__(self):
        if not (self.c > 0 and self.alpha_h > 0):
            raise ValueError(f"need c > 0 and alpha_h > 0, got c={self.c}, alpha_h={self.alpha_h}")

    @property
    def zeta(self) -> float:
        return float(np.log(self.alpha_h))

    @classmethod
    def from_box(cls, n: int, k: int, p: int) -> "HoweAsymptoticParams":
        if not 0 < p < n * k:
            raise ValueError("need 0 < p < nk")
        return cls(k / n, p / (n * k - p))

    @classmethod
    def from_jue(cls, c_alpha: float, c_beta: float) -> "HoweAsymptoticParams":
        """Dictionary ``c = c_beta / c_alpha``, ``alpha_h = 1 / (c_alpha + c_beta - 1)``."""
        if c_alpha + c_beta <= 1:
            raise ValueError("need c_alpha + c_beta > 1")
        return cls(c_beta / c_alpha, 1.0 / (c_alpha + c_beta - 1))


def howe_edges(params: HoweAsymptoticParams) -> tuple[float, float]:
    a, c = params.alpha_h, params.c
    r = 2.0 * np.sqrt(a * c)
    lo, hi = (a * (c - 1) - r) / (a + 1), (a * (c - 1) + r) / (a + 1)
    # the band always lies in [-1, c]; clip rounding only
    return max(lo, -1.0), min(hi, c)


def _frozen_values(params: HoweAsymptoticParams) -> tuple[float, float]:
    """Constant density on ``[-1, t-]`` and ``[t+, c]``: each region is either packed (1) or empty (0)."""
    left = 1.0 if params.alpha_h * params.c <= 1 else 0.0
    right = 1.0 if params.alpha_h >= params.c else 0.0
    return left, right


def howe_limit_density(params: HoweAsymptoticParams) -> DensityModel:
    """Particle density of rescaled ``(lam_i - i)/n``: arccos law on ``[t-, t+]`` plus frozen plateaus."""
    a, c = params.alpha_h, params.c
    tm, tp = howe_edges(params)

    def dens(x):
        x = np.asarray(x, dtype=float)
        arg = (a * (c - 1) + x * (1 - a)) / (2 * np.sqrt(a * np.clip((c - x) * (x + 1), 1e-300, None)))
        return np.arccos(np.clip(arg, -1.0, 1.0)) / np.pi

    left, right = _frozen_values(params)
    plateaus = []
    if tm > -1:
        plateaus.append((-1.0, tm, left))
    if tp < c:
        plateaus.append((tp, c, right))
    return DensityModel(dens, (tm, tp), [], plateaus, name=f"rho(c={c:g},alpha={a:g})")


def howe_transition_measure(params: HoweAsymptoticParams) -> DensityModel:
    """Transition measure of the limit shape on ``[-1, c]`` with its atoms at ``-1`` and ``c``."""
    a, c = params.alpha_h, params.c
    tm, tp = howe_edges(params)

    def dens(x):
        x = np.asarray(x, dtype=float)
        return (1 + a) / (2 * np.pi * a) * np.sqrt(np.clip((x - tm) * (tp - x), 0.0, None)) / ((c - x) * (x + 1))

    atoms = []
    m_left = (a * c - 1) / (a * (c + 1))
    m_right = (a - c) / (a * (c + 1))
    if m_left > 0:
        atoms.append((-1.0, m_left))
    if m_right > 0:
        atoms.append((c, m_right))
    return DensityModel(dens, (tm, tp), atoms, name=f"sigmaH(c={c:g},alpha={a:g})")


@dataclass
class LimitShape:
    """``Omega(x) = 1 + int_{-1}^x (1 - 2 rho)`` on ``[-1, c]``, extended by ``|x|``-type slopes outside."""

    params: HoweAsymptoticParams
    rho: DensityModel

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        c = self.params.c
        xc = np.clip(x, -1.0, c)
        inner = 1.0 + (xc + 1.0) - 2.0 * self.rho.cdf(xc)
        end = 1.0 + (c + 1.0) - 2.0 * float(self.rho.cdf(c))
        return np.where(x < -1.0, 1.0 + (-1.0 - x), np.where(x > c, end + (x - c), inner))

    @property
    def edges(self) -> tuple[float, float]:
        return self.rho.support


def limit_shape(params: HoweAsymptoticParams) -> LimitShape:
    return LimitShape(params, howe_limit_density(params))


# -- checks ------------------------------------------------------------------


def standard_grid(params: HoweAsymptoticParams) -> list[complex]:
    """Ten evaluation points away from ``[-1, c]``: real points on both sides and complex ones."""
    c = params.c
    mid = 0.5 * (c - 1)
    return [c + 0.5, c + 1.0, c + 3.0, -1.5, -2.0, -5.0,
            complex(mid, 0.5), complex(mid, 2.0), complex(mid, -1.0), complex(c + 1.0, 1.0)]


def markov_krein_residual(params: HoweAsymptoticParams, grid: Sequence[complex] | None = None) -> float:
    """``max_u |G_sigmaH(u) - exp(G_rho(u)) / (u + 1)|`` over the grid."""
    grid = standard_grid(params) if grid is None else grid
    sigma = howe_transition_measure(params)
    rho = howe_limit_density(params)
    worst = 0.0
    for u in grid:
        lhs = sigma.stieltjes(u)
        rhs = np.exp(rho.stieltjes(u)) / (complex(u) + 1)
        worst = max(worst, abs(lhs - rhs))
    return worst


def markov_krein_check(params: HoweAsymptoticParams, grid: Sequence[complex] | None = None) -> dict:
    grid = standard_grid(params) if grid is None else list(grid)
    return {"check": "markov_krein", "params": {"c": params.c, "alpha_h": params.alpha_h},
            "grid": [str(complex(u)) for u in grid], "residual": markov_krein_residual(params, grid)}


def pushforward_residual(c_alpha: float, c_beta: float, points: int = 100) -> float:
    """Compare the Howe transition measure mapped by ``x -> (x+1)/(c+1)`` with the JUE law.

    Returns the worst of the pointwise density difference on an interior grid
    and the atom mass differences.
    """
    params = HoweAsymptoticParams.from_jue(c_alpha, c_beta)
    c = params.c
    sigma_h = howe_transition_measure(params)
    sigma = jue_limit_density(c_alpha, c_beta)
    lm, lp = sigma.support
    ys = np.linspace(lm, lp, points + 2)[1:-1]
    mapped = (c + 1) * sigma_h((c + 1) * ys - 1)
    worst = float(np.max(np.abs(mapped - sigma(ys))))
    atoms_h = {round((x + 1) / (c + 1), 12): m for x, m in sigma_h.atoms}
    atoms_j = {round(x, 12): m for x, m in sigma.atoms}
    for key in set(atoms_h) | set(atoms_j):
        worst = max(worst, abs(atoms_h.get(key, 0.0) - atoms_j.get(key, 0.0)))
    return worst


def ks_distance(samples: Sequence[float], model: DensityModel, snap: float = 1e-9) -> float:
    """Kolmogorov-Smirnov distance between an ECDF and a model CDF that may have atoms.

    Samples within ``snap`` of an atom are moved onto it, so rounding noise in
    exact zeros does not split an atom.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    for loc, _ in model.atoms:
        x[np.abs(x - loc) <= snap] = loc
    x = np.sort(x)
    n = len(x)
    upper = model.cdf(x)
    lower = model.cdf(x, left=True)
    # ECDF just after x_i is (#{<= x_i})/n and just before it is (#{< x_i})/n
    after = np.searchsorted(x, x, side="right") / n
    before = np.searchsorted(x, x, side="left") / n
    return float(max(np.max(np.abs(after - upper)), np.max(np.abs(before - lower))))


# -- equilibrium problems ----------------------------------------------------


@dataclass
class PotentialModel:
    """External field ``V`` with derivative ``dV`` on the open ``domain``.

    ``walls`` marks domain ends where the density may touch a hard edge.
    """

    name: str
    V: Callable
    dV: Callable
    domain: tuple[float, float]
    default_bracket: tuple[float, float]
    walls: tuple[bool, bool] = (False, False)
    ddV: Callable | None = None


def gue_potential() -> PotentialModel:
    return PotentialModel("gue", lambda y: 0.5 * np.asarray(y) ** 2, lambda y: np.asarray(y, dtype=float),
                          (-np.inf, np.inf), (-10.0, 10.0), ddV=lambda y: np.ones_like(np.asarray(y, dtype=float)))


def jue_potential(c_alpha: float, c_beta: float, eps: float = 1e-6) -> PotentialModel:
    """``V = (1-c_alpha) ln x + (1-c_beta) ln(1-x)`` on ``(0, 1)``."""
    ca, cb = float(c_alpha), float(c_beta)
    return PotentialModel(
        "jue",
        lambda y: (1 - ca) * np.log(y) + (1 - cb) * np.log(1 - y),
        lambda y: (1 - ca) / y - (1 - cb) / (1 - y),
        (0.0, 1.0),
        (eps, 1.0 - eps),
        ddV=lambda y: -(1 - ca) / y**2 - (1 - cb) / (1 - y) ** 2,
    )


def howe_potential(params: HoweAsymptoticParams) -> PotentialModel:
    """``V = (c-x) ln(c-x) + (x+1) ln(x+1) + zeta x`` with ``zeta = ln alpha_h`` on ``(-1, c)``."""
    c, z = params.c, params.zeta
    return PotentialModel(
        "howe",
        lambda y: (c - y) * np.log(c - y) + (y + 1) * np.log(y + 1) + z * y,
        lambda y: np.log((y + 1) / (c - y)) + z,
        (-1.0, c),
        (-1.0, c),
        walls=(True, True),
        ddV=lambda y: 1 / (y + 1) + 1 / (c - y),
    )


def _graded_nodes(m: int, q: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre in ``phi`` on ``[0, pi]`` after a Sidi-type grading toward both ends.

    The grading clusters nodes at the band edges, which keeps log-singular
    fields at a hard wall integrable to high accuracy.
    """
    s, w = np.polynomial.legendre.leggauss(m)
    s = 0.5 * (s + 1)
    w = 0.5 * w
    a, b = s**q, (1 - s) ** q
    g = a / (a + b)
    dg = q * (s ** (q - 1) * (1 - s) ** q + s**q * (1 - s) ** (q - 1)) / (a + b) ** 2
    return np.pi * g, np.pi * dg * w


@dataclass
class EquilibriumResult:
    a: float
    b: float
    xs: np.ndarray
    density: np.ndarray
    mass: float
    residual: float
    hard_edges: tuple[bool, bool]
    iterations: int

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "mass": self.mass, "residual": self.residual,
                "hard_edges": list(self.hard_edges), "iterations": self.iterations}


class EquilibriumSolver:
    """Single-cut equilibrium measure for ``p.v. int sigma(y)/(x-y) dy = V'(x)/2``.

    The endpoints solve ``int V'(y) dy / sqrt((b-y)(y-a)) = 0`` and
    ``(1/2pi) int y V'(y) dy / sqrt((b-y)(y-a)) = 1``; the density is
    ``(1/2pi^2) sqrt((b-x)(x-a)) int (V'(x)-V'(y))/(x-y) dy / sqrt((b-y)(y-a))``.
    """

    def __init__(self, potential: PotentialModel, nodes: int = 400, grading: float = 3.0):
        self.potential = potential
        self.phi, self.w = _graded_nodes(nodes, grading)
        self.cos = np.cos(self.phi)

    def _points(self, a, b):
        return self._inside(0.5 * (a + b) - 0.5 * (b - a) * self.cos)

    def _inside(self, y):
        lo, hi = self.potential.domain
        if np.isfinite(lo):
            y = np.maximum(y, np.nextafter(lo, hi))
        if np.isfinite(hi):
            y = np.minimum(y, np.nextafter(hi, lo))
        return y

    def support_equations(self, a: float, b: float) -> np.ndarray:
        y = self._points(a, b)
        v = self.potential.dV(y)
        return np.array([np.sum(self.w * v) / np.pi, np.sum(self.w * y * v) / (2 * np.pi) - 1.0])

    def density(self, a: float, b: float, x) -> np.ndarray:
        x = self._inside(np.atleast_1d(np.asarray(x, dtype=float)))
        y = self._points(a, b)
        vy = self.potential.dV(y)
        out = np.empty_like(x)
        for i, xi in enumerate(x):
            dx = xi - y
            close = np.abs(dx) < 1e-9 * max(1.0, b - a)
            if self.potential.ddV is not None:
                near = self.potential.ddV(y)
            else:
                h = 1e-6 * (b - a)
                near = (self.potential.dV(y + h) - self.potential.dV(y - h)) / (2 * h)
            q = np.where(close, near, (self.potential.dV(xi) - vy) / np.where(close, 1.0, dx))
            out[i] = np.sqrt(max((b - xi) * (xi - a), 0.0)) * np.sum(self.w * q) / (2 * np.pi**2)
        return out

    def _jacobian(self, a, b, f, lo, hi):
        h = 1e-7 * (hi - lo)
        jac = np.empty((2, 2))
        if a - h >= lo and a + h <= b:
            jac[:, 0] = (self.support_equations(a + h, b) - self.support_equations(a - h, b)) / (2 * h)
        else:
            jac[:, 0] = (self.support_equations(a + h, b) - f) / h
        if b + h <= hi and b - h >= a:
            jac[:, 1] = (self.support_equations(a, b + h) - self.support_equations(a, b - h)) / (2 * h)
        else:
            jac[:, 1] = (f - self.support_equations(a, b - h)) / h
        return jac

    def solve(self, bracket: tuple[float, float] | None = None, guess: tuple[float, float] | None = None,
              max_iter: int = 100, tol: float = 1e-10, wall_tol: float = 1e-6, grid: int = 201) -> EquilibriumResult:
        lo, hi = bracket or self.potential.default_bracket
        if guess is None:
            width = hi - lo
            guess = (lo + 0.25 * width, hi - 0.25 * width)
        a, b = map(float, guess)
        f = self.support_equations(a, b)
        it = 0
        for it in range(1, max_iter + 1):
            if np.max(np.abs(f)) < 1e-13:
                break
            try:
                step = np.linalg.solve(self._jacobian(a, b, f, lo, hi), -f)
            except np.linalg.LinAlgError:
                break
            t = 1.0
            improved = False
            while t > 1e-10:
                na = min(max(a + t * step[0], lo), hi)
                nb = min(max(b + t * step[1], lo), hi)
                if na < nb:
                    nf = self.support_equations(na, nb)
                    if np.linalg.norm(nf) < np.linalg.norm(f) * (1 - 1e-4 * t):
                        improved = True
                        break
                t *= 0.5
            if not improved:
                break
            a, b, f = na, nb, nf
        residual = float(np.max(np.abs(f)))
        on_wall = (self.potential.walls[0] and a <= self.potential.domain[0],
                   self.potential.walls[1] and b >= self.potential.domain[1])
        limit = wall_tol if any(on_wall) else tol
        if not np.isfinite(residual) or residual > limit:
            raise RuntimeError(f"single-cut ansatz failed: residual {residual:.3e} at (a, b) = ({a}, {b})")
        # interior grid: at a hard wall the formula is a 0 * inf limit
        xs = np.linspace(a, b, grid + 2)[1:-1]
        dens = self.density(a, b, xs)
        if np.any(dens < -1e-8):
            raise RuntimeError("single-cut ansatz failed: negative density")
        # outer points stay well inside the inner nodes, so the 0 * inf limit at a wall is resolved
        t, w = np.polynomial.legendre.leggauss(128)
        phi = 0.5 * np.pi * (t + 1)
        inner = self.density(a, b, _band(a, b, phi))
        mass = float(np.sum(0.5 * np.pi * w * inner * 0.5 * (b - a) * np.sin(phi)))
        if abs(mass - 1) > 1e-6:
            raise RuntimeError(f"single-cut ansatz failed: mass {mass}")
        log.debug("equilibrium %s: (%g, %g) residual %.2e after %d steps", self.potential.name, a, b, residual, it)
        return EquilibriumResult(a, b, xs, dens, mass, residual, on_wall, it)


def equilibrium_solver(potential: PotentialModel, bracket: tuple[float, float] | None = None,
                       **kwargs) -> EquilibriumResult:
    return EquilibriumSolver(potential).solve(bracket, **kwargs)


def potential_preset(name: str, c_alpha: float | None = None, c_beta: float | None = None,
                     c: float | None = None, alpha_h: float | None = None) -> PotentialModel:
    if name == "gue":
        return gue_potential()
    if name == "jue":
        if c_alpha is None or c_beta is None:
            raise ValueError("jue preset needs c_alpha and c_beta")
        return jue_potential(c_alpha, c_beta)
    if name == "howe":
        if c is None or alpha_h is None:
            raise ValueError("howe preset needs c and alpha_h")
        return howe_potential(HoweAsymptoticParams(c, alpha_h))
    raise ValueError(f"unknown potential preset {name!r}")
