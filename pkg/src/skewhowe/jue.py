"""Jacobi unitary ensemble: Wishart construction, spectra with the corner minor,
exact small-N moments, Monte Carlo correlators, interlacing profiles, edge samples."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import floor
from typing import Sequence

import mpmath
import numpy as np
import scipy.linalg as sla
from scipy.linalg.blas import zherk
from scipy.special import roots_jacobi

from .howe import replica_rng
from .limits import jue_edges
from .profiles import PiecewiseLinearProfile

log = logging.getLogger(__name__)

RANK_TOL = 1e-9


@dataclass(frozen=True)
class JueParams:
    """Matrix size ``N`` and requested ratios; ``M = round(c N)`` rounds half up."""

    N: int
    c_alpha: float
    c_beta: float

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")
        if self.c_alpha <= 0 or self.c_beta <= 0:
            raise ValueError("c_alpha and c_beta must be positive")
        if self.M_alpha < 1 or self.M_beta < 1:
            raise ValueError(f"M_alpha={self.M_alpha}, M_beta={self.M_beta} must be at least 1")
        if self.M_alpha + self.M_beta <= self.N:
            raise ValueError(f"need M_alpha + M_beta > N, got {self.M_alpha} + {self.M_beta} <= {self.N}")

    @property
    def M_alpha(self) -> int:
        return int(floor(self.c_alpha * self.N + 0.5))

    @property
    def M_beta(self) -> int:
        return int(floor(self.c_beta * self.N + 0.5))

    @property
    def alpha(self) -> int:
        return self.M_alpha - self.N

    @property
    def beta(self) -> int:
        return self.M_beta - self.N

    @property
    def realized(self) -> tuple[float, float]:
        return self.M_alpha / self.N, self.M_beta / self.N

    def as_dict(self) -> dict:
        return {"N": self.N, "c_alpha": self.c_alpha, "c_beta": self.c_beta, "M_alpha": self.M_alpha,
                "M_beta": self.M_beta, "alpha": self.alpha, "beta": self.beta,
                "realized_c_alpha": self.realized[0], "realized_c_beta": self.realized[1]}


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def _gram(X: np.ndarray) -> np.ndarray:
    """``X^* X`` through the Hermitian rank-k update (half the work of a full product)."""
    X = np.asarray(X, dtype=complex)
    if X.shape[0] == 0:
        return np.zeros((X.shape[1], X.shape[1]), dtype=complex)
    upper = zherk(1.0, X, trans=2, lower=0)
    return np.triu(upper) + np.triu(upper, 1).conj().T


def jue_from_factors(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``(W_A + W_B)^{-1/2} W_A (W_A + W_B)^{-1/2}`` with ``W = X^* X``.

    Raises ``np.linalg.LinAlgError`` if ``W_A + W_B`` is numerically singular.
    """
    wa = _gram(A)
    s = wa + _gram(B)
    vals, vecs = sla.eigh(s, driver="evr", check_finite=False)
    if vals[0] <= 1e-12 * vals[-1]:
        raise np.linalg.LinAlgError("W_A + W_B is numerically singular")
    root = (vecs / np.sqrt(vals)) @ vecs.conj().T
    h = root @ wa @ root
    return 0.5 * (h + h.conj().T)


def jue_matrix(params: JueParams, seed: int = 0, replica: int = 0, max_tries: int = 10) -> np.ndarray:
    """One Hermitian JUE draw from the substream ``(seed, replica)``.

    A singular ``W_A + W_B`` (probability zero) triggers a redraw from the
    next substream, which is logged.
    """
    for attempt in range(max_tries):
        rng = replica_rng(seed, replica + attempt * 1_000_003)
        A = _ginibre(rng, params.M_alpha, params.N)
        B = _ginibre(rng, params.M_beta, params.N)
        try:
            return jue_from_factors(A, B)
        except np.linalg.LinAlgError:
            log.warning("singular W_A + W_B at seed=%s replica=%s, redrawing", seed, replica)
    raise RuntimeError("could not draw a nonsingular W_A + W_B")


@dataclass
class SpectrumSample:
    eigenvalues: np.ndarray
    minor_eigenvalues: np.ndarray | None = None
    params: JueParams | None = None
    seed: int | None = None
    replica: int = 0

    def zero_count(self, tol: float = RANK_TOL) -> int:
        return int(np.sum(np.abs(self.eigenvalues) <= tol))

    def interlacing_violation(self) -> float:
        """Largest violation of ``l_i >= m_i >= l_{i+1}`` (0 when the pair interlaces)."""
        if self.minor_eigenvalues is None:
            raise ValueError("sample has no minor spectrum")
        lam, mu = self.eigenvalues, self.minor_eigenvalues
        return float(max(0.0, np.max(mu - lam[:-1], initial=0.0), np.max(lam[1:] - mu, initial=0.0)))


def spectrum(H: np.ndarray, with_minor: bool = False, check: bool = True, params: JueParams | None = None,
             seed: int | None = None, replica: int = 0) -> SpectrumSample:
    """Descending eigenvalues of ``H`` and optionally of ``H`` without its last row and column.

    With ``check`` every pair must satisfy ``|Hv - lv| <= 1e-9 ||H||``.
    """
    H = np.asarray(H)
    try:
        if check:
            vals, vecs = sla.eigh(H, driver="evr", check_finite=False)
            scale = max(np.max(np.abs(H)), 1e-300)
            resid = np.max(np.abs(H @ vecs - vecs * vals))
            if resid > 1e-9 * scale:
                raise np.linalg.LinAlgError(f"eigenpair residual {resid:.3e}")
        else:
            vals = sla.eigh(H, eigvals_only=True, driver="evr", check_finite=False)
        minor = None
        if with_minor and H.shape[0] > 1:
            minor = sla.eigh(H[:-1, :-1], eigvals_only=True, driver="evr", check_finite=False)[::-1]
        elif with_minor:
            minor = np.empty(0)
    except (np.linalg.LinAlgError, ValueError) as exc:
        path = "jue_failed_matrix.npy"
        np.save(path, H)
        raise RuntimeError(f"eigensolver failed ({exc}); matrix written to {path}") from exc
    return SpectrumSample(vals[::-1].copy(), minor, params, seed, replica)


def sample_spectrum(params: JueParams, seed: int = 0, replica: int = 0, with_minor: bool = False,
                    check: bool = True) -> SpectrumSample:
    H = jue_matrix(params, seed, replica)
    return spectrum(H, with_minor, check, params, seed, replica)


# -- exact small-N quantities ------------------------------------------------


def z_jue(N: int, alpha, beta, dps: int = 30) -> mpmath.mpf:
    """``pi^{N(N-1)/2} prod_k Gamma(alpha+k) Gamma(beta+k) / Gamma(alpha+beta+2N+1-k)``."""
    with mpmath.workdps(dps):
        a, b = mpmath.mpf(alpha), mpmath.mpf(beta)
        out = mpmath.pi ** (N * (N - 1) // 2)
        for k in range(1, N + 1):
            for arg in (a + k, b + k, a + b + 2 * N + 1 - k):
                if arg <= 0 and arg == mpmath.floor(arg):
                    raise ValueError(f"Gamma pole at argument {arg}")
            out *= mpmath.gamma(a + k) * mpmath.gamma(b + k) / mpmath.gamma(a + b + 2 * N + 1 - k)
        return +out


def selberg_integral(N: int, alpha, beta, dps: int = 30) -> mpmath.mpf:
    """``int_{[0,1]^N} prod_{i<j} (x_i - x_j)^2 prod x^alpha (1-x)^beta dx``."""
    with mpmath.workdps(dps):
        a, b = mpmath.mpf(alpha), mpmath.mpf(beta)
        out = mpmath.mpf(1)
        for j in range(N):
            out *= mpmath.gamma(a + 1 + j) * mpmath.gamma(b + 1 + j) * mpmath.gamma(j + 2)
            out /= mpmath.gamma(a + b + N + j + 1)
        return +out


def _power_sums(x: np.ndarray, kappa: Sequence[int]) -> np.ndarray:
    out = np.ones(x.shape[0])
    for m in kappa:
        out = out * np.sum(x**m, axis=1)
    return out


def _jacobi_tensor_average(N: int, alpha: float, beta: float, kappa: Sequence[int], nodes: int) -> float:
    t, w = roots_jacobi(nodes, beta, alpha)  # weight (1-t)^beta (1+t)^alpha
    x = 0.5 * (1 + t)
    grids = np.meshgrid(*([x] * N), indexing="ij")
    wgrid = np.ones([nodes] * N)
    for axis, g in enumerate(np.meshgrid(*([w] * N), indexing="ij")):
        wgrid = wgrid * g
    pts = np.stack([g.ravel() for g in grids], axis=1)
    vdm = np.ones(pts.shape[0])
    for i in range(N):
        for j in range(i + 1, N):
            vdm *= (pts[:, i] - pts[:, j]) ** 2
    weights = wgrid.ravel() * vdm
    return float(np.sum(weights * _power_sums(pts, kappa)) / np.sum(weights))


def exact_moments_small_n(N: int, alpha: float, beta: float, kappa: Sequence[int]) -> tuple[float, float]:
    """``<prod_j tr H^{kappa_j}>`` under the eigenvalue density, with an error estimate.

    The integrand is a polynomial times the Jacobi weight in each variable, so
    tensor Gauss-Jacobi quadrature with enough nodes is exact; the returned
    error is the change when one more node is used (rounding only).
    """
    if N > 3:
        raise ValueError("N > 3: use Monte Carlo")
    if alpha <= -1 or beta <= -1:
        raise ValueError("need alpha, beta > -1")
    degree = 2 * (N - 1) + sum(kappa)
    nodes = degree // 2 + 1
    v1 = _jacobi_tensor_average(N, alpha, beta, kappa, nodes)
    v2 = _jacobi_tensor_average(N, alpha, beta, kappa, nodes + 1)
    return v2, abs(v2 - v1) + 1e-14 * abs(v2)


# -- Monte Carlo -------------------------------------------------------------


def jackknife(values: Sequence[float]) -> tuple[float, float]:
    """Sample mean and its leave-one-out jackknife standard error."""
    x = np.asarray(values, dtype=float)
    n = len(x)
    mean = float(x.mean())
    if n < 2:
        return mean, float("nan")
    loo = (x.sum() - x) / (n - 1)
    se = float(np.sqrt((n - 1) / n * np.sum((loo - loo.mean()) ** 2)))
    return mean, se


def correlator_values(params: JueParams, kappa: Sequence[int], samples: int, seed: int = 0) -> np.ndarray:
    out = np.empty(samples)
    for r in range(samples):
        ev = sample_spectrum(params, seed, r, check=False).eigenvalues
        out[r] = np.prod([np.sum(ev**m) for m in kappa]) if kappa else 1.0
    return out


def mc_correlators(params: JueParams, kappa: Sequence[int], samples: int, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo ``<prod_j tr H^{kappa_j}>`` with its jackknife standard error."""
    return jackknife(correlator_values(params, kappa, samples, seed))


# -- profiles and edges ------------------------------------------------------


def profile_map(lam, c: float):
    """``t = (c + 1) lam - 1``: the unit interval onto ``[-1, c]``."""
    return (c + 1) * np.asarray(lam, dtype=float) - 1


def interlacing_profile(sample: SpectrumSample, c: float) -> PiecewiseLinearProfile:
    """Minima at the mapped eigenvalues of ``H``, maxima at those of its corner minor."""
    if sample.minor_eigenvalues is None:
        raise ValueError("interlacing_profile needs the minor spectrum (with_minor=True)")
    return PiecewiseLinearProfile.from_interlacing(profile_map(sample.eigenvalues, c),
                                                   profile_map(sample.minor_eigenvalues, c))


def edge_scaled(eigenvalues: np.ndarray, N: int, lam_plus: float, top: int) -> np.ndarray:
    y = np.zeros(top)
    m = min(top, len(eigenvalues))
    y[:m] = eigenvalues[:m]
    return N ** (2 / 3) * (y / lam_plus - 1)


def edge_samples_jue(params: JueParams, count: int, top_s: int = 1, seed: int = 0) -> np.ndarray:
    """Rows ``N^{2/3} (l_i / l_+ - 1)``, ``i <= top_s``, with ``l_+`` at the realized ratios."""
    lam_plus = jue_edges(*params.realized)[1]
    out = np.empty((count, top_s))
    for r in range(count):
        ev = sample_spectrum(params, seed, r, check=False).eigenvalues
        out[r] = edge_scaled(ev, params.N, lam_plus, top_s)
    return out
