"""Hypergeometric tau function of the JUE in its Schur and Hurwitz expansions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .characters import mn_character
from .hurwitz import monotone_hurwitz, multiparametric_hurwitz
from .partitions import Partition, boxes, dim_sym, partition, partitions, z_factor
from .series import GammaParams, mul_trunc, scale_argument


def content_product(kappa: Sequence[int], gamma: GammaParams, eps) -> Fraction:
    """``r_kappa(gamma, eps) = prod_boxes gamma(eps (j - i))`` at a rational ``eps``."""
    eps = Fraction(eps)
    out = Fraction(1)
    for i, j in boxes(kappa):
        out *= gamma(eps * (j - i))
    return out


def content_product_series(kappa: Sequence[int], gamma: GammaParams, d_max: int) -> list[Fraction]:
    """``r_kappa`` as a power series in the formal variable eps, truncated at ``eps^d_max``."""
    g = gamma.series(d_max)
    out = [Fraction(1)] + [Fraction(0)] * d_max
    for i, j in boxes(kappa):
        out = mul_trunc(out, scale_argument(g, j - i), d_max)
    return out


@dataclass
class SeriesTruncation:
    """Coefficients ``[eps^d p_kappa]`` for ``|kappa| <= degree`` and ``d <= d_max``."""

    degree: int
    d_max: int
    coeffs: dict[tuple[Partition, int], Fraction] = field(default_factory=dict)
    variables: str = "p"

    def __getitem__(self, key: tuple[Sequence[int], int]) -> Fraction:
        kappa, d = key
        return self.coeffs.get((partition(kappa), d), Fraction(0))

    def evaluate(self, values: Mapping[int, Fraction], eps) -> Fraction:
        """Plug numbers into the variables ``p_m`` (``values[m]``) and eps."""
        eps = Fraction(eps)
        total = Fraction(0)
        for (kappa, d), c in self.coeffs.items():
            term = c * eps**d
            for part in kappa:
                term *= Fraction(values[part])
            total += term
        return total

    def to_json(self) -> list[dict]:
        return [
            {"kappa": list(kappa), "d": d, "coeff": f"{c.numerator}/{c.denominator}"}
            for (kappa, d), c in sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0][0]), kv[0][0], kv[0][1]))
        ]


def _check_degrees(degree: int, d_max: int, limit: int = 5):
    if degree > limit or d_max > 2 * limit:
        raise ValueError(f"truncation beyond degree {limit} is outside the enumeration budget")


def tau_schur_truncation(gamma: GammaParams, d_max: int, degree: int | None = None) -> SeriesTruncation:
    """``sum_kappa dim(kappa)/|kappa|! r_kappa s_kappa`` with Schur functions expanded in power sums.

    ``s_lam = sum_mu X_lam(mu) / z_mu p_mu``; ``degree`` bounds ``|kappa|`` and
    defaults to ``d_max``.
    """
    degree = d_max if degree is None else degree
    _check_degrees(degree, d_max)
    out = SeriesTruncation(degree, d_max)
    for size in range(degree + 1):
        lams = list(partitions(size))
        r = {lam: content_product_series(lam, gamma, d_max) for lam in lams}
        for mu in lams:
            zmu = z_factor(mu)
            for d in range(d_max + 1):
                c = sum(
                    (Fraction(dim_sym(lam) * mn_character(lam, mu), factorial(size) * zmu) * r[lam][d] for lam in lams),
                    Fraction(0),
                )
                if c:
                    out.coeffs[(mu, d)] = c
    return out


def tau_hurwitz_truncation(gamma: GammaParams, d_max: int, degree: int | None = None) -> SeriesTruncation:
    """``sum_d eps^d sum_kappa H^d_gamma(kappa) p_kappa`` from multiparametric Hurwitz numbers.

    Degree-zero terms are kept, so the constant term is 1.
    """
    degree = d_max if degree is None else degree
    _check_degrees(degree, d_max)
    out = SeriesTruncation(degree, d_max)
    out.coeffs[((), 0)] = Fraction(1)
    for size in range(1, degree + 1):
        for kappa in partitions(size):
            for d in range(d_max + 1):
                c = multiparametric_hurwitz(size, kappa, d, gamma).value
                if c:
                    out.coeffs[(kappa, d)] = c
    return out


def generating_function_coefficient(N: int, gamma: GammaParams, kappa: Sequence[int]) -> Fraction:
    """Coefficient of ``u_kappa`` in Z_N, i.e. ``<prod_j tr H^{kappa_j}> / z_kappa``.

    Obtained by putting ``eps = 1/N`` and ``p_m = (c_alpha/(c_alpha+c_beta))^m N^m u_m``
    into the tau function; for fixed ``|kappa|`` the Schur sum is finite, so the
    value is exact.
    """
    kappa = partition(kappa)
    size = sum(kappa)
    if size > 8:
        raise ValueError("|kappa| > 8 is outside the exact evaluation budget")
    eps = Fraction(1, N)
    p_coeff = sum(
        (Fraction(dim_sym(lam) * mn_character(lam, kappa), factorial(size) * z_factor(kappa))
         * content_product(lam, gamma, eps) for lam in partitions(size)),
        Fraction(0),
    )
    return p_coeff * (gamma.c_alpha / gamma.total) ** size * Fraction(N) ** size


def exact_correlator(N: int, gamma: GammaParams, kappa: Sequence[int]) -> Fraction:
    """``<prod_j tr H^{kappa_j}>`` for the JUE with ``M_alpha = c_alpha N``, ``M_beta = c_beta N``."""
    kappa = partition(kappa)
    return generating_function_coefficient(N, gamma, kappa) * z_factor(kappa)


@dataclass
class GenusExpansion:
    """``N^{l(kappa)} |kappa|!/z_kappa <...> = sum_g coeffs[g] N^{2-2g}`` truncated at ``g_max``."""

    kappa: Partition
    gamma: GammaParams
    coeffs: dict[int, Fraction]

    @property
    def g_max(self) -> int:
        return max(self.coeffs)

    def lhs_sum(self, N) -> Fraction:
        N = Fraction(N)
        return sum((c * N ** (2 - 2 * g) for g, c in self.coeffs.items()), Fraction(0))

    def correlator(self, N) -> Fraction:
        """Truncated genus series for ``<prod_j tr H^{kappa_j}>`` at size ``N``."""
        N = Fraction(N)
        prefactor = N ** len(self.kappa) * factorial(sum(self.kappa)) / z_factor(self.kappa)
        return self.lhs_sum(N) / prefactor

    def rows(self) -> list[list]:
        return [[list(self.kappa), g, 2 - 2 * g, c] for g, c in sorted(self.coeffs.items())]


GENUS_CSV_HEADER = ["kappa", "g", "coefficient_of_N_power", "value"]


def genus_expansion_eval(gamma: GammaParams, kappa: Sequence[int], g_max: int) -> GenusExpansion:
    """Genus-``g`` coefficients ``(-1)^{|k|} sum_{mu,nu} c_alpha^{l(nu)} h_g / (-c_alpha - c_beta)^{l(mu)+l(nu)+l(k)+2g-2}``."""
    kappa = partition(kappa)
    size = sum(kappa)
    if size > 4 or g_max > 2:
        raise ValueError("genus expansion limited to |kappa| <= 4 and g_max <= 2")
    ca, s = gamma.c_alpha, gamma.total
    coeffs = {}
    for g in range(g_max + 1):
        total = Fraction(0)
        for mu in partitions(size):
            for nu in partitions(size):
                h = monotone_hurwitz(kappa, mu, nu, g).value
                if h:
                    total += ca ** len(nu) * h / (-s) ** (len(mu) + len(nu) + len(kappa) + 2 * g - 2)
        coeffs[g] = (-1) ** size * total
    return GenusExpansion(kappa, gamma, coeffs)
