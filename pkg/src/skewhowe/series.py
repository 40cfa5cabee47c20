"""Exact truncated power series in a formal variable and the JUE weight function gamma."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Series = list[Fraction]


def mul_trunc(a: Sequence[Fraction], b: Sequence[Fraction], degree: int) -> Series:
    out = [Fraction(0)] * (degree + 1)
    for i, x in enumerate(a[: degree + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: degree + 1 - i]):
            out[i + j] += x * y
    return out


def scale_argument(a: Sequence[Fraction], c) -> Series:
    """Coefficients of ``f(c z)`` from those of ``f(z)``."""
    c = Fraction(c)
    return [x * c**m for m, x in enumerate(a)]


@dataclass(frozen=True)
class GammaParams:
    """``gamma(z) = (1 + z)(1 + z/c_alpha) / (1 + z/(c_alpha + c_beta))`` with rational parameters."""

    c_alpha: Fraction
    c_beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c_alpha", Fraction(self.c_alpha))
        object.__setattr__(self, "c_beta", Fraction(self.c_beta))
        if self.c_alpha <= 0 or self.c_alpha + self.c_beta <= 0:
            raise ValueError("need c_alpha > 0 and c_alpha + c_beta > 0")

    @property
    def total(self) -> Fraction:
        return self.c_alpha + self.c_beta

    def __call__(self, z) -> Fraction:
        z = Fraction(z)
        den = 1 + z / self.total
        if den == 0:
            raise ZeroDivisionError(f"gamma has a pole at z={z}")
        return (1 + z) * (1 + z / self.c_alpha) / den

    def series(self, degree: int) -> Series:
        """Taylor coefficients of gamma at 0 up to ``z^degree``."""
        num = [Fraction(1), 1 + 1 / self.c_alpha, 1 / self.c_alpha]
        geo = [(-1 / self.total) ** m for m in range(degree + 1)]
        return mul_trunc(num, geo, degree)

    def first_derivative(self) -> Fraction:
        return 1 + 1 / self.c_alpha - 1 / self.total


def series_for_polynomial(coeffs: Sequence, degree: int) -> Series:
    out = [Fraction(c) for c in coeffs[: degree + 1]]
    return out + [Fraction(0)] * (degree + 1 - len(out))
