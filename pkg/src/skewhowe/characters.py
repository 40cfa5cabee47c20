"""Symmetric group characters and three routes to rectangular / YJM character values.

"Normalized" always means the ratio of the character to the dimension; the
factor ``(nk)! / (nk - p)!`` that turns the ratio into Stanley's normalization
is :func:`padding_factor`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Sequence

from .partitions import (
    Partition,
    Permutation,
    all_permutations,
    compose,
    conjugate,
    cycle_type,
    dim_gl,
    dim_sym,
    identity,
    num_cycles,
    partition,
    partitions,
    removable_corners,
    sign,
    transposition,
)

DEFAULT_TUPLE_BUDGET = 10**7


class BudgetExceeded(ValueError):
    pass


def _check_budget(needed: int, budget: int, what: str):
    if needed > budget:
        raise BudgetExceeded(f"{what}: {needed} terms exceed the enumeration budget {budget}")


# -- Murnaghan-Nakayama ------------------------------------------------------


def _beta_set(lam: Partition) -> tuple[int, ...]:
    n = len(lam)
    return tuple(lam[i] + n - 1 - i for i in range(n))


def _from_beta(beta: Sequence[int]) -> Partition:
    n = len(beta)
    b = sorted(beta, reverse=True)
    return partition(b[i] - (n - 1 - i) for i in range(n))


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not lam else 0
    r = mu[0]
    rest = mu[1:]
    beta = _beta_set(lam)
    occupied = set(beta)
    total = 0
    for x in beta:
        y = x - r
        if y < 0 or y in occupied:
            continue
        # rim hook of length r <-> moving a bead from x to y; height = beads jumped over
        height = sum(1 for z in beta if y < z < x)
        child = _from_beta([y if z == x else z for z in beta])
        total += (-1) ** height * _mn(child, rest)
    return total


def mn_character(nu: Sequence[int], lam: Sequence[int]) -> int:
    """Character of the irreducible S_p module ``nu`` at the class of cycle type ``lam``."""
    nu = partition(nu)
    lam = tuple(sorted((x for x in lam if x > 0), reverse=True))
    if sum(nu) != sum(lam):
        raise ValueError(f"size mismatch: |{nu}| != |{lam}|")
    return _mn(nu, lam)


def sign_character(lam: Sequence[int]) -> int:
    """``(-1)^{|lam| - l(lam)}``: the action of a type-``lam`` permutation on the exterior power."""
    return -1 if (sum(lam) - len([x for x in lam if x > 0])) % 2 else 1


# -- rectangular characters ---------------------------------------------------


def _rectangle(n: int, k: int) -> Partition:
    return (k,) * n


def padding_factor(n: int, k: int, p: int) -> int:
    """``(nk)! / (nk - p)!``: converts the plain ratio into Stanley's hat-chi normalization."""
    return factorial(n * k) // factorial(n * k - p)


def _check_size(n: int, k: int, p: int):
    if p > n * k:
        raise ValueError(f"p={p} exceeds nk={n * k}")


def normalized_restriction(n: int, k: int, lam: Sequence[int]) -> Fraction:
    """``X_{k^n}(lam, 1^{nk-p}) / X_{k^n}(1^{nk})`` by Murnaghan-Nakayama on the rectangle."""
    lam = tuple(sorted((x for x in lam if x > 0), reverse=True))
    p = sum(lam)
    _check_size(n, k, p)
    rect = _rectangle(n, k)
    return Fraction(_mn(rect, lam + (1,) * (n * k - p)), dim_sym(rect))


def stanley_rectangular(n: int, k: int, lam: Sequence[int]) -> Fraction:
    """Same ratio through the content sum over ``nu |- p`` with GL_n, GL_k dimensions."""
    lam = tuple(sorted((x for x in lam if x > 0), reverse=True))
    p = sum(lam)
    _check_size(n, k, p)
    total = Fraction(0)
    for nu in partitions(p):
        w = dim_gl(n, nu) * dim_gl(k, conjugate(nu))
        if w:
            total += Fraction(w * _mn(nu, lam), dim_sym(nu))
    return total * Fraction(factorial(n * k - p) * factorial(p), factorial(n * k))


def stanley_pairs(n: int, k: int, w: Permutation, budget: int = DEFAULT_TUPLE_BUDGET) -> Fraction:
    """Stanley's sum over factorizations ``w_nu w_mu w = Id``, with its prefactor.

    Returns the same plain ratio as :func:`normalized_restriction` at the
    cycle type of ``w``.
    """
    p = len(w)
    _check_size(n, k, p)
    _check_budget(factorial(p), budget, "stanley_pairs")
    total = 0
    for wmu in all_permutations(p):
        # w_nu = (w_mu w)^{-1} has the cycle count of w_mu w
        total += n ** num_cycles(wmu) * (-k) ** num_cycles(compose(wmu, w))
    return (-1) ** p * Fraction(factorial(n * k - p), factorial(n * k)) * total


# -- Young-Jucys-Murphy characters -------------------------------------------


def yjm_moment_character(nu: Sequence[int], m: int) -> int:
    """Trace of ``J_p^m`` on the irreducible module ``nu``: ``sum_i dim(nu - box_i) c_i^m``."""
    nu = partition(nu)
    return sum(dim_sym(c.child) * c.content ** m for c in removable_corners(nu))


def diagonal_yjm_character(p: int, kappa: Sequence[int]) -> int:
    """Closed form ``(-1)^{|kappa|} prod_i (p - i)^{kappa_i}`` for ``prod_i J_{p+1-i}^{kappa_i}``."""
    if len(kappa) > p:
        raise ValueError(f"composition of length {len(kappa)} needs p >= {len(kappa)}")
    return (-1) ** sum(kappa) * prod((p - i) ** e for i, e in enumerate(kappa, start=1))


def tau_word_count(p: int, kappa: Sequence[int]) -> int:
    return prod((p - i) ** e for i, e in enumerate(kappa, start=1))


def tau_words(p: int, kappa: Sequence[int], budget: int = DEFAULT_TUPLE_BUDGET):
    """Yield ``w(tau) = (tau_11 p)...(tau_{1 kappa_1} p)(tau_21 p-1)...`` for every choice of ``tau``.

    Each ``tau_ij`` ranges over ``1..p-i``; the product is composed in the
    written order.
    """
    if len(kappa) > p:
        raise ValueError(f"composition of length {len(kappa)} needs p >= {len(kappa)}")
    _check_budget(tau_word_count(p, kappa), budget, "tau words")
    slots = []
    for i, e in enumerate(kappa, start=1):
        slots.extend([i] * e)
    choices = [[transposition(p, a, p + 1 - i) for a in range(1, p - i + 1)] for i in slots]
    for word in product(*choices):
        w = identity(p)
        for t in word:
            w = compose(w, t)
        yield w


def tau_word_products(p: int, kappa: Sequence[int], budget: int = DEFAULT_TUPLE_BUDGET) -> dict[Permutation, int]:
    """Multiplicity of each permutation among the products ``w(tau)``."""
    out: dict[Permutation, int] = {}
    for w in tau_words(p, kappa, budget):
        out[w] = out.get(w, 0) + 1
    return out


def tau_word_sign_sum(p: int, kappa: Sequence[int], budget: int = DEFAULT_TUPLE_BUDGET) -> int:
    """Enumerated sign character of ``prod_i J_{p+1-i}^{kappa_i}``: sum of ``sign(w(tau))``."""
    return sum(sign(w) for w in tau_words(p, kappa, budget))


def jm_power_words(p: int, m: int, budget: int = DEFAULT_TUPLE_BUDGET) -> dict[Partition, int]:
    """Expansion of ``J_p^m`` over cycle types: multiplicity of each type among the words."""
    out: dict[Partition, int] = {}
    for w, c in tau_word_products(p, (m,), budget).items():
        t = cycle_type(w)
        out[t] = out.get(t, 0) + c
    return out


def stanley_route_jm_moment(n: int, k: int, p: int, m: int, budget: int = DEFAULT_TUPLE_BUDGET) -> Fraction:
    """Normalized rectangular character of ``J_p^m``, summed over its permutation words."""
    return sum(
        (c * normalized_restriction(n, k, t) for t, c in jm_power_words(p, m, budget).items()),
        Fraction(0),
    )
