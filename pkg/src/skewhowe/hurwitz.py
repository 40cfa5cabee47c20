"""Group algebra of S_p with epsilon-graded coefficients and brute-force Hurwitz counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

import numpy as np

from .characters import (
    DEFAULT_TUPLE_BUDGET,
    _check_budget,
    tau_word_count,
    tau_word_products,
)
from .partitions import (
    Partition,
    Permutation,
    all_permutations,
    class_representative,
    compose,
    cycle_type,
    identity,
    partition,
    partitions,
    transposition,
    z_factor,
)
from .series import GammaParams


class SymmetricGroupAlgebra:
    """Dense model of C[S_p][eps]/(eps^{d_max+1}).

    Elements are object arrays of shape ``(p!, d_max + 1)`` holding exact
    coefficients; row ``i`` belongs to ``self.perms[i]``.
    """

    def __init__(self, p: int, d_max: int):
        if p > 7:
            raise ValueError("dense group algebra limited to p <= 7")
        self.p = p
        self.d_max = d_max
        self.perms = all_permutations(p)
        self.index = {w: i for i, w in enumerate(self.perms)}
        self._right = {}
        for b in range(2, p + 1):
            for a in range(1, b):
                t = transposition(p, a, b)
                self._right[(a, b)] = np.array([self.index[compose(w, t)] for w in self.perms])

    def zero(self) -> np.ndarray:
        out = np.empty((len(self.perms), self.d_max + 1), dtype=object)
        out[...] = Fraction(0)
        return out

    def one(self) -> np.ndarray:
        out = self.zero()
        out[self.index[identity(self.p)], 0] = Fraction(1)
        return out

    def times_jm(self, x: np.ndarray, b: int) -> np.ndarray:
        """Right multiplication by ``J_b = (1 b) + ... + (b-1 b)``."""
        out = self.zero()
        for a in range(1, b):
            # right multiplication by an involution permutes rows by the same table
            out = out + x[self._right[(a, b)]]
        return out

    def times_series_in_jm(self, x: np.ndarray, b: int, coeffs: Sequence[Fraction]) -> np.ndarray:
        """Right multiplication by ``sum_m coeffs[m] eps^m J_b^m``, truncated."""
        d = self.d_max
        out = x * coeffs[0] if coeffs[0] else self.zero()
        y = x
        last = max((m for m, c in enumerate(coeffs[: d + 1]) if c), default=0)
        for m in range(1, last + 1):
            y = self.times_jm(y, b)
            if coeffs[m]:
                shifted = self.zero()
                shifted[:, m:] = y[:, : d + 1 - m]
                out = out + shifted * coeffs[m]
        return out

    def class_coefficients(self, x: np.ndarray, lam: Sequence[int]) -> list[Fraction]:
        return list(x[self.index[class_representative(lam)]])

    def is_central_on(self, x: np.ndarray) -> bool:
        """True when coefficients are constant on every conjugacy class."""
        first: dict[Partition, tuple] = {}
        for w, i in self.index.items():
            t = cycle_type(w)
            row = tuple(x[i])
            if first.setdefault(t, row) != row:
                return False
        return True


@lru_cache(maxsize=None)
def _algebra(p: int, d_max: int) -> SymmetricGroupAlgebra:
    return SymmetricGroupAlgebra(p, d_max)


@lru_cache(maxsize=64)
def hurwitz_generating_element(p: int, coeffs: tuple[Fraction, ...], d_max: int) -> np.ndarray:
    """``prod_{a=1}^p f(eps J_a)`` for the power series ``f`` with Taylor ``coeffs``."""
    alg = _algebra(p, d_max)
    x = alg.one() * coeffs[0]  # J_1 = 0
    for b in range(2, p + 1):
        x = alg.times_series_in_jm(x, b, coeffs)
    return x


@dataclass(frozen=True)
class HurwitzRecord:
    kind: str  # "branched-cover", "monotone" or "multiparametric"
    kappa: Partition
    mu: Partition | None
    nu: Partition | None
    g_or_d: int
    value: Fraction

    def row(self) -> list:
        return [self.kind, list(self.kappa), list(self.mu or ()), list(self.nu or ()), self.g_or_d, self.value]


HURWITZ_CSV_HEADER = ["kind", "kappa", "mu", "nu", "g_or_d", "value"]


def multiparametric_hurwitz(p: int, kappa: Sequence[int], d: int, gamma: GammaParams,
                            budget: int = DEFAULT_TUPLE_BUDGET) -> HurwitzRecord:
    """``H^d_gamma(kappa) = [eps^d C_kappa] prod_a gamma(eps J_a) / z_kappa``."""
    kappa = partition(kappa)
    if sum(kappa) != p:
        raise ValueError(f"|kappa| must equal p={p}")
    _check_budget(factorial(p) * (d + 1) ** 2 * p * p, budget, "multiparametric_hurwitz")
    x = hurwitz_generating_element(p, tuple(gamma.series(d)), d)
    coeff = _algebra(p, d).class_coefficients(x, kappa)[d]
    return HurwitzRecord("multiparametric", kappa, None, None, d, coeff / z_factor(kappa))


def jm_class_expansion_check(p: int) -> dict:
    """Check ``prod_a (1 + eps J_a) = sum_lam eps^{p - l(lam)} C_lam`` coefficient by coefficient."""
    alg = _algebra(p, p)
    x = hurwitz_generating_element(p, (Fraction(1), Fraction(1)), p)
    bad = []
    for w, i in alg.index.items():
        t = cycle_type(w)
        expected = [Fraction(1) if d == p - len(t) else Fraction(0) for d in range(p + 1)]
        if list(x[i]) != expected:
            bad.append(w)
    return {"check": "jm_class_expansion", "params": {"p": p}, "equal": not bad, "mismatches": len(bad)}


# -- branched covers ---------------------------------------------------------


def _genus(kappa_size: int, lmu: int, lnu: int) -> int | None:
    euler = lmu + lnu - kappa_size  # = 2 - 2g
    if euler % 2:
        return None
    return (2 - euler) // 2


def branched_cover_table(p: int, kappa: Sequence[int], budget: int = DEFAULT_TUPLE_BUDGET) -> dict[tuple[Partition, Partition], int]:
    """Number of tuples ``(w_nu, w_mu, w(tau))`` with ``w_nu w_mu w(tau) = Id``, keyed by ``(mu, nu)``.

    ``kappa`` is the exponent composition of the word ``prod_i J_{p+1-i}^{kappa_i}``.
    """
    _check_budget(tau_word_count(p, kappa) + factorial(p) ** 2, budget, "branched covers")
    words = tau_word_products(p, kappa, budget)
    out: dict[tuple[Partition, Partition], int] = {}
    for w, mult in words.items():
        for x in all_permutations(p):
            key = (cycle_type(x), cycle_type(compose(x, w)))
            out[key] = out.get(key, 0) + mult
    return out


def branched_cover_count(p: int, kappa: Sequence[int], mu: Sequence[int], nu: Sequence[int], g: int,
                         budget: int = DEFAULT_TUPLE_BUDGET) -> HurwitzRecord:
    """H_g(kappa, mu, nu); zero unless ``2 - 2g = l(mu) + l(nu) - |kappa|``."""
    mu, nu = partition(mu), partition(nu)
    if sum(mu) != p or sum(nu) != p:
        raise ValueError(f"mu and nu must be partitions of p={p}")
    kappa_t = tuple(kappa)
    value = 0
    if 2 - 2 * g == len(mu) + len(nu) - sum(kappa_t):
        value = branched_cover_table(p, kappa_t, budget).get((mu, nu), 0)
    return HurwitzRecord("branched-cover", kappa_t, mu, nu, g, Fraction(value))


def hurwitz_character_sum(n: int, k: int, p: int, kappa: Sequence[int],
                          budget: int = DEFAULT_TUPLE_BUDGET) -> Fraction:
    """Genus-graded form of ``sum_tau stanley_pairs(n, k, w(tau))``.

    ``(-1)^p (nk-p)!/(nk)! sum_g n^{2-2g+|kappa|} sum_{mu,nu} (-k/n)^{l(nu)} H_g(kappa, mu, nu)``
    with the genus summed over every value the tuples realize, negative
    genera (disconnected covers) included.
    """
    if p > n * k:
        raise ValueError(f"p={p} exceeds nk={n * k}")
    size = sum(kappa)
    total = Fraction(0)
    for (mu, nu), count in branched_cover_table(p, kappa, budget).items():
        g = _genus(size, len(mu), len(nu))
        if g is None:
            continue  # parity obstruction: no such tuples
        total += Fraction(n) ** (2 - 2 * g + size) * Fraction(-k, n) ** len(nu) * count
    return (-1) ** p * Fraction(factorial(n * k - p), factorial(n * k)) * total


# -- monotone Hurwitz numbers --------------------------------------------------


@lru_cache(maxsize=None)
def monotone_word_products(p: int, r: int) -> dict[Permutation, int]:
    """Products ``tau_1 ... tau_r`` over monotone words (``b_1 <= ... <= b_r``), by multiplicity."""
    alg = _algebra(p, r)
    x = hurwitz_generating_element(p, tuple(Fraction(1) for _ in range(r + 1)), r)
    out = {}
    for w, i in alg.index.items():
        c = x[i, r]
        if c:
            out[w] = int(c)
    return out


def monotone_words_bruteforce(p: int, r: int) -> dict[Permutation, int]:
    """Same distribution by listing the words; test oracle for tiny cases."""
    from itertools import product as iproduct

    trans = [(a, b) for b in range(2, p + 1) for a in range(1, b)]
    out: dict[Permutation, int] = {}
    for word in iproduct(trans, repeat=r):
        if any(word[i][1] > word[i + 1][1] for i in range(r - 1)):
            continue
        w = identity(p)
        for a, b in word:
            w = compose(w, transposition(p, a, b))
        out[w] = out.get(w, 0) + 1
    return out


def monotone_length(kappa: Sequence[int], mu: Sequence[int], nu: Sequence[int], g: int) -> int:
    return 2 * g - 2 - sum(kappa) + len(kappa) + len(mu) + len(nu)


@lru_cache(maxsize=None)
def _class_members(p: int, lam: Partition) -> tuple[Permutation, ...]:
    return tuple(w for w in all_permutations(p) if cycle_type(w) == lam)


def monotone_hurwitz(kappa: Sequence[int], mu: Sequence[int], nu: Sequence[int], g: int,
                     budget: int = DEFAULT_TUPLE_BUDGET) -> HurwitzRecord:
    """Triple monotone Hurwitz number h_g(kappa, mu, nu) by enumeration.

    Counts ``(w_mu, w_nu, tau_1..tau_r)`` with ``w_mu w_nu tau_1...tau_r`` of type
    ``kappa`` and monotone ``tau``; zero when ``r < 0``.
    """
    kappa, mu, nu = partition(kappa), partition(mu), partition(nu)
    p = sum(kappa)
    if not sum(mu) == sum(nu) == p:
        raise ValueError("kappa, mu and nu must have equal size")
    r = monotone_length(kappa, mu, nu, g)
    if r < 0:
        return HurwitzRecord("monotone", kappa, mu, nu, g, Fraction(0))
    words = monotone_word_products(p, r)
    cmu, cnu = _class_members(p, mu), _class_members(p, nu)
    _check_budget(len(words) * factorial(p) + len(cmu) * len(cnu), budget, "monotone_hurwitz")
    # hit[u]: monotone words T with u T of type kappa
    hit = {}
    for u in all_permutations(p):
        hit[u] = sum(c for t, c in words.items() if cycle_type(compose(u, t)) == kappa)
    value = sum(hit[compose(x, y)] for x in cmu for y in cnu)
    return HurwitzRecord("monotone", kappa, mu, nu, g, Fraction(value))


def triple_monotone_relation_check(kappa: Sequence[int], g: int, gamma: GammaParams) -> dict:
    """Compare ``H_gamma^{2g-2+|k|+l(k)}(kappa)`` with its expansion over triple monotone numbers."""
    kappa = partition(kappa)
    size = sum(kappa)
    d = 2 * g - 2 + size + len(kappa)
    lhs = multiparametric_hurwitz(size, kappa, d, gamma).value if d >= 0 else Fraction(0)
    ca, s = gamma.c_alpha, gamma.total
    rhs = Fraction(0)
    for mu in partitions(size):
        for nu in partitions(size):
            h = monotone_hurwitz(kappa, mu, nu, g).value
            if h:
                rhs += ca ** (len(nu) - size) * (-s) ** (size + 2 - 2 * g - len(mu) - len(nu) - len(kappa)) * h
    rhs /= factorial(size)
    return {
        "check": "triple_monotone_relation",
        "params": {"kappa": list(kappa), "g": g, "c_alpha": gamma.c_alpha, "c_beta": gamma.c_beta},
        "lhs": lhs,
        "rhs": rhs,
        "equal": lhs == rhs,
    }
