"""Exact partition and permutation arithmetic.

Partitions are plain tuples of positive integers in weakly decreasing order,
``()`` being the empty diagram.  Permutations are tuples of one-line images on
``{0, ..., p-1}``; composition is right to left, ``compose(u, v)[i] == u[v[i]]``.
All exact quantities are :class:`fractions.Fraction` or ``int``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]
Permutation = tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return it as a canonical partition tuple.

    Trailing zeros are dropped; anything else that is not a weakly decreasing
    sequence of positive integers raises ``ValueError``.
    """
    lam = [int(x) for x in parts]
    while lam and lam[-1] == 0:
        lam.pop()
    for i, x in enumerate(lam):
        if x <= 0:
            raise ValueError(f"partition {tuple(lam)} has non-positive part")
        if i and x > lam[i - 1]:
            raise ValueError(f"partition {tuple(lam)} is not weakly decreasing")
    return tuple(lam)


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def partitions(n: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order.

    Optional bounds restrict the first part and the number of rows.
    """
    if max_part is None:
        max_part = n
    if max_len is None:
        max_len = n

    def rec(rest: int, bound: int, rows: int) -> Iterator[Partition]:
        if rest == 0:
            yield ()
            return
        if rows == 0:
            return
        for first in range(min(rest, bound), 0, -1):
            if first * rows < rest:
                break
            for tail in rec(rest - first, first, rows - 1):
                yield (first,) + tail

    yield from rec(n, max_part, max_len)


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def boxes(lam: Sequence[int]) -> Iterator[tuple[int, int]]:
    """Boxes ``(i, j)`` with 1-based row and column indices."""
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield i, j


def hook_lengths(lam: Sequence[int]) -> list[int]:
    conj = conjugate(lam)
    return [lam[i - 1] - j + conj[j - 1] - i + 1 for i, j in boxes(lam)]


def hook_product(lam: Sequence[int]) -> int:
    return prod(hook_lengths(lam))


@lru_cache(maxsize=None)
def dim_sym(lam: Partition) -> int:
    """Dimension of the irreducible S_|lam| module (number of standard tableaux)."""
    return factorial(size(lam)) // hook_product(lam)


def dim_gl(n: int, lam: Sequence[int]) -> int:
    """Dimension of the irreducible GL_n module, by the hook-content formula."""
    if len(lam) > n:
        return 0
    conj = conjugate(lam)
    num = 1
    den = 1
    for i, j in boxes(lam):
        num *= n + j - i
        den *= lam[i - 1] - j + conj[j - 1] - i + 1
    return num // den


def contents(lam: Sequence[int]) -> list[int]:
    """Contents ``j - i`` of all boxes, row by row."""
    return [j - i for i, j in boxes(lam)]


@dataclass(frozen=True, order=True)
class Corner:
    """A removable box: 1-based ``row``, its ``content`` and the diagram without it."""

    row: int
    content: int
    child: Partition


def removable_corners(nu: Sequence[int]) -> list[Corner]:
    if not nu:
        raise ValueError("no corners: empty partition")
    out = []
    for i, row in enumerate(nu, start=1):
        below = nu[i] if i < len(nu) else 0
        if row > below:
            child = list(nu)
            child[i - 1] -= 1
            out.append(Corner(i, row - i, partition(child)))
    return out


def addable_children(nu: Sequence[int]) -> list[Partition]:
    out = []
    nu = list(nu)
    for i in range(len(nu) + 1):
        above = nu[i - 1] if i > 0 else None
        cur = nu[i] if i < len(nu) else 0
        if above is None or above > cur:
            lam = nu.copy()
            if i < len(lam):
                lam[i] += 1
            else:
                lam.append(1)
            out.append(tuple(lam))
    return out


def transition_probabilities(nu: Sequence[int]) -> dict[Partition, Fraction]:
    """Kerov transition probabilities ``dim(lam) / (|lam| dim(nu))`` over ``nu -> lam``."""
    nu = partition(nu)
    d = dim_sym(nu)
    m = size(nu) + 1
    return {lam: Fraction(dim_sym(lam), m * d) for lam in addable_children(nu)}


def cotransition_probabilities(nu: Sequence[int]) -> dict[Corner, Fraction]:
    """Decay rates ``dim(nu - box_i) / dim(nu)`` over removable corners."""
    nu = partition(nu)
    d = dim_sym(nu)
    return {c: Fraction(dim_sym(c.child), d) for c in removable_corners(nu)}


def plancherel(lam: Sequence[int]) -> Fraction:
    lam = partition(lam)
    return Fraction(dim_sym(lam) ** 2, factorial(size(lam)))


def maya(lam: Sequence[int], cutoff) -> list[Fraction]:
    """Particle positions ``lam_i - i + 1/2`` above ``cutoff``, in decreasing order.

    Rows past the length of ``lam`` are zero, so below ``-len(lam)`` every
    half-integer is occupied.
    """
    cutoff = Fraction(cutoff)
    if cutoff >= -len(lam):
        raise ValueError("cutoff must lie below -len(lam)")
    out = []
    i = 1
    while True:
        x = Fraction(2 * ((lam[i - 1] if i <= len(lam) else 0) - i) + 1, 2)
        if x <= cutoff:
            return out
        out.append(x)
        i += 1


def maya_doubled(lam: Sequence[int], cutoff: int) -> list[int]:
    """Same particles as :func:`maya`, stored as the odd integers ``2 * position``."""
    return [int(2 * x) for x in maya(lam, cutoff)]


def z_factor(lam: Sequence[int]) -> int:
    """Centralizer order ``prod_i i^{m_i} m_i!`` of the class of cycle type ``lam``."""
    out = 1
    for part in set(lam):
        m = list(lam).count(part)
        out *= part ** m * factorial(m)
    return out


def class_size(lam: Sequence[int]) -> int:
    return factorial(size(lam)) // z_factor(lam)


# -- permutations ---------------------------------------------------------


def identity(p: int) -> Permutation:
    return tuple(range(p))


def compose(u: Permutation, v: Permutation) -> Permutation:
    """``u o v``: apply ``v`` first."""
    return tuple(u[x] for x in v)


def inverse(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[x] = i
    return tuple(out)


def transposition(p: int, a: int, b: int) -> Permutation:
    """Transposition of the 1-based points ``a`` and ``b`` in S_p."""
    w = list(range(p))
    w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
    return tuple(w)


def cycle_type(w: Sequence[int]) -> Partition:
    seen = [False] * len(w)
    lengths = []
    for start in range(len(w)):
        if seen[start]:
            continue
        n = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = w[x]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def num_cycles(w: Sequence[int]) -> int:
    return len(cycle_type(w))


def sign(w: Sequence[int]) -> int:
    return -1 if (len(w) - num_cycles(w)) % 2 else 1


def is_permutation(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(len(w)))


@lru_cache(maxsize=None)
def all_permutations(p: int) -> tuple[Permutation, ...]:
    return tuple(permutations(range(p)))


def class_representative(lam: Sequence[int]) -> Permutation:
    """A permutation of cycle type ``lam`` built from consecutive cycles."""
    w = []
    start = 0
    for part in lam:
        w.extend(start + (t + 1) % part for t in range(part))
        start += part
    return tuple(w)
