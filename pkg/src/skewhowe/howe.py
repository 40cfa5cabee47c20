"""The skew Howe measure on diagrams in an n x k box, its exact sampler and profiles."""
from __future__ import annotations

from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .partitions import (
    Partition,
    conjugate,
    cotransition_probabilities,
    dim_gl,
    partition,
    partitions,
)
from .profiles import PiecewiseLinearProfile

DEFAULT_PARTITION_BUDGET = 10**7


@dataclass(frozen=True)
class HoweParams:
    n: int
    k: int
    p: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError(f"box sides must be positive, got n={self.n}, k={self.k}")
        if not 0 <= self.p <= self.n * self.k:
            raise ValueError(f"need 0 <= p <= nk, got p={self.p} with nk={self.n * self.k}")


def fits_box(lam: Sequence[int], n: int, k: int) -> bool:
    return len(lam) <= n and (not lam or lam[0] <= k)


def count_in_box(params: HoweParams) -> int:
    """Number of diagrams with p boxes in the n x k box (a Gaussian binomial coefficient)."""
    n, k, p = params.n, params.k, params.p
    # [n+k choose n]_q = prod_i (1 - q^{k+i}) / (1 - q^i); every partial product is a polynomial
    poly = [1]
    for i in range(1, n + 1):
        num = [0] * (k + i + 1)
        num[0] = 1
        num[k + i] = -1
        poly = _poly_mul(poly, num)
        poly = _poly_div_1_minus_qm(poly, i)
    return poly[p] if p < len(poly) else 0


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_div_1_minus_qm(a: list[int], m: int) -> list[int]:
    # exact division by (1 - q^m)
    out = list(a)
    for i in range(m, len(out)):
        out[i] += out[i - m]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def partitions_in_box(params: HoweParams) -> Iterator[Partition]:
    """Diagrams of size p with at most n rows and at most k columns, reverse-lex order."""
    return partitions(params.p, max_part=params.k, max_len=params.n)


@dataclass
class MeasureTable:
    params: HoweParams
    entries: dict[Partition, Fraction]

    def to_json(self) -> dict:
        return {
            "n": self.params.n,
            "k": self.params.k,
            "p": self.params.p,
            "entries": [
                {"partition": list(lam), "prob": f"{q.numerator}/{q.denominator}"}
                for lam, q in self.entries.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MeasureTable":
        params = HoweParams(data["n"], data["k"], data["p"])
        entries = {}
        for e in data["entries"]:
            num, _, den = e["prob"].partition("/")
            entries[tuple(e["partition"])] = Fraction(int(num), int(den))
        return cls(params, entries)


def _check_budget(params: HoweParams, budget: int):
    total = count_in_box(params)
    if total > budget:
        raise ValueError(
            f"{total} diagrams in the {params.n}x{params.k} box with p={params.p} exceed the partition budget {budget}"
        )


def mu_h(params: HoweParams, budget: int = DEFAULT_PARTITION_BUDGET) -> MeasureTable:
    """Exact skew Howe measure ``dim_GLn(lam) dim_GLk(lam') / C(nk, p)``."""
    _check_budget(params, budget)
    total = comb(params.n * params.k, params.p)
    entries = {
        lam: Fraction(dim_gl(params.n, lam) * dim_gl(params.k, conjugate(lam)), total)
        for lam in partitions_in_box(params)
    }
    return MeasureTable(params, entries)


def mu_h_product_form(params: HoweParams, lam: Sequence[int]) -> int:
    """Unnormalized weight ``prod_{i<j} (l_i - l_j + j - i)^2 prod_i C(n+k-1, l_i + n - i)``."""
    lam = partition(lam)
    n, k = params.n, params.k
    if not fits_box(lam, n, k) or sum(lam) != params.p:
        raise ValueError(f"{lam} is not a diagram of size {params.p} in the {n}x{k} box")
    rows = list(lam) + [0] * (n - len(lam))
    w = 1
    for i in range(n):
        for j in range(i + 1, n):
            w *= (rows[i] - rows[j] + j - i) ** 2
    for i in range(n):
        w *= comb(n + k - 1, rows[i] + n - 1 - i)
    return w


def product_form_table(params: HoweParams, budget: int = DEFAULT_PARTITION_BUDGET) -> MeasureTable:
    _check_budget(params, budget)
    weights = {lam: mu_h_product_form(params, lam) for lam in partitions_in_box(params)}
    z = sum(weights.values())
    return MeasureTable(params, {lam: Fraction(w, z) for lam, w in weights.items()})


# -- exact sampler ----------------------------------------------------------


def _dual_insert_shape(rows_of_columns: Sequence[Sequence[int]]) -> Partition:
    tableau: list[list[int]] = []
    for cols in rows_of_columns:
        for x in cols:
            for row in tableau:
                pos = bisect_left(row, x)
                if pos == len(row):
                    row.append(x)
                    break
                row[pos], x = x, row[pos]
            else:
                tableau.append([x])
    return tuple(len(r) for r in tableau)


def dual_rsk_shape(matrix) -> Partition:
    """Shape of the dual RSK insertion tableau of a 0/1 matrix.

    Rows are read top to bottom, the column indices of the ones in each row
    inserted left to right; an incoming entry bumps the leftmost entry that is
    greater than or equal to it.  Over uniform matrices with p ones the shape
    is distributed as the skew Howe measure.
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or not np.isin(m, (0, 1)).all():
        raise ValueError("expected a two-dimensional 0/1 matrix")
    return _dual_insert_shape([np.flatnonzero(r).tolist() for r in m])


def _shape_from_cells(cells: np.ndarray, k: int) -> Partition:
    cells = np.sort(cells)
    rows = cells // k
    cols = (cells % k).tolist()
    bounds = np.flatnonzero(np.diff(rows)) + 1
    starts = [0, *bounds.tolist()]
    ends = [*bounds.tolist(), len(cols)]
    return _dual_insert_shape([cols[a:b] for a, b in zip(starts, ends)])


def replica_rng(seed: int, replica: int) -> np.random.Generator:
    """Independent generator for replica ``replica`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(replica,)))


def _sample_block(args) -> list[Partition]:
    n, k, p, count, seed, replica = args
    rng = replica_rng(seed, replica)
    if p == 0:
        return [()] * count
    return [_shape_from_cells(rng.choice(n * k, p, replace=False), k) for _ in range(count)]


def sample_howe(params: HoweParams, count: int, seed: int = 0, block: int = 10_000,
                workers: int = 1) -> list[Partition]:
    """``count`` i.i.d. diagrams from the skew Howe measure.

    Samples are produced in blocks of ``block``; block ``r`` draws from the
    stream derived from ``(seed, r)``, so the output depends only on
    ``(params, count, seed, block)`` and not on ``workers``.
    """
    jobs = []
    replica = 0
    left = count
    while left > 0:
        m = min(block, left)
        jobs.append((params.n, params.k, params.p, m, seed, replica))
        replica += 1
        left -= m
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            blocks = list(pool.map(_sample_block, jobs))
    else:
        blocks = [_sample_block(j) for j in jobs]
    return [lam for b in blocks for lam in b]


def empirical_distribution(samples: Sequence[Partition]) -> dict[Partition, float]:
    out: dict[Partition, float] = {}
    for lam in samples:
        out[lam] = out.get(lam, 0) + 1
    total = len(samples)
    return {lam: c / total for lam, c in out.items()}


def total_variation(table: MeasureTable, samples: Sequence[Partition]) -> float:
    emp = empirical_distribution(samples)
    keys = set(emp) | set(table.entries)
    return 0.5 * sum(abs(emp.get(lam, 0.0) - float(table.entries.get(lam, 0))) for lam in keys)


# -- profiles and moments ---------------------------------------------------


def particle_positions(lam: Sequence[int], n: int) -> np.ndarray:
    """Rescaled particles ``(lam_i - i) / n`` for ``i = 1..n``."""
    if len(lam) > n:
        raise ValueError(f"diagram has {len(lam)} rows, more than n={n}")
    rows = np.zeros(n, dtype=float)
    rows[: len(lam)] = lam
    return (rows - np.arange(1, n + 1)) / n


def empirical_profile(lam: Sequence[int], n: int) -> tuple[np.ndarray, PiecewiseLinearProfile]:
    """Particle positions and the rescaled diagram profile (slopes +-1 on the 1/n lattice).

    The profile equals 1 at x = -1 and ``|x|`` far from the diagram.
    """
    pos = particle_positions(lam, n)
    cells = [int(x) - i for i, x in enumerate(list(lam) + [0] * (n - len(lam)), start=1)]
    return pos, PiecewiseLinearProfile.from_occupied_cells(cells, n, -n)


def cotransition_moment(params: HoweParams, m: int, budget: int = DEFAULT_PARTITION_BUDGET) -> Fraction:
    """``sum_nu mu_H(nu) sum_i delta_i(nu) (nu_i - i)^m`` over diagrams in the box."""
    if params.p == 0:
        raise ValueError("no corners: p = 0")
    table = mu_h(params, budget)
    total = Fraction(0)
    for nu, w in table.entries.items():
        total += w * sum(q * Fraction(c.content) ** m for c, q in cotransition_probabilities(nu).items())
    return total


def line_edge_scaled(samples: Sequence[Partition], n: int, t_plus: float, top: int = 1) -> np.ndarray:
    """Edge variables ``n^{2/3} (lam_i / (t_+ n) - 1)`` for the ``top`` longest rows."""
    out = np.zeros((len(samples), top))
    for s, lam in enumerate(samples):
        rows = np.zeros(top)
        rows[: min(top, len(lam))] = lam[:top]
        out[s] = n ** (2 / 3) * (rows / (t_plus * n) - 1)
    return out
