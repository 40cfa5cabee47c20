"""Verification suites: every identity the library implements, checked through independent routes."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable

import numpy as np
from scipy.stats import chisquare

from . import __version__
from .characters import (
    DEFAULT_TUPLE_BUDGET,
    diagonal_yjm_character,
    normalized_restriction,
    stanley_pairs,
    stanley_rectangular,
    stanley_route_jm_moment,
    tau_word_sign_sum,
    tau_words,
)
from .howe import (
    DEFAULT_PARTITION_BUDGET,
    HoweParams,
    cotransition_moment,
    mu_h,
    product_form_table,
    sample_howe,
)
from .hurwitz import (
    branched_cover_table,
    hurwitz_character_sum,
    jm_class_expansion_check,
    triple_monotone_relation_check,
)
from .jue import JueParams, exact_moments_small_n, mc_correlators
from .limits import (
    HoweAsymptoticParams,
    equilibrium_solver,
    gue_potential,
    howe_edges,
    howe_limit_density,
    howe_potential,
    howe_transition_measure,
    jue_edges,
    jue_limit_density,
    jue_potential,
    markov_krein_residual,
    pushforward_residual,
)
from .partitions import (
    conjugate,
    cotransition_probabilities,
    cycle_type,
    partitions,
    plancherel,
    removable_corners,
    transition_probabilities,
)
from .series import GammaParams
from .tau import exact_correlator, genus_expansion_eval, tau_hurwitz_truncation, tau_schur_truncation

SUITES = ("measure", "characters", "hurwitz", "markov-krein", "tau", "equilibrium")


@dataclass
class ReportEntry:
    check: str
    params: dict
    lhs: Any = None
    rhs: Any = None
    residual: float | None = None
    status: str = "pass"  # pass | fail | report-only
    suite: str = ""

    def to_json(self) -> dict:
        return {"check": self.check, "suite": self.suite, "params": self.params, "lhs": self.lhs,
                "rhs": self.rhs, "residual": self.residual, "status": self.status}


def exact_entry(check: str, params: dict, lhs, rhs) -> ReportEntry:
    return ReportEntry(check, params, lhs, rhs, None, "pass" if lhs == rhs else "fail")


def tol_entry(check: str, params: dict, lhs, rhs, residual: float, tol: float) -> ReportEntry:
    ok = residual is not None and np.isfinite(residual) and residual <= tol
    return ReportEntry(check, {**params, "tolerance": tol}, lhs, rhs, float(residual), "pass" if ok else "fail")


@dataclass
class VerifyConfig:
    seed: int = 0
    samples: int = 100_000
    budget_tuples: int = DEFAULT_TUPLE_BUDGET
    budget_partitions: int = DEFAULT_PARTITION_BUDGET
    mc_samples: int = 400


@dataclass
class Report:
    entries: list[ReportEntry] = field(default_factory=list)

    @property
    def pass_count(self) -> int:
        return sum(e.status == "pass" for e in self.entries)

    @property
    def fail_count(self) -> int:
        return sum(e.status == "fail" for e in self.entries)

    @property
    def ok(self) -> bool:
        return self.fail_count == 0

    def to_json(self) -> dict:
        return {"version": __version__, "entries": [e.to_json() for e in self.entries],
                "pass_count": self.pass_count, "fail_count": self.fail_count}


# -- measure -----------------------------------------------------------------


def measure_normalization(n_max: int = 4, budget: int = DEFAULT_PARTITION_BUDGET) -> list[ReportEntry]:
    """Per box: total mass 1, product form equal to dimension form, transpose symmetry."""
    out = []
    for n, k in product(range(1, n_max + 1), repeat=2):
        bad_mass, bad_form, bad_transpose = [], [], []
        for p in range(n * k + 1):
            params = HoweParams(n, k, p)
            table = mu_h(params, budget)
            if sum(table.entries.values()) != 1:
                bad_mass.append(p)
            if product_form_table(params, budget).entries != table.entries:
                bad_form.append(p)
            dual = mu_h(HoweParams(k, n, p), budget).entries
            if any(dual.get(conjugate(lam)) != q for lam, q in table.entries.items()):
                bad_transpose.append(p)
        pars = {"n": n, "k": k, "p": f"0..{n * k}"}
        out.append(exact_entry("mu_h_sums_to_one", pars, bad_mass, []))
        out.append(exact_entry("product_form_equals_dimension_form", pars, bad_form, []))
        out.append(exact_entry("transpose_symmetry", pars, bad_transpose, []))
    return out


def first_cotransition_moment(n_max: int = 4, budget: int = DEFAULT_PARTITION_BUDGET) -> list[ReportEntry]:
    out = []
    for n, k in product(range(1, n_max + 1), repeat=2):
        if n * k == 1:
            continue
        bad = []
        for p in range(1, n * k + 1):
            if cotransition_moment(HoweParams(n, k, p), 1, budget) != Fraction((p - 1) * (k - n), n * k - 1):
                bad.append(p)
        out.append(exact_entry("cotransition_M1_closed_form", {"n": n, "k": k, "formula": "(p-1)(k-n)/(nk-1)"},
                               bad, []))
    return out


def plancherel_identities(max_size: int = 8) -> list[ReportEntry]:
    bad_rows, bad_cond, bad_cot = [], [], []
    for m in range(max_size + 1):
        for nu in partitions(m):
            if m < max_size and sum(transition_probabilities(nu).values()) != 1:
                bad_rows.append(nu)
            if m and sum(cotransition_probabilities(nu).values()) != 1:
                bad_cot.append(nu)
            if m:
                rhs = sum((transition_probabilities(c.child)[nu] * plancherel(c.child)
                           for c in removable_corners(nu)), Fraction(0))
                if rhs != plancherel(nu):
                    bad_cond.append(nu)
    pars = {"max_size": max_size}
    return [exact_entry("transition_rows_sum_to_one", pars, bad_rows, []),
            exact_entry("cotransition_rows_sum_to_one", pars, bad_cot, []),
            exact_entry("plancherel_conditional_identity", pars, bad_cond, [])]


def sampler_chi_square(params: HoweParams, samples: int, seed: int, level: float = 1e-3) -> ReportEntry:
    """Pearson chi-square of dual-RSK shapes against the exact table; pass if p-value > level."""
    table = mu_h(params)
    keys = list(table.entries)
    counts = dict.fromkeys(keys, 0)
    for lam in sample_howe(params, samples, seed):
        counts[lam] += 1
    obs = np.array([counts[k] for k in keys], dtype=float)
    exp = np.array([float(table.entries[k]) * samples for k in keys])
    stat, pval = chisquare(obs, exp)
    return ReportEntry("sampler_chi_square", {"n": params.n, "k": params.k, "p": params.p, "samples": samples,
                                              "seed": seed, "level": level},
                       float(stat), float(pval), float(pval), "pass" if pval > level else "fail")


def suite_measure(cfg: VerifyConfig) -> list[ReportEntry]:
    out = measure_normalization(4, cfg.budget_partitions)
    out += first_cotransition_moment(4, cfg.budget_partitions)
    out += plancherel_identities(8)
    for n, k, p in [(2, 2, 2), (2, 3, 3), (3, 3, 4)]:
        out.append(sampler_chi_square(HoweParams(n, k, p), cfg.samples, cfg.seed))
    return out


# -- characters --------------------------------------------------------------


def compositions(total: int, max_len: int):
    """Compositions of ``total`` into positive parts, at most ``max_len`` of them."""
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first, max_len - 1):
            yield (first,) + rest


def rectangular_routes(p_max: int = 5, side: int = 3) -> list[ReportEntry]:
    bad = []
    for n, k in product(range(1, side + 1), repeat=2):
        for p in range(min(p_max, n * k) + 1):
            for lam in partitions(p):
                if stanley_rectangular(n, k, lam) != normalized_restriction(n, k, lam):
                    bad.append((n, k, lam))
    return [exact_entry("stanley_rectangular_equals_restriction", {"p_max": p_max, "n_max": side, "k_max": side},
                        bad, [])]


def pair_routes(p_max: int = 4, side: int = 3, budget: int = DEFAULT_TUPLE_BUDGET) -> list[ReportEntry]:
    from .partitions import all_permutations

    bad = []
    for n, k in product(range(1, side + 1), repeat=2):
        for p in range(1, min(p_max, n * k) + 1):
            for w in all_permutations(p):
                if stanley_pairs(n, k, w, budget) != normalized_restriction(n, k, cycle_type(w)):
                    bad.append((n, k, w))
    return [exact_entry("stanley_pairs_equals_restriction", {"p_max": p_max, "n_max": side, "k_max": side}, bad, [])]


def cotransition_bridge(p_max: int = 4, m_max: int = 3, side: int = 3,
                        budget: int = DEFAULT_TUPLE_BUDGET) -> list[ReportEntry]:
    bad = []
    for n, k in product(range(1, side + 1), repeat=2):
        for p in range(1, min(p_max, n * k) + 1):
            for m in range(m_max + 1):
                if cotransition_moment(HoweParams(n, k, p), m) != stanley_route_jm_moment(n, k, p, m, budget):
                    bad.append((n, k, p, m))
    return [exact_entry("cotransition_moment_equals_stanley_route",
                        {"p_max": p_max, "m_max": m_max, "n_max": side, "k_max": side}, bad, [])]


def sign_route(p_max: int = 6, size_max: int = 4, budget: int = DEFAULT_TUPLE_BUDGET) -> list[ReportEntry]:
    bad = []
    for p in range(1, p_max + 1):
        for s in range(size_max + 1):
            for kappa in compositions(s, p):
                if tau_word_sign_sum(p, kappa, budget) != diagonal_yjm_character(p, kappa):
                    bad.append((p, kappa))
    return [exact_entry("tau_word_sign_sum_equals_closed_form", {"p_max": p_max, "size_max": size_max}, bad, [])]


def cotransition_vs_sign(side: int = 3, p_max: int = 4, m_max: int = 3) -> list[ReportEntry]:
    """Side-by-side values of the two families that share a name; never gating."""
    out = []
    for n, k in product(range(1, side + 1), repeat=2):
        for p in range(2, min(p_max, n * k) + 1):
            for m in range(1, m_max + 1):
                lhs = cotransition_moment(HoweParams(n, k, p), m)
                rhs = Fraction(diagonal_yjm_character(p, (m,)))
                out.append(ReportEntry("cotransition_route_vs_sign_route", {"n": n, "k": k, "p": p, "m": m},
                                       lhs, rhs, float(abs(lhs - rhs)), "report-only"))
    return out


def suite_characters(cfg: VerifyConfig) -> list[ReportEntry]:
    out = rectangular_routes()
    out += pair_routes(budget=cfg.budget_tuples)
    out += cotransition_bridge(budget=cfg.budget_tuples)
    out += sign_route(budget=cfg.budget_tuples)
    out += cotransition_vs_sign()
    return out


# -- hurwitz -----------------------------------------------------------------


def regrouping_identity(p_max: int = 4, side: int = 3, size_max: int = 3,
                        budget: int = DEFAULT_TUPLE_BUDGET) -> list[ReportEntry]:
    bad = []
    for n, k in product(range(1, side + 1), repeat=2):
        for p in range(1, min(p_max, n * k) + 1):
            for s in range(size_max + 1):
                for kappa in compositions(s, p):
                    direct = sum((stanley_pairs(n, k, w, budget) for w in tau_words(p, kappa, budget)), Fraction(0))
                    if hurwitz_character_sum(n, k, p, kappa, budget) != direct:
                        bad.append((n, k, p, kappa))
    return [exact_entry("hurwitz_character_sum_equals_pair_sums",
                        {"p_max": p_max, "n_max": side, "k_max": side, "size_max": size_max}, bad, [])]


def cover_counts_nonnegative(p_max: int = 4, size_max: int = 3,
                             budget: int = DEFAULT_TUPLE_BUDGET) -> list[ReportEntry]:
    bad = []
    for p in range(1, p_max + 1):
        for s in range(size_max + 1):
            for kappa in compositions(s, p):
                for (mu, nu), c in branched_cover_table(p, kappa, budget).items():
                    if c < 0 or (len(mu) + len(nu) - s) % 2:
                        bad.append((p, kappa, mu, nu))
    return [exact_entry("cover_counts_nonnegative_with_parity", {"p_max": p_max, "size_max": size_max}, bad, [])]


GAMMA_SET = (GammaParams(2, 3), GammaParams(1, 1), GammaParams(Fraction(1, 2), Fraction(5, 3)))


def suite_hurwitz(cfg: VerifyConfig) -> list[ReportEntry]:
    out = regrouping_identity(budget=cfg.budget_tuples)
    out += cover_counts_nonnegative(budget=cfg.budget_tuples)
    for p in range(1, 6):
        r = jm_class_expansion_check(p)
        out.append(exact_entry(r["check"], r["params"], r["equal"], True))
    for gamma in GAMMA_SET[:2]:
        for s in range(1, 5):
            for kappa in partitions(s):
                for g in (0, 1):
                    r = triple_monotone_relation_check(kappa, g, gamma)
                    out.append(exact_entry(r["check"], r["params"], r["lhs"], r["rhs"]))
    return out


# -- markov-krein ------------------------------------------------------------

MK_PARAMS = (
    HoweAsymptoticParams(1.0, 1.0),
    HoweAsymptoticParams.from_jue(1.6, 4.8),
    HoweAsymptoticParams.from_jue(0.95, 1.235),
    HoweAsymptoticParams(2.0, 1.0),
    HoweAsymptoticParams(0.5, 3.0),
)
PUSHFORWARD_PAIRS = ((1.0, 1.0), (1.6, 4.8), (0.95, 1.235), (2.0, 2.0), (0.5, 0.7))


def suite_markov_krein(cfg: VerifyConfig) -> list[ReportEntry]:
    out = []
    for params in MK_PARAMS:
        pars = {"c": params.c, "alpha_h": params.alpha_h}
        tm, tp = howe_edges(params)
        out.append(tol_entry("howe_edges_in_box", pars, [tm, tp], [-1.0, params.c],
                             max(0.0, -1.0 - tm, tp - params.c), 0.0))
        out.append(tol_entry("markov_krein_residual", pars, None, None, markov_krein_residual(params), 1e-6))
        out.append(tol_entry("transition_measure_mass", pars, howe_transition_measure(params).mass(), 1.0,
                             abs(howe_transition_measure(params).mass() - 1), 1e-8))
        rho_mass = howe_limit_density(params).mass()
        out.append(ReportEntry("particle_density_mass", pars, rho_mass, None, None, "report-only"))
    for ca, cb in PUSHFORWARD_PAIRS:
        pars = {"c_alpha": ca, "c_beta": cb}
        mass = jue_limit_density(ca, cb).mass()
        out.append(tol_entry("jue_density_mass", pars, mass, 1.0, abs(mass - 1), 1e-8))
        out.append(tol_entry("pushforward_identity", {**pars, "points": 100}, None, None,
                             pushforward_residual(ca, cb), 1e-8))
    return out


# -- tau ---------------------------------------------------------------------


def _beta_mean(alpha: int, beta: int) -> Fraction:
    return Fraction(alpha + 1, alpha + beta + 2)


def suite_tau(cfg: VerifyConfig) -> list[ReportEntry]:
    out = []
    for gamma in GAMMA_SET:
        pars = {"c_alpha": gamma.c_alpha, "c_beta": gamma.c_beta, "degree": 3}
        a, b = tau_schur_truncation(gamma, 3), tau_hurwitz_truncation(gamma, 3)
        diff = sorted(set(a.coeffs.items()) ^ set(b.coeffs.items()))
        out.append(exact_entry("tau_schur_equals_hurwitz", pars, len(diff), 0))
    # first moment at N = 1 against the Beta mean, several integer (alpha, beta)
    for alpha, beta in [(0, 0), (1, 0), (2, 3), (0, 4)]:
        gamma = GammaParams(1 + alpha, 1 + beta)
        out.append(exact_entry("first_moment_beta_mean", {"N": 1, "alpha": alpha, "beta": beta},
                               exact_correlator(1, gamma, (1,)), _beta_mean(alpha, beta)))
    for N in (1, 2, 3, 5):
        gamma = GammaParams(Fraction(3, 2), 2)
        g = genus_expansion_eval(gamma, (1,), 2)
        out.append(exact_entry("genus_expansion_first_moment_exact", {"N": N, "c_alpha": "3/2", "c_beta": 2},
                               g.correlator(N), exact_correlator(N, gamma, (1,))))
    # generating function against quadrature at small N
    for N in (1, 2):
        for kappa in [(1,), (2,), (1, 1)]:
            gamma = GammaParams(1, 1)
            exact = float(exact_correlator(N, gamma, kappa))
            quad_val, err = exact_moments_small_n(N, 0, 0, kappa)
            out.append(tol_entry("correlator_vs_quadrature", {"N": N, "kappa": list(kappa), "c_alpha": 1, "c_beta": 1},
                                 exact, quad_val, abs(exact - quad_val), 1e-6))
    gamma = GammaParams(1, 1)
    g = genus_expansion_eval(gamma, (2,), 2)
    exact = float(exact_correlator(2, gamma, (2,)))
    out.append(tol_entry("genus_expansion_truncated", {"N": 2, "kappa": [2], "g_max": g.g_max},
                         float(g.correlator(2)), exact, abs(float(g.correlator(2)) - exact), 1e-2))
    params = JueParams(100, 1.0, 1.0)
    est, se = mc_correlators(params, (1,), cfg.mc_samples, cfg.seed)
    target = params.N * params.c_alpha / (params.c_alpha + params.c_beta)
    out.append(ReportEntry("first_moment_monte_carlo", {"N": 100, "c_alpha": 1, "c_beta": 1, "samples": cfg.mc_samples,
                                                        "seed": cfg.seed, "se": se},
                           est, target, abs(est - target) / se, "pass" if abs(est - target) <= 3 * se else "fail"))
    return out


# -- equilibrium -------------------------------------------------------------


def suite_equilibrium(cfg: VerifyConfig) -> list[ReportEntry]:
    out = []
    res = equilibrium_solver(gue_potential())
    out.append(tol_entry("equilibrium_gue_support", {"potential": "gue"}, [res.a, res.b], [-2, 2],
                         max(abs(res.a + 2), abs(res.b - 2)), 1e-6))
    semi = np.sqrt(np.clip(4 - res.xs**2, 0, None)) / (2 * np.pi)
    out.append(tol_entry("equilibrium_gue_density", {"potential": "gue"}, None, None,
                         float(np.max(np.abs(res.density - semi))), 1e-4))
    for ca, cb in [(2.0, 2.0), (1.6, 4.8)]:
        res = equilibrium_solver(jue_potential(ca, cb))
        lm, lp = jue_edges(ca, cb)
        pars = {"potential": "jue", "c_alpha": ca, "c_beta": cb}
        out.append(tol_entry("equilibrium_jue_support", pars, [res.a, res.b], [lm, lp],
                             max(abs(res.a - lm), abs(res.b - lp)), 1e-6))
        out.append(tol_entry("equilibrium_jue_density", pars, None, None,
                             float(np.max(np.abs(res.density - jue_limit_density(ca, cb)(res.xs)))), 1e-4))
    for params in [HoweAsymptoticParams(1.0, 1.0), HoweAsymptoticParams(2.0, 1.0)]:
        res = equilibrium_solver(howe_potential(params))
        tm, tp = howe_edges(params)
        pars = {"potential": "howe", "c": params.c, "alpha_h": params.alpha_h, "hard_edges": list(res.hard_edges)}
        out.append(tol_entry("equilibrium_howe_support", pars, [res.a, res.b], [tm, tp],
                             max(abs(res.a - tm), abs(res.b - tp)), 1e-6))
        out.append(tol_entry("equilibrium_howe_density", pars, None, None,
                             float(np.max(np.abs(res.density - howe_limit_density(params)(res.xs)))), 1e-4))
    return out


SUITE_FUNCS: dict[str, Callable[[VerifyConfig], list[ReportEntry]]] = {
    "measure": suite_measure,
    "characters": suite_characters,
    "hurwitz": suite_hurwitz,
    "markov-krein": suite_markov_krein,
    "tau": suite_tau,
    "equilibrium": suite_equilibrium,
}


def run_suite(name: str, cfg: VerifyConfig | None = None) -> Report:
    cfg = cfg or VerifyConfig()
    names = SUITES if name == "all" else (name,)
    report = Report()
    for s in names:
        if s not in SUITE_FUNCS:
            raise KeyError(f"unknown suite {s!r}")
        for e in SUITE_FUNCS[s](cfg):
            e.suite = s
            report.entries.append(e)
    return report
