"""One test per acceptance criterion; each prints a PASS/FAIL line with the measured numbers."""
import time
from fractions import Fraction
from math import prod

import numpy as np
from scipy.stats import chisquare

from skewhowe.characters import (
    diagonal_yjm_character,
    normalized_restriction,
    stanley_pairs,
    stanley_rectangular,
    stanley_route_jm_moment,
    tau_word_sign_sum,
    tau_words,
)
from skewhowe.figures import edge_comparison, figure1_data, figure2_data
from skewhowe.howe import (
    HoweParams,
    cotransition_moment,
    empirical_profile,
    mu_h,
    product_form_table,
    sample_howe,
)
from skewhowe.hurwitz import hurwitz_character_sum, triple_monotone_relation_check
from skewhowe.jue import JueParams, mc_correlators
from skewhowe.limits import (
    HoweAsymptoticParams,
    equilibrium_solver,
    gue_potential,
    howe_edges,
    howe_limit_density,
    howe_potential,
    jue_edges,
    jue_limit_density,
    jue_potential,
    limit_shape,
    markov_krein_residual,
    pushforward_residual,
    standard_grid,
)
from skewhowe.partitions import class_representative, partitions, plancherel, transition_probabilities
from skewhowe.profiles import sup_distance
from skewhowe.series import GammaParams
from skewhowe.tau import exact_correlator, tau_hurwitz_truncation, tau_schur_truncation
from skewhowe.verify import compositions

# figure 2 at N=1500 costs about 12 s per replica on one core; 10 replicas keep
# the whole criterion inside its time budget
FIG2_SEEDS = 10


def test_criterion_01_measure_exact(record):
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 5):
        for k in range(1, 5):
            for p in range(n * k + 1):
                params = HoweParams(n, k, p)
                table = mu_h(params)
                if sum(table.entries.values()) != 1 or product_form_table(params).entries != table.entries:
                    bad.append((n, k, p))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    record(1, ok, f"normalization and product form, n,k<=4: {len(bad)} mismatches, {dt:.2f}s (<10s)")
    assert not bad
    assert dt < 10


def test_criterion_02_plancherel(record):
    t0 = time.perf_counter()
    rows_bad, stat_bad = 0, 0
    for size in range(9):
        for nu in partitions(size):
            rows_bad += sum(transition_probabilities(nu).values()) != 1
        if size == 0:
            continue
        prev = list(partitions(size - 1))
        for lam in partitions(size):
            pushed = sum((plancherel(nu) * transition_probabilities(nu).get(lam, 0) for nu in prev), Fraction(0))
            stat_bad += pushed != plancherel(lam)
    dt = time.perf_counter() - t0
    ok = rows_bad == 0 and stat_bad == 0 and dt < 10
    record(2, ok, f"|lam|<=8: {rows_bad} bad rows, {stat_bad} bad stationarity, {dt:.2f}s (<10s)")
    assert rows_bad == 0 and stat_bad == 0
    assert dt < 10


def test_criterion_03_sampler_chi_square(record):
    t0 = time.perf_counter()
    pvals = {}
    for n, k, p in ((2, 2, 2), (2, 3, 3), (3, 3, 4)):
        params = HoweParams(n, k, p)
        table = mu_h(params)
        shapes = sorted(table.entries)
        samples = sample_howe(params, 100_000, seed=0)
        counts = {lam: 0 for lam in shapes}
        for lam in samples:
            counts[lam] += 1
        observed = np.array([counts[lam] for lam in shapes], dtype=float)
        expected = np.array([float(table.entries[lam]) for lam in shapes]) * len(samples)
        pvals[(n, k, p)] = float(chisquare(observed, expected).pvalue)
    dt = time.perf_counter() - t0
    ok = all(v > 1e-3 for v in pvals.values()) and dt < 60
    shown = ", ".join(f"{key}: p={v:.3g}" for key, v in pvals.items())
    record(3, ok, f"chi-square at 1e5 samples: {shown}; {dt:.1f}s (<60s)")
    assert all(v > 1e-3 for v in pvals.values())
    assert dt < 60


def test_criterion_04_character_routes(record):
    t0 = time.perf_counter()
    bad = {"rectangular": 0, "pairs": 0, "bridge": 0, "first_moment": 0}
    for n in range(1, 4):
        for k in range(1, 4):
            for p in range(1, min(5, n * k) + 1):
                for lam in partitions(p):
                    rect = stanley_rectangular(n, k, lam)
                    bad["rectangular"] += rect != normalized_restriction(n, k, lam)
                    if p <= 4:
                        bad["pairs"] += stanley_pairs(n, k, class_representative(lam)) != rect
            for p in range(1, min(4, n * k) + 1):
                for m in range(4):
                    bad["bridge"] += cotransition_moment(HoweParams(n, k, p), m) != stanley_route_jm_moment(n, k, p, m)
    for n in range(1, 5):
        for k in range(1, 5):
            if n * k == 1:
                continue
            for p in range(1, n * k + 1):
                expected = Fraction((p - 1) * (k - n), n * k - 1)
                bad["first_moment"] += cotransition_moment(HoweParams(n, k, p), 1) != expected
    dt = time.perf_counter() - t0
    ok = not any(bad.values()) and dt < 120
    record(4, ok, f"mismatches {bad}; {dt:.1f}s (<120s)")
    assert not any(bad.values())
    assert dt < 120


def test_criterion_05_sign_route(record):
    bad, checked = 0, 0
    for p in range(1, 7):
        for size in range(5):
            for kappa in compositions(size, p):
                expected = (-1) ** size * prod((p - i) ** e for i, e in enumerate(kappa, start=1))
                bad += tau_word_sign_sum(p, kappa) != expected
                checked += 1
    # side-by-side with the cotransition route; recorded, never gating
    differ = 0
    for n in range(1, 4):
        for k in range(1, 4):
            for p in range(2, min(4, n * k) + 1):
                for m in range(1, 4):
                    differ += cotransition_moment(HoweParams(n, k, p), m) != diagonal_yjm_character(p, (m,))
    record(5, bad == 0, f"sign route exact on {checked} (p,kappa) cases, {bad} mismatches; "
                        f"cotransition vs sign route (report-only): {differ} cases differ")
    assert bad == 0


def test_criterion_06_hurwitz(record):
    t0 = time.perf_counter()
    regroup_bad, regroup_n = 0, 0
    for n, k in ((1, 2), (2, 2), (2, 3), (3, 2), (3, 3)):
        for p in range(1, min(4, n * k) + 1):
            for size in range(4):
                for kappa in compositions(size, p):
                    direct = sum((stanley_pairs(n, k, w) for w in tau_words(p, kappa)), Fraction(0))
                    regroup_bad += hurwitz_character_sum(n, k, p, kappa) != direct
                    regroup_n += 1
    mono_bad, mono_n = 0, 0
    for gamma in (GammaParams(2, 3), GammaParams(Fraction(1, 2), Fraction(5, 3))):
        for size in range(1, 5):
            for kappa in partitions(size):
                for g in (0, 1):
                    mono_bad += not triple_monotone_relation_check(kappa, g, gamma)["equal"]
                    mono_n += 1
    dt = time.perf_counter() - t0
    ok = regroup_bad == 0 and mono_bad == 0 and dt < 300
    record(6, ok, f"regrouping {regroup_n - regroup_bad}/{regroup_n}, triple monotone "
                  f"{mono_n - mono_bad}/{mono_n}; {dt:.1f}s (<300s)")
    assert regroup_bad == 0 and mono_bad == 0
    assert dt < 300


def test_criterion_07_tau(record):
    t0 = time.perf_counter()
    series_ok = all(
        tau_schur_truncation(g, 3).coeffs == tau_hurwitz_truncation(g, 3).coeffs
        for g in (GammaParams(2, 3), GammaParams(1, 1), GammaParams(Fraction(1, 2), Fraction(5, 3)))
    )
    beta_ok = True
    for a, b in ((0, 0), (1, 0), (2, 3), (0, 4)):
        g = GammaParams(a + 1, b + 1)  # N = 1: M_alpha = alpha + 1, M_beta = beta + 1
        beta_ok &= exact_correlator(1, g, (1,)) == Fraction(a + 1, a + b + 2)
    params = JueParams(100, 1, 1)
    est, se = mc_correlators(params, (1,), 400, seed=0)
    target = params.N * 1 / 2
    mc_ok = abs(est - target) <= 3 * se
    dt = time.perf_counter() - t0
    ok = series_ok and beta_ok and mc_ok and dt < 120
    record(7, ok, f"schur=hurwitz deg<=3: {series_ok}; N=1 Beta means exact: {beta_ok}; "
                  f"N=100 MC {est:.4f} +- {se:.4f} vs {target} ({abs(est - target) / se:.2f} SE); {dt:.1f}s (<120s)")
    assert series_ok and beta_ok and mc_ok
    assert dt < 120


def test_criterion_08_jue_limit_law(record):
    t0 = time.perf_counter()
    d = figure1_data(1000, 0.95, 1.235, seed=0)
    dt = time.perf_counter() - t0
    ok = d.zero_count == 50 and d.ks <= 0.05 and dt < 60
    record(8, ok, f"N=1000 (0.95,1.235): {d.zero_count} zero eigenvalues (need 50), KS {d.ks:.4f} (<=0.05), "
                  f"{dt:.1f}s (<60s)")
    assert d.zero_count == 50
    assert d.ks <= 0.05
    assert dt < 60


def test_criterion_09_limit_shape(record):
    t0 = time.perf_counter()
    n = k = 200
    p = n * k // 2
    omega = limit_shape(HoweAsymptoticParams.from_box(n, k, p))
    dists = []
    for lam in sample_howe(HoweParams(n, k, p), 10, seed=0):
        _, prof = empirical_profile(lam, n)
        dists.append(sup_distance(prof, omega, -2.0, 2.0, 8001, extra=prof.xs))
    med = float(np.median(dists))
    dt = time.perf_counter() - t0
    ok = med <= 0.05 and dt < 60
    record(9, ok, f"n=k=200 p=20000, 10 samples: median sup-distance {med:.4f} (<=0.05), {dt:.1f}s (<60s)")
    assert med <= 0.05
    assert dt < 60


MK_SETS = [(1.0, 1.0), (2.0, 1.0), (0.5, 1.5), (1 / 5.4, 3.0), (1.5, 0.5)]  # (alpha_h, c)
PUSH_SETS = [(1.0, 1.0), (1.6, 4.8), (0.95, 1.235), (2.0, 2.0), (3.0, 0.7)]


def test_criterion_10_markov_krein(record):
    t0 = time.perf_counter()
    mk = {}
    for alpha_h, c in MK_SETS:
        params = HoweAsymptoticParams(c, alpha_h)
        grid = standard_grid(params)
        assert len(grid) == 10
        mk[(alpha_h, c)] = markov_krein_residual(params, grid)
    push = {pair: pushforward_residual(*pair) for pair in PUSH_SETS}
    dt = time.perf_counter() - t0
    worst_mk, worst_push = max(mk.values()), max(push.values())
    ok = worst_mk <= 1e-6 and worst_push <= 1e-8 and dt < 60
    record(10, ok, f"max MK residual {worst_mk:.2e} (<=1e-6) over 5 sets x 10 points, "
                   f"max pushforward residual {worst_push:.2e} (<=1e-8); {dt:.1f}s (<60s)")
    assert worst_mk <= 1e-6
    assert worst_push <= 1e-8
    assert dt < 60


def test_criterion_11_equilibrium(record):
    t0 = time.perf_counter()
    rows = []
    res = equilibrium_solver(gue_potential())
    rows.append(("gue", max(abs(res.a + 2), abs(res.b - 2)),
                 float(np.max(np.abs(res.density - np.sqrt(4 - res.xs**2) / (2 * np.pi))))))
    for ca, cb in ((2.0, 2.0), (1.6, 4.8)):
        res = equilibrium_solver(jue_potential(ca, cb))
        lm, lp = jue_edges(ca, cb)
        rows.append((f"jue{(ca, cb)}", max(abs(res.a - lm), abs(res.b - lp)),
                     float(np.max(np.abs(res.density - jue_limit_density(ca, cb)(res.xs))))))
    for alpha_h, c in ((1.0, 1.0), (1.0, 2.0)):
        params = HoweAsymptoticParams(c, alpha_h)
        res = equilibrium_solver(howe_potential(params))
        tm, tp = howe_edges(params)
        rows.append((f"howe{(alpha_h, c)}", max(abs(res.a - tm), abs(res.b - tp)),
                     float(np.max(np.abs(res.density - howe_limit_density(params)(res.xs))))))
    dt = time.perf_counter() - t0
    ok = all(e <= 1e-6 and d <= 1e-4 for _, e, d in rows) and dt < 60
    shown = "; ".join(f"{name}: edges {e:.1e}, density {d:.1e}" for name, e, d in rows)
    record(11, ok, f"{shown}; {dt:.1f}s (<60s)")
    for name, e, d in rows:
        assert e <= 1e-6, name
        assert d <= 1e-4, name
    assert dt < 60


def test_criterion_12_interlacing(record):
    t0 = time.perf_counter()
    d = figure2_data((50, 500, 1500), 1.6, 4.8, seeds=FIG2_SEEDS, seed=0)
    dt = time.perf_counter() - t0
    med = d.medians()
    worst = max(d.violations.values())
    ok = worst <= 1e-9 and d.decreasing() and med[1500] <= 0.1 and dt < 300
    shown = ", ".join(f"N={N}: {v:.4f}" for N, v in sorted(med.items()))
    record(12, ok, f"median sup-distance over {FIG2_SEEDS} seeds {shown} (decreasing, <=0.1 at 1500); "
                   f"max interlacing violation {worst:.1e} (<=1e-9); {dt:.1f}s (<300s)")
    assert worst <= 1e-9
    assert d.decreasing()
    assert med[1500] <= 0.1
    assert dt < 300


def test_criterion_13_edge_comparison(record):
    t0 = time.perf_counter()
    e = edge_comparison(100, 1.6, 4.8, samples=500, seed=0)
    dt = time.perf_counter() - t0
    record(13, None, f"n=N=100, 500 samples each: KS(x1, y1) = {e.ks:.4f} (p={e.pvalue:.2g}); "
                     f"median x1 {np.median(e.x[:, 0]):.3f}, median y1 {np.median(e.y[:, 0]):.3f}; {dt:.1f}s (<300s)")
    assert e.x.shape == e.y.shape == (500, 1)
    assert np.isfinite(e.ks)
    assert dt < 300
