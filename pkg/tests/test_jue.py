import mpmath
import numpy as np
import pytest
from scipy import stats
from scipy.special import beta as B

from skewhowe.jue import (
    JueParams,
    SpectrumSample,
    edge_samples_jue,
    exact_moments_small_n,
    interlacing_profile,
    jackknife,
    jue_from_factors,
    jue_matrix,
    mc_correlators,
    sample_spectrum,
    selberg_integral,
    spectrum,
    z_jue,
)


def test_params():
    p = JueParams(1000, 0.95, 1.235)
    assert (p.M_alpha, p.M_beta) == (950, 1235)
    with pytest.raises(ValueError):
        JueParams(10, 0.0, 0.5)
    with pytest.raises(ValueError):
        JueParams(10, 0.2, 0.2)


def test_hermitian_and_bounded():
    for params in (JueParams(20, 2, 3), JueParams(50, 0.8, 0.5)):
        H = jue_matrix(params, seed=4)
        assert np.max(np.abs(H - H.conj().T)) <= 1e-12 * np.max(np.abs(H))
        ev = spectrum(H).eigenvalues
        assert ev.min() >= -1e-10 and ev.max() <= 1 + 1e-10


def test_n1_uniform():
    params = JueParams(1, 1, 1)
    draws = [jue_matrix(params, seed=0, replica=r)[0, 0].real for r in range(3000)]
    assert stats.kstest(draws, "uniform").pvalue > 1e-3


def test_zero_eigenvalues_figure1():
    s = sample_spectrum(JueParams(1000, 0.95, 1.235), seed=0)
    assert s.zero_count() == 50


def test_scale_invariance():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((8, 6)) + 1j * rng.standard_normal((8, 6))
    Bm = rng.standard_normal((9, 6)) + 1j * rng.standard_normal((9, 6))
    H1, H2 = jue_from_factors(A, Bm), jue_from_factors(3.7 * A, 3.7 * Bm)
    assert np.allclose(np.linalg.eigvalsh(H1), np.linalg.eigvalsh(H2), atol=1e-10)


def test_singular_factors_rejected():
    A = np.zeros((3, 1))
    with pytest.raises(np.linalg.LinAlgError):
        jue_from_factors(A, np.zeros((3, 1)))


def test_spectrum_examples():
    s = spectrum(np.diag([0.2, 0.9, 0.5]), with_minor=True)
    assert np.allclose(s.eigenvalues, [0.9, 0.5, 0.2])
    H = jue_matrix(JueParams(2, 2, 2), seed=1)
    s = spectrum(H, with_minor=True)
    a, b = s.eigenvalues
    (m,) = s.minor_eigenvalues
    assert a >= m >= b


def test_interlacing_exact_on_draws():
    for N in (5, 50):
        s = sample_spectrum(JueParams(N, 1.6, 4.8), seed=2, with_minor=True)
        assert s.interlacing_violation() <= 1e-9


def test_determinism():
    p = JueParams(30, 1.5, 2)
    assert np.array_equal(jue_matrix(p, seed=7), jue_matrix(p, seed=7))
    assert not np.array_equal(jue_matrix(p, seed=7), jue_matrix(p, seed=8))


@pytest.mark.parametrize("alpha,beta,expected", [(0, 0, 1), (1, 0, 0.5), (1, 1, 1 / 6)])
def test_z_jue_n1(alpha, beta, expected):
    assert float(z_jue(1, alpha, beta)) == pytest.approx(expected, rel=1e-25)


def test_z_jue_selberg():
    # the matrix normalization differs from the eigenvalue integral by pi^{N(N-1)/2} / prod j!
    for N, a, b in ((2, 0, 0), (3, 1, 2), (3, 0.5, 1.5)):
        factor = mpmath.pi ** (N * (N - 1) // 2) / mpmath.fprod(mpmath.factorial(j) for j in range(1, N + 1))
        assert mpmath.almosteq(z_jue(N, a, b), factor * selberg_integral(N, a, b), rel_eps=1e-12)
    with pytest.raises(ValueError):
        z_jue(2, -1, 0)


def test_exact_moments_examples():
    assert exact_moments_small_n(1, 0, 0, (1,))[0] == pytest.approx(0.5, abs=1e-14)
    for a, b, m in ((0.5, 1.5, 1), (2, 3, 3), (1, 0, 2)):
        v, err = exact_moments_small_n(1, a, b, (m,))
        assert v == pytest.approx(B(a + m + 1, b + 1) / B(a + 1, b + 1), rel=1e-12)
        assert err < 1e-10
    assert exact_moments_small_n(2, 0, 0, (1,))[0] == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        exact_moments_small_n(4, 0, 0, (1,))


def test_jackknife_mean_se():
    x = np.arange(10.0)
    m, se = jackknife(x)
    assert m == 4.5
    assert se == pytest.approx(np.std(x, ddof=1) / np.sqrt(10))


def test_mc_small_cases():
    est, se = mc_correlators(JueParams(1, 1, 1), (1,), 2000, seed=0)
    assert abs(est - 0.5) <= 3 * se
    exact, _ = exact_moments_small_n(2, 0, 0, (1, 1))
    est, se = mc_correlators(JueParams(2, 1, 1), (1, 1), 2000, seed=1)
    assert abs(est - exact) <= 3 * se


def test_mc_n100_first_moment():
    est, se = mc_correlators(JueParams(100, 1, 1), (1,), 200, seed=3)
    assert abs(est - 50) <= 3 * se


def test_interlacing_profile_n2():
    s = SpectrumSample(np.array([0.8, 0.3]), np.array([0.5]))
    prof = interlacing_profile(s, 1.0)
    assert np.allclose(prof.minima, [-0.4, 0.6])
    assert np.allclose(prof.maxima, [0.0])
    with pytest.raises(ValueError):
        interlacing_profile(SpectrumSample(np.array([0.5])), 1.0)


def test_interlacing_profile_symmetric():
    s = SpectrumSample(np.array([0.9, 0.6, 0.4, 0.1]), np.array([0.7, 0.5, 0.3]))
    prof = interlacing_profile(s, 1.0)
    x = np.linspace(-2, 2, 101)
    assert np.allclose(prof(x), prof(-x))


def test_edge_samples():
    params = JueParams(200, 2, 2)
    y = edge_samples_jue(params, 500, top_s=2, seed=0)
    from skewhowe.limits import jue_edges

    lp = jue_edges(*params.realized)[1]
    assert np.all(y[:, 0] <= 200 ** (2 / 3) * (1 / lp - 1))
    assert np.all(y[:, 0] >= y[:, 1])
    assert np.median(y[:, 0]) < 0
