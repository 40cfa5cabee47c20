import numpy as np
import pytest

from skewhowe.limits import (
    DensityModel,
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
    ks_distance,
    limit_shape,
    markov_krein_check,
    markov_krein_residual,
    pushforward_residual,
)


def test_arcsine_case():
    m = jue_limit_density(1, 1)
    assert jue_edges(1, 1) == pytest.approx((0.0, 1.0), abs=1e-15)
    x = np.array([0.1, 0.3, 0.5, 0.8])
    assert np.allclose(m(x), 1 / (np.pi * np.sqrt(x * (1 - x))), rtol=1e-12)
    assert m.atoms == []
    assert m.mass() == pytest.approx(1.0, abs=1e-8)


def test_figure1_atom():
    m = jue_limit_density(0.95, 1.235)
    assert len(m.atoms) == 1
    loc, w = m.atoms[0]
    assert loc == 0.0 and w == pytest.approx(0.05, abs=1e-12)
    assert m.mass() == pytest.approx(1.0, abs=1e-8)


def test_mass_and_first_moment():
    m = jue_limit_density(1.6, 4.8)
    assert m.mass() == pytest.approx(1.0, abs=1e-8)
    assert m.moment(1) == pytest.approx(1.6 / 6.4, abs=1e-8)


def test_howe_half_filling():
    p = HoweAsymptoticParams(1, 1)
    assert howe_edges(p) == pytest.approx((-1.0, 1.0), abs=1e-12)
    rho = howe_limit_density(p)
    assert np.allclose(rho(np.linspace(-0.99, 0.99, 50)), 0.5, atol=1e-12)
    om = limit_shape(p)
    assert np.allclose(om(np.linspace(-1, 1, 41)), 1.0, atol=1e-9)
    sigma = howe_transition_measure(p)
    assert all(w == 0 for _, w in sigma.atoms)
    assert sigma.mass() == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("alpha_h,c", [(1, 2), (0.5, 1.5), (2, 0.7), (1 / 5.4, 3)])
def test_howe_density_properties(alpha_h, c):
    p = HoweAsymptoticParams(c, alpha_h)
    rho = howe_limit_density(p)
    tm, tp = howe_edges(p)
    assert -1 <= tm < tp <= c
    assert rho.mass() == pytest.approx(1.0, abs=1e-8)
    edge_vals = rho(np.array([tm + 1e-9, tp - 1e-9]))
    assert np.all(np.minimum(np.abs(edge_vals), np.abs(edge_vals - 1)) < 1e-3)
    om = limit_shape(p)
    assert float(om(-1.0)) == pytest.approx(1.0, abs=1e-9)
    assert float(om(c)) == pytest.approx(c, abs=1e-7)
    assert howe_transition_measure(p).mass() == pytest.approx(1.0, abs=1e-8)


def test_stieltjes_examples():
    m = jue_limit_density(1, 1)
    assert m.stieltjes(2.0) == pytest.approx(1 / np.sqrt(2), abs=1e-10)
    u = 0.3 + 0.7j
    assert m.stieltjes(np.conj(u)) == pytest.approx(np.conj(m.stieltjes(u)), abs=1e-12)
    assert (1e6 * m.stieltjes(1e6)) == pytest.approx(1.0, abs=1e-5)
    with pytest.raises(ValueError):
        m.stieltjes(0.5)


def test_markov_krein_examples():
    p = HoweAsymptoticParams(1, 1)
    assert markov_krein_residual(p, [2, 3, 5j]) <= 1e-6
    q = HoweAsymptoticParams.from_jue(1.6, 4.8)
    assert markov_krein_residual(q, [q.c + 1]) <= 1e-6
    assert markov_krein_check(q)["residual"] <= 1e-6
    big = 1e5
    sig = howe_transition_measure(p)
    assert big * sig.stieltjes(big) == pytest.approx(1.0, abs=1e-4)


def test_pushforward():
    for ca, cb in ((1.6, 4.8), (2, 2), (0.95, 1.235), (3, 0.7)):
        assert pushforward_residual(ca, cb) <= 1e-8


def test_parameter_dictionary():
    p = HoweAsymptoticParams.from_jue(1.6, 4.8)
    assert p.c == pytest.approx(3.0)
    assert p.alpha_h == pytest.approx(1 / 5.4)
    q = HoweAsymptoticParams.from_box(200, 200, 20000)
    assert (q.c, q.alpha_h) == (1.0, 1.0)


def test_ks_distance_with_atom():
    m = jue_limit_density(0.95, 1.235)
    rng = np.random.default_rng(0)
    assert ks_distance(np.zeros(20), m) == pytest.approx(0.95, abs=1e-9)
    u = jue_limit_density(1, 1)
    draws = np.sin(np.pi * rng.random(20000) / 2) ** 2  # arcsine law
    assert ks_distance(draws, u) < 0.02


def test_equilibrium_gue():
    res = equilibrium_solver(gue_potential())
    assert (res.a, res.b) == pytest.approx((-2.0, 2.0), abs=1e-6)
    assert np.allclose(res.density, np.sqrt(4 - res.xs**2) / (2 * np.pi), atol=1e-4)
    assert res.mass == pytest.approx(1.0, abs=1e-6)


def test_equilibrium_jue():
    res = equilibrium_solver(jue_potential(2, 2))
    assert (res.a, res.b) == pytest.approx(jue_edges(2, 2), abs=1e-6)
    assert np.allclose(res.density, jue_limit_density(2, 2)(res.xs), atol=1e-4)


@pytest.mark.parametrize("alpha_h,c", [(1, 1), (1, 2)])
def test_equilibrium_howe(alpha_h, c):
    p = HoweAsymptoticParams(c, alpha_h)
    res = equilibrium_solver(howe_potential(p))
    assert (res.a, res.b) == pytest.approx(howe_edges(p), abs=1e-6)
    assert np.allclose(res.density, howe_limit_density(p)(res.xs), atol=1e-4)


def test_equilibrium_failure_is_reported():
    with pytest.raises(RuntimeError, match="single-cut"):
        equilibrium_solver(howe_potential(HoweAsymptoticParams(0.5, 0.5)))


def test_density_model_plateaus():
    m = DensityModel(lambda x: np.full_like(x, 0.5), (0.0, 1.0), plateaus=[(-1.0, 0.0, 1.0)])
    assert m(np.array([-0.5]))[0] == 1.0
    assert m(np.array([0.5]))[0] == 0.5
    assert m(np.array([2.0]))[0] == 0.0
