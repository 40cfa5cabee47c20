"""Property-based checks on random diagrams, boxes and spectra."""
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from skewhowe.howe import HoweParams, dual_rsk_shape, empirical_profile, mu_h
from skewhowe.jue import JueParams, sample_spectrum
from skewhowe.partitions import conjugate, cotransition_probabilities, dim_sym, hook_lengths, transition_probabilities
from skewhowe.profiles import PiecewiseLinearProfile

partitions_st = st.lists(st.integers(1, 6), max_size=6).map(lambda xs: tuple(sorted(xs, reverse=True)))


@given(partitions_st)
def test_conjugate_involution_and_size(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)
    assert sorted(hook_lengths(lam)) == sorted(hook_lengths(conjugate(lam)))


@given(partitions_st)
def test_transitions_are_distributions(lam):
    assert sum(transition_probabilities(lam).values()) == 1
    if lam:
        assert sum(cotransition_probabilities(lam).values()) == 1
    assert dim_sym(lam) == dim_sym(conjugate(lam))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_measure_normalized(n, k, data):
    p = data.draw(st.integers(0, n * k))
    table = mu_h(HoweParams(n, k, p))
    assert sum(table.entries.values()) == Fraction(1)
    assert all(len(lam) <= n and (not lam or lam[0] <= k) for lam in table.entries)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6))
def test_dual_rsk_admissible(n, k, seed):
    m = (np.random.default_rng(seed).random((n, k)) < 0.5).astype(int)
    lam = dual_rsk_shape(m)
    assert sum(lam) == m.sum()
    assert len(lam) <= n and (not lam or lam[0] <= k)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_profile_slopes_and_area(n, k, data):
    lam = data.draw(st.lists(st.integers(0, k), min_size=n, max_size=n).map(lambda xs: tuple(x for x in sorted(xs, reverse=True) if x)))
    _, prof = empirical_profile(lam, n)
    assert np.allclose(np.abs(prof.slopes()), 1.0)
    xs = np.linspace(-3 - 1, k / n + 3, 20001)
    area = np.trapezoid(prof(xs) - np.abs(xs), xs)
    assert abs(area - 2 * sum(lam) / n**2) < 1e-3


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 25), st.floats(0.5, 3), st.floats(0.5, 3), st.integers(0, 1000))
def test_spectrum_interlaces_and_lies_in_unit_interval(N, ca, cb, seed):
    try:
        params = JueParams(N, ca, cb)
    except ValueError:
        return
    s = sample_spectrum(params, seed, with_minor=True)
    assert s.eigenvalues.min() >= -1e-10 and s.eigenvalues.max() <= 1 + 1e-10
    assert s.interlacing_violation() <= 1e-9
    prof = PiecewiseLinearProfile.from_interlacing(s.eigenvalues, s.minor_eigenvalues)
    dx, dy = np.diff(prof.xs), np.diff(prof.ys)
    wide = dx > 1e-8  # repeated zero eigenvalues give empty segments
    assert np.allclose(np.abs(dy[wide] / dx[wide]), 1.0)
