import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tplab import kernels as K
from tplab.errors import DomainError
from tplab.kernels.params import FracOUParams, MixtureParams

PARAM_SETS = ((0.75, 0.5), (1.25, 1.0), (0.6, 2.0), (1.4, 0.25))


# --- reduced (nonstationary) covariance -----------------------------------

@pytest.mark.parametrize("alpha lam".split(), PARAM_SETS)
def test_four_term_vs_coefficient_decomposition(alpha, lam):
    p = FracOUParams(alpha, lam)
    for t in np.linspace(0.15, 4.2, 10):
        for s in np.linspace(0.2, 3.8, 10):
            a = K.tfbm_cov(p, t, s)
            b = K.tfbm_cov_from_ct(p, t, s)
            assert abs(a - b) <= 1e-10


def test_pinned_origin_and_symmetry():
    p = FracOUParams(1.25, 0.5)
    assert K.tfbm_cov(p, 0.0, 0.0) == 0.0
    assert K.tfbm_cov(p, 2.0, 0.0) == 0.0
    assert K.tfbm_cov(p, 1.3, 2.9) == K.tfbm_cov(p, 2.9, 1.3)


def test_variance_is_diagonal_of_covariance():
    p = FracOUParams(0.8, 1.0)
    for t in (0.0, 0.4, 2.5):
        assert abs(K.tfbm_cov(p, t, t) - K.tfbm_var(p, t)) <= 1e-14


def test_variance_pinch_between_one_and_two_sigma2():
    p = FracOUParams(1.25, 0.5)
    sig2 = K.fou_var(p)
    for t in np.linspace(0.05, 300.0, 50):
        v = K.tfbm_var(p, t)
        assert 0.0 < v <= 2.0 * sig2 * (1.0 + 1e-14)
    assert K.tfbm_var(p, 80.0) >= sig2


def test_coefficient_times_power_recovers_variance():
    # c_t |t|^(2H) = var(t) exactly, by construction of the tail term
    p = FracOUParams(0.75, 1.0)
    for t in (0.2, 1.0, 7.0):
        lhs = K.tfbm_ct_coefficient(p, t) * t ** (2.0 * p.hurst)
        assert abs(lhs - K.tfbm_var(p, t)) <= 1e-13 * abs(lhs)


def test_coefficient_small_lag_limit():
    # lam t -> 0: c_t -> Gamma(1-2H) cos(H pi) / (H pi), approached at
    # rate O((lam t)^min(2H, 2-2H))
    p = FracOUParams(1.25, 1.0)
    hh = p.hurst
    lim = math.gamma(1.0 - 2.0 * hh) * math.cos(hh * math.pi) / (hh * math.pi)
    got = K.tfbm_ct_coefficient(p, 1e-6)
    assert abs(got - lim) <= 5e-3 * abs(lim)


def test_coefficient_rejects_zero_time():
    with pytest.raises(DomainError):
        K.tfbm_ct_coefficient(FracOUParams(0.75, 1.0), 0.0)


def test_asymptotic_stationarity_offset():
    # cov(t, s) - C(t-s) -> sigma^2 once both times are deep in the bulk
    p = FracOUParams(0.75, 0.5)
    sig2 = K.fou_var(p)
    drift = K.tfbm_cov(p, 400.0, 402.0) - K.fou_cov(p, 2.0)
    assert abs(drift - sig2) <= 1e-12 * sig2


@given(st.floats(min_value=0.55, max_value=1.45),
       st.floats(min_value=0.3, max_value=4.0))
@settings(max_examples=30, deadline=None)
def test_scaling_identity(alpha, r):
    lam, t, s = 1.0, 2.1, 0.9
    lhs = K.tfbm_cov(FracOUParams(alpha, lam), r * t, r * s)
    rhs = r ** (2.0 * alpha - 1.0) * K.tfbm_cov(FracOUParams(alpha, r * lam),
                                                t, s)
    assert abs(lhs - rhs) <= 1e-11 * max(abs(lhs), 1e-300)


# --- increments ------------------------------------------------------------

def test_increment_cov_at_zero_separation_is_increment_variance():
    p = FracOUParams(1.1, 0.8)
    tau = 0.3
    ref = 2.0 * (K.fou_var(p) - K.fou_cov(p, tau))
    assert abs(K.tfbm_increment_cov(p, tau, 0.0) - ref) <= 1e-14 * ref


def test_increment_cov_even_in_separation():
    p = FracOUParams(0.9, 1.0)
    a = K.tfbm_increment_cov(p, 0.5, 1.7)
    b = K.tfbm_increment_cov(p, 0.5, -1.7)
    assert abs(a - b) <= 1e-14 * abs(a)


def test_increment_spectral_nonnegative_and_even():
    p = FracOUParams(0.75, 1.0)
    kpos = np.linspace(0.3, 30.0, 100)
    f_pos = K.tfbm_increment_spectral(p, 0.4, kpos)
    assert K.tfbm_increment_spectral(p, 0.4, 0.0) >= 0.0
    assert np.all(f_pos >= 0.0)
    assert np.array_equal(f_pos, K.tfbm_increment_spectral(p, 0.4, -kpos))


def test_increment_variance_matches_spectral_integral():
    # var of a lag-tau increment = int_R (2 - 2 cos(k tau)) g(k) dk with
    # g the stationary spectral density; the monotone piece folds through
    # k = tan(theta), the oscillatory piece goes to the cosine transform
    from tplab import quad
    alpha, lam, tau = 0.75, 1.0, 0.4
    p = FracOUParams(alpha, lam)
    inv_two_pi = 1.0 / (2.0 * math.pi)

    def g(k):
        return inv_two_pi * (k * k + lam * lam) ** (-alpha)

    flat = quad.integrate_adaptive(
        lambda th: g(math.tan(th)) / math.cos(th) ** 2,
        0.0, 0.5 * math.pi, tol=1e-11)
    wavy = quad.fourier_cos_halfline(g, tau, tol=1e-11, decay_p=2.0 * alpha)
    ref = K.tfbm_increment_cov(p, tau, 0.0)
    assert abs(2.0 * 2.0 * (flat.value - wavy.value) - ref) <= 1e-7 * ref


# --- long-range dependence plateau ----------------------------------------

def test_plateau_bounds_and_monotone_limit():
    # strictly increasing while the variance is still growing; once it
    # saturates at 2 sigma^2 the plateau sits at exactly 1/2 in floats
    p = FracOUParams(1.25, 0.5)
    prev = 0.0
    for t in (0.1, 1.0, 10.0, 100.0, 400.0):
        pl = K.tfbm_lrd_plateau(p, t)
        assert 0.0 < pl < 0.5 + 1e-12
        assert pl >= prev
        assert pl > prev or t > 10.0
        prev = pl
    assert abs(K.tfbm_lrd_plateau(p, 400.0) - 0.5) <= 1e-12


def test_plateau_matches_exact_correlation_at_long_lag():
    # corr(B(t), B(t+tau)) at lam tau = 40 sits within 2% of the plateau
    p = FracOUParams(1.25, 0.5)
    t, tau = 1.0, 80.0
    corr = (K.tfbm_cov(p, t, t + tau)
            / math.sqrt(K.tfbm_var(p, t) * K.tfbm_var(p, t + tau)))
    plateau = K.tfbm_lrd_plateau(p, t)
    assert abs(corr - plateau) <= 0.02 * plateau


def test_plateau_needs_positive_time():
    with pytest.raises(DomainError):
        K.tfbm_lrd_plateau(FracOUParams(0.75, 1.0), 0.0)


def test_normalization_factor_documented_not_applied():
    p = FracOUParams(0.75, 1.0)
    assert K.ms_normalization_factor(p) == math.gamma(0.75) ** 2
    # the kernel itself is untouched by the factor
    assert abs(K.tfbm_var(p, 1.0)
               - 2.0 * (K.fou_var(p) - K.fou_cov(p, 1.0))) <= 1e-15


# --- gram matrices ----------------------------------------------------------

def test_gram_matches_pointwise_and_is_psd():
    p = FracOUParams(0.75, 0.5)
    times = np.linspace(0.0, 3.0, 31)
    g = K.tfbm_gram(p, times)
    assert g.shape == (31, 31)
    assert np.abs(g - g.T).max() <= 1e-15
    for i in (0, 7, 30):
        for j in (0, 12, 30):
            assert abs(g[i, j] - K.tfbm_cov(p, times[i], times[j])) <= 1e-12
    w = np.linalg.eigvalsh(g)
    assert w.min() >= -1e-10 * w.max()


# --- mixtures ----------------------------------------------------------------

def _mixture():
    return MixtureParams(((1.0, FracOUParams(0.7, 1.0)),
                          (0.7, FracOUParams(1.3, 0.5))))


def test_mixture_is_weighted_sum_of_components():
    m = _mixture()
    t, s = 1.7, 0.6
    ref = sum(b * b * K.tfbm_cov(p, t, s) for b, p in m.components)
    assert abs(K.mixed_cov(m, t, s) - ref) <= 1e-15
    ref_v = sum(b * b * K.tfbm_var(p, t) for b, p in m.components)
    assert abs(K.mixed_var(m, t) - ref_v) <= 1e-15


def test_mixture_gram_matches_pointwise():
    m = _mixture()
    times = np.linspace(0.0, 2.0, 9)
    g = K.mixed_gram(m, times)
    assert abs(g[3, 5] - K.mixed_cov(m, times[3], times[5])) <= 1e-13
    assert g[0, 0] == 0.0


def test_mixture_rejects_duplicate_indices():
    with pytest.raises(DomainError):
        MixtureParams(((1.0, FracOUParams(0.8, 1.0)),
                       (0.5, FracOUParams(0.8, 2.0))))


def test_mixture_rejects_nonpositive_weight():
    with pytest.raises(DomainError):
        MixtureParams(((0.0, FracOUParams(0.8, 1.0)),))
