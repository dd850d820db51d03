"""Tempered fractional Brownian motion as the reduced stationary
process: B(t) = X(t) - X(0) for X with the fou kernel, so

    C(t,s) = C_fou(t-s) - C_fou(t) - C_fou(s) + sigma^2

with C_fou(0) = sigma^2.  This four-term combination is the primary
route everywhere; the lag-dependent coefficient decomposition

    C(t,s) = (c_t |t|^(2H) + c_s |s|^(2H) - c_(t-s) |t-s|^(2H)) / 2

is kept as a secondary route for identity testing only, since it has a
removable singularity at zero lag.
"""

import math

import numpy as np

from .. import specfun
from ..errors import DomainError
from . import fou
from .params import FracOUParams


def tfbm_cov(p: FracOUParams, t, s):
    """Covariance of the reduced process; 0 whenever t or s is 0."""
    c = (fou.fou_cov(p, t - s) - fou.fou_cov(p, t) - fou.fou_cov(p, s)
         + fou.fou_var(p))
    return c


def tfbm_var(p: FracOUParams, t):
    """Variance 2(sigma^2 - C_fou(t)); 0 at t=0, to 2 sigma^2 at
    infinity, crossing sigma^2 where C_fou(t) = sigma^2/2."""
    return 2.0 * (fou.fou_var(p) - fou.fou_cov(p, t))


def tfbm_ct_coefficient(p: FracOUParams, t):
    """Coefficient c_t with c_t |t|^(2H) equal to the variance at t:

    c_t = 2 Gamma(2H) / (Gamma(H+1/2)^2 (2 lambda |t|)^(2H))
          - (2/(sqrt(pi) Gamma(H+1/2))) (2 lambda |t|)^(-H) K_H(lambda |t|)

    As lambda|t| -> 0 this tends to Gamma(1-2H) cos(H pi) / (H pi), the
    untempered self-similarity constant; as lambda|t| -> infinity the
    Bessel term dies and c_t |t|^(2H) -> 2 sigma^2.
    """
    p.require_hurst_in_unit()
    if t == 0.0:
        raise DomainError("c_t is undefined at t = 0")
    h = p.hurst
    x = 2.0 * p.lam * abs(t)
    lead = 2.0 * math.gamma(2.0 * h) / (math.gamma(h + 0.5) ** 2 * x ** (2.0 * h))
    bes = specfun.bessel_k(h, p.lam * abs(t)).value
    tail = 2.0 / (math.sqrt(math.pi) * math.gamma(h + 0.5)) * x ** -h * bes
    return lead - tail


def tfbm_cov_from_ct(p: FracOUParams, t, s):
    """Secondary covariance route through the c_t decomposition."""

    def piece(u):
        if u == 0.0:
            return 0.0
        return tfbm_ct_coefficient(p, u) * abs(u) ** (2.0 * p.hurst)

    return 0.5 * (piece(t) + piece(s) - piece(t - s))


def tfbm_increment_cov(p: FracOUParams, lag_tau, t_minus_s):
    """Covariance of increments over lag tau at separation d = t-s:

    2 C_fou(d) - C_fou(d + tau) - C_fou(d - tau)

    Depends on (t,s) only through d; even in d; at d=0 equals the
    increment variance 2(sigma^2 - C_fou(tau)).
    """
    d = t_minus_s
    return (2.0 * fou.fou_cov(p, d) - fou.fou_cov(p, d + lag_tau)
            - fou.fou_cov(p, d - lag_tau))


def tfbm_increment_spectral(p: FracOUParams, lag_tau, k):
    """Spectral density of the lag-tau increment process:

    (2 - 2 cos(k tau)) (k^2 + lambda^2)^(-alpha) / (2 pi) >= 0
    """
    k = np.asarray(k, dtype=float)
    out = (2.0 - 2.0 * np.cos(k * lag_tau)) * fou.fou_spectral(p, k)
    return float(out) if out.ndim == 0 else out


def tfbm_lrd_plateau(p: FracOUParams, t):
    """Long-lag limit of the correlation corr(B(t), B(t+tau)), tau ->
    infinity, at fixed t:

        (1/2) sqrt(var(t) / (2 sigma^2))  in (0, 1/2)

    Nonzero for every t > 0, which is the long-memory signature of the
    reduced process; tends to 1/2 as t -> infinity.
    """
    if not t > 0.0:
        raise DomainError("plateau needs t > 0, got %g" % t)
    return 0.5 * math.sqrt(tfbm_var(p, t) / (2.0 * fou.fou_var(p)))


def ms_normalization_factor(p: FracOUParams):
    """Multiplier Gamma(H + 1/2)^2 converting this kernel family to the
    moving-average normalization common elsewhere in the literature.

    Provided as a documented constant; never applied silently.
    """
    return math.gamma(p.alpha) ** 2


def tfbm_gram(p: FracOUParams, times):
    """Dense covariance matrix over a time grid, vectorized."""
    times = np.asarray(times, dtype=float)
    lags = times[:, None] - times[None, :]
    c_lag = fou.cov_alpha_grid(p.alpha, p.lam, lags)
    c_t = fou.fou_cov_values(p, times)
    return c_lag - c_t[:, None] - c_t[None, :] + fou.fou_var(p)
