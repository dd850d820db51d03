"""Tempered fractional Gaussian noise: the stationary noise obtained
from the moving-average process by differentiation and tempering.

The building block is the cross-covariance

    C^(mu,nu)(tau) = e^(-lambda tau) tau^(mu+nu-1)
                     U(nu, mu+nu, 2 lambda tau) / Gamma(mu),  tau > 0

with the first index attached to the later time, so index exchange
pairs with lag reversal: C^(mu,nu)(t,s) = C^(nu,mu)(s,t).  The
tau -> 0+ limit is Gamma(mu+nu-1)/(Gamma(mu) Gamma(nu)
(2 lambda)^(mu+nu-1)) for mu+nu > 1, and C^(alpha,alpha) equals the
stationary fou kernel.

The full noise covariance combines four blocks at mu, nu in
{alpha-1, alpha}, which requires alpha > 1 for the displays to exist.
"""

import math

from .. import specfun
from ..errors import DomainError


def tfgn_cross_cov(mu, nu, lam, tau):
    """C^(mu,nu)(tau) for mu, nu, lam, tau all positive."""
    mu, nu, lam, tau = float(mu), float(nu), float(lam), float(tau)
    if mu <= 0.0:
        raise DomainError("tfgn_cross_cov requires mu > 0, got %g" % mu)
    if nu <= 0.0:
        raise DomainError("tfgn_cross_cov requires nu > 0, got %g" % nu)
    if lam <= 0.0:
        raise DomainError("lambda must be positive, got %g" % lam)
    if tau <= 0.0:
        raise DomainError("tfgn_cross_cov requires tau > 0, got %g" % tau)
    u = specfun.kummer_u(nu, mu + nu, 2.0 * lam * tau).value
    return (math.exp(-lam * tau) * tau ** (mu + nu - 1.0) * u
            / math.gamma(mu))


def _block_limit(mu, nu, lam):
    # tau -> 0+ limit of C^(mu,nu), finite for mu+nu > 1
    return (math.gamma(mu + nu - 1.0)
            / (math.gamma(mu) * math.gamma(nu)
               * (2.0 * lam) ** (mu + nu - 1.0)))


def tfgn_var(alpha, lam):
    """Pointwise variance of the noise, finite only for alpha > 3/2
    (all four blocks of the decomposition must have a tau -> 0 limit)."""
    alpha = float(alpha)
    if not alpha > 1.5:
        raise DomainError(
            "the noise has a pointwise variance only for alpha > 3/2, "
            "got %g" % alpha)
    if lam <= 0.0:
        raise DomainError("lambda must be positive, got %g" % lam)
    return (_block_limit(alpha - 1.0, alpha - 1.0, lam)
            - 2.0 * lam * _block_limit(alpha - 1.0, alpha, lam)
            + lam * lam * _block_limit(alpha, alpha, lam))


def tfgn_cov(alpha, lam, tau):
    """Covariance of the stationary noise at lag tau != 0:

    C(tau) = C^(a-1,a-1) - lambda C^(a-1,a) - lambda C^(a,a-1)
             + lambda^2 C^(a,a)

    Even in tau.  Requires alpha > 1 (the a-1 blocks must exist) and
    tau != 0 (the noise has no pointwise variance for alpha < 3/2).
    """
    alpha = float(alpha)
    if not alpha > 1.0:
        raise DomainError(
            "the noise covariance decomposition needs alpha > 1, got %g"
            % alpha)
    tau = abs(float(tau))
    if tau == 0.0:
        raise DomainError("the noise covariance is evaluated at tau != 0")
    return (tfgn_cross_cov(alpha - 1.0, alpha - 1.0, lam, tau)
            - lam * tfgn_cross_cov(alpha - 1.0, alpha, lam, tau)
            - lam * tfgn_cross_cov(alpha, alpha - 1.0, lam, tau)
            + lam * lam * tfgn_cross_cov(alpha, alpha, lam, tau))
