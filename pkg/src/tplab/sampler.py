"""Exact and spectral Gaussian path synthesis with reproducible
substream seeding.

Exact sampling builds the dense Gram matrix from the kernel routines,
Cholesky-factorizes it (with an adaptive diagonal jitter ladder for
matrices at the edge of numerical rank), and multiplies standard-normal
draws.  Stationary-increment paths can instead be synthesized by
circulant embedding of the increment covariance and cumulative
summation.

Every path is driven by its own counter-based RNG stream keyed by a
substream seed derived from (master seed, path index), so generation is
embarrassingly parallel and the results are independent of execution
order and worker count.
"""

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError, EmbeddingFailure, EmbeddingWarning, NotPSD
from .kernels import fou, mixed, tfbm, tfgn, tmbm, twoindex
from .kernels.params import (FracOUParams, HurstProfile, MixtureParams,
                             TmbmParams, TwoIndexParams)

RNG_NAME = "philox4x64"
MAX_EXACT_N = 4096

FAMILIES = ("fou", "tfbm", "mixed", "tfbm2", "tmbm", "tfgn")

_PARAM_TYPES = {
    "fou": FracOUParams,
    "tfbm": FracOUParams,
    "mixed": MixtureParams,
    "tfbm2": TwoIndexParams,
    "tmbm": TmbmParams,
    "tfgn": FracOUParams,
}

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class TimeGrid:
    t0: float
    dt: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "n", int(self.n))
        if not self.dt > 0.0:
            raise DomainError("dt must be positive, got %g" % self.dt)
        if self.n < 1:
            raise DomainError("n must be at least 1, got %d" % self.n)
        if not math.isfinite(self.t0 + self.n * self.dt):
            raise DomainError("grid extent overflows floating range")

    def times(self):
        return self.t0 + self.dt * np.arange(self.n)


@dataclass(frozen=True)
class ProcessDescriptor:
    """Family tag plus its parameter object; params may be None for
    paths deserialized from files (family tag only)."""

    family: str
    params: object = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(
                "unknown family %r; expected one of %s"
                % (self.family, ", ".join(FAMILIES)))
        if self.params is not None:
            want = _PARAM_TYPES[self.family]
            if not isinstance(self.params, want):
                raise DomainError(
                    "family %r needs %s parameters"
                    % (self.family, want.__name__))

    def tempering_rate(self):
        """Largest tempering rate present, or None if parameters are
        not attached; used by estimator regime checks."""
        p = self.params
        if p is None:
            return None
        if isinstance(p, MixtureParams):
            return max(c.lam for _, c in p.components)
        return p.lam


@dataclass(frozen=True)
class GaussianPath:
    grid: TimeGrid
    values: np.ndarray = field(repr=False)
    process: Optional[ProcessDescriptor]
    seed: int
    method: str
    jitter: float = 0.0
    rng_name: str = RNG_NAME


def derive_substream_seed(master, path_index):
    """Injective 64-bit substream key for (master, path_index).

    The affine pre-mix master + (i+1)*odd is injective in i modulo
    2^64 and the avalanche finalizer is a bijection, so distinct path
    indices under one master never collide.
    """
    z = (int(master) + (int(path_index) + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


def _rng_for(seed):
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK64))


def _worker_count():
    raw = os.environ.get("TPLAB_THREADS", "")
    try:
        w = int(raw)
    except ValueError:
        w = 0
    if w < 1:
        w = min(8, os.cpu_count() or 1)
    return w


def _indexed_map(fn, count):
    """fn(i) for i in range(count), order-stable, optionally threaded.

    Worker count changes scheduling only; the output list is assembled
    by index, so results are identical for any TPLAB_THREADS.
    """
    workers = _worker_count()
    if workers == 1 or count < 2:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


# --- Gram assembly ------------------------------------------------------


def _stationary_gram(cov_of_lag, grid):
    """Toeplitz Gram from a vectorized lag-covariance function."""
    lags = grid.dt * np.arange(grid.n)
    row = np.asarray(cov_of_lag(lags), dtype=float)
    idx = np.abs(np.arange(grid.n)[:, None] - np.arange(grid.n)[None, :])
    return row[idx]


def build_gram(process: ProcessDescriptor, grid: TimeGrid):
    """Dense covariance matrix of the family on the grid."""
    if process.params is None:
        raise DomainError("sampling needs parameter values, not just a "
                          "family tag")
    p = process.params
    times = grid.times()
    if process.family == "fou":
        return _stationary_gram(lambda lg: fou.fou_cov_values(p, lg), grid)
    if process.family == "tfbm":
        return tfbm.tfbm_gram(p, times)
    if process.family == "mixed":
        return mixed.mixed_gram(p, times)
    if process.family == "tfbm2":
        def row(lags):
            return np.array([twoindex.twoindex_cov(p, lg).value
                             for lg in lags])
        return _stationary_gram(row, grid)
    if process.family == "tmbm":
        return tmbm.tmbm_gram(p.profile, p.lam, times)
    if process.family == "tfgn":
        var = tfgn.tfgn_var(p.alpha, p.lam)

        def row(lags):
            out = np.empty(len(lags))
            for i, lg in enumerate(lags):
                out[i] = var if lg == 0.0 else tfgn.tfgn_cov(
                    p.alpha, p.lam, lg)
            return out
        return _stationary_gram(row, grid)
    raise DomainError("unsupported family %r" % (process.family,))


def _cholesky_with_jitter(gram):
    """Lower factor plus the diagonal jitter that made it succeed.

    Ladder: 1e-14 * mean diagonal, stepping by 10 up to the cap
    1e-10 * trace/n.  Exceeding the cap means the kernel produced a
    genuinely indefinite matrix, which is a bug, not a user error.
    """
    n = gram.shape[0]
    mean_diag = float(np.trace(gram)) / n
    if mean_diag <= 0.0:
        raise NotPSD("Gram trace is not positive")
    try:
        return np.linalg.cholesky(gram), 0.0
    except np.linalg.LinAlgError:
        pass
    jit = 1e-14 * mean_diag
    cap = 1e-10 * mean_diag
    while jit <= cap * (1.0 + 1e-12):
        try:
            factor = np.linalg.cholesky(gram + jit * np.eye(n))
            return factor, jit
        except np.linalg.LinAlgError:
            jit *= 10.0
    raise NotPSD(
        "Cholesky failed with jitter up to %g (cap 1e-10*trace/n); the "
        "kernel Gram matrix is not positive semidefinite" % cap)


def sample_exact(process: ProcessDescriptor, grid: TimeGrid, seed,
                 n_paths):
    """Exact Gaussian paths through dense Cholesky factorization.

    Grid points with zero kernel variance (the pinned origin of the
    reduced families) are excluded from the factorization and set to
    exactly 0 in every path.
    """
    if grid.n > MAX_EXACT_N:
        raise DomainError(
            "exact sampling is capped at n = %d points, got %d"
            % (MAX_EXACT_N, grid.n))
    if n_paths < 1:
        raise DomainError("n_paths must be at least 1")
    gram = build_gram(process, grid)
    live = np.diag(gram) > 0.0
    factor, jit = _cholesky_with_jitter(gram[np.ix_(live, live)])
    n_live = int(live.sum())

    def one(i):
        sub = derive_substream_seed(seed, i)
        z = _rng_for(sub).standard_normal(n_live)
        values = np.zeros(grid.n)
        values[live] = factor @ z
        return GaussianPath(grid, values, process, sub, "cholesky",
                            jitter=jit)

    return _indexed_map(one, int(n_paths))


# --- circulant-embedding route for stationary increments ----------------


def _embedding_eigenvalues(r):
    """Eigenvalues of the even-extension circulant of lag covariances
    r_0..r_(m-1); clamps small negatives, fails on material ones."""
    m = len(r)
    circ = np.concatenate([r, r[m - 2:0:-1]])
    eig = np.fft.fft(circ).real
    top = float(eig.max())
    if eig.min() < -1e-8 * top:
        raise EmbeddingFailure(
            "embedding eigenvalues reach %g (most negative) against "
            "maximum %g" % (float(eig.min()), top))
    if eig.min() < 0.0:
        warnings.warn(
            "clamped %d slightly negative embedding eigenvalues"
            % int((eig < 0.0).sum()), EmbeddingWarning)
        eig = np.maximum(eig, 0.0)
    return eig


def _circulant_normal(eig, rng):
    """One draw of the first half of a stationary circulant sequence."""
    big = len(eig)
    z = rng.standard_normal(big)
    half = big // 2
    spec = np.zeros(big, dtype=complex)
    spec[0] = math.sqrt(eig[0]) * z[0]
    spec[half] = math.sqrt(eig[half]) * z[1]
    ks = np.arange(1, half)
    re = z[2::2][:half - 1]
    im = z[3::2][:half - 1]
    spec[ks] = np.sqrt(0.5 * eig[ks]) * (re + 1j * im)
    spec[big - ks] = np.conj(spec[ks])
    return np.fft.fft(spec).real / math.sqrt(big)


def sample_tfbm_spectral(p: FracOUParams, grid: TimeGrid, seed):
    """Reduced-process path via circulant embedding of the stationary
    increment covariance, then cumulative summation from the pinned
    origin.  Falls back to exact sampling (with a warning) if the
    embedding is not nonnegative definite.
    """
    if grid.t0 != 0.0:
        raise DomainError("spectral synthesis needs a grid starting at "
                          "t0 = 0, got %g" % grid.t0)
    process = ProcessDescriptor("tfbm", p)
    if grid.n == 1:
        return GaussianPath(grid, np.zeros(1), process,
                            derive_substream_seed(seed, 0),
                            "spectral_increments")
    m = grid.n - 1
    c = fou.fou_cov_values(p, grid.dt * np.arange(m + 1))
    j = np.arange(m)
    r = 2.0 * c[j] - c[j + 1] - c[np.abs(j - 1)]
    sub = derive_substream_seed(seed, 0)
    if m == 1:
        inc = np.array([math.sqrt(r[0])]) * _rng_for(sub).standard_normal(1)
    else:
        try:
            eig = _embedding_eigenvalues(r)
        except EmbeddingFailure as exc:
            warnings.warn(
                "circulant embedding failed (%s); falling back to exact "
                "sampling" % exc, EmbeddingWarning)
            return sample_exact(process, grid, seed, 1)[0]
        inc = _circulant_normal(eig, _rng_for(sub))[:m]
    values = np.concatenate([[0.0], np.cumsum(inc)])
    return GaussianPath(grid, values, process, sub, "spectral_increments")
