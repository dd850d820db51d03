"""Adaptive quadrature and half-line cosine transforms.

Two public entry points:

    integrate_adaptive(f, a, b, tol)
        globally adaptive quadrature with a nested Gauss rule pair,
        b may be math.inf (geometric panel extension with an empirical
        tail extrapolation).

    fourier_cos_halfline(g, tau, tol, decay_p)
        I(tau) = int_0^inf g(k) cos(k tau) dk for a nonnegative amplitude
        g decaying like k^(-decay_p), decay_p > 1.  The half-line is cut at
        the zeros of cos(k tau); the alternating sequence of partial sums
        is accelerated with a repeated-averaging (Euler transform) table.

Tempered amplitudes make I(tau) exponentially small in tau while the
individual lobe integrals stay polynomially large, so for large tau the
float64 path is cancellation-limited.  When the requested tolerance lies
below that floor the same lobe/acceleration scheme is re-run in mpmath
with working precision sized to the observed cancellation, and the error
estimate comes from a second run at higher precision.

Both routines are pure and reentrant.
"""

import math
from dataclasses import dataclass
from heapq import heappush, heappop

import numpy as np

from .errors import DomainError, NonConvergence, SlowDecay

SUBDIVISION_CAP = 10_000

# Open (interior-node) rule pair: a 15-point Gauss-Legendre value estimate
# with the 7-point rule for the error.  leggauss nodes/weights are machine
# precision; open rules never sample the endpoints, which keeps integrable
# endpoint singularities out of harm's way.
_X7, _W7 = np.polynomial.legendre.leggauss(7)
_X15, _W15 = np.polynomial.legendre.leggauss(15)
_X7.flags.writeable = False
_X15.flags.writeable = False


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    subdivisions: int


def _rule_pair(f, a, b):
    """15-point value and |15pt - 7pt| error indicator on [a, b]."""
    h = 0.5 * (b - a)
    c = 0.5 * (a + b)
    i15 = h * math.fsum(w * f(c + h * x) for x, w in zip(_X15, _W15))
    i7 = h * math.fsum(w * f(c + h * x) for x, w in zip(_X7, _W7))
    return i15, abs(i15 - i7)


def _adaptive_finite(f, a, b, tol, cap):
    """Globally adaptive bisection on a finite interval.

    Returns (value, err, n_intervals); raises NonConvergence past cap.
    """
    val, err = _rule_pair(f, a, b)
    if err <= tol or b - a == 0.0:
        return val, err, 1
    # max-heap on the error indicator; counter breaks ties deterministically
    heap = [(-err, 0, a, b, val, err)]
    tick = 1
    total_err = err
    nseg = 1
    while total_err > tol:
        if nseg >= cap:
            value = math.fsum(seg[4] for seg in heap)
            raise NonConvergence(
                "subdivision cap %d hit on [%g, %g]" % (cap, a, b),
                partial=QuadResult(value, total_err, nseg))
        neg_e, _, lo, hi, v, e = heappop(heap)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # worst interval already at floating resolution: subdividing
            # further cannot reduce the estimate
            heappush(heap, (neg_e, tick, lo, hi, v, e))
            value = math.fsum(seg[4] for seg in heap)
            raise NonConvergence(
                "interval at floating resolution with err=%g > tol=%g"
                % (total_err, tol),
                partial=QuadResult(value, total_err, nseg))
        v1, e1 = _rule_pair(f, lo, mid)
        v2, e2 = _rule_pair(f, mid, hi)
        total_err += e1 + e2 - e
        heappush(heap, (-e1, tick, lo, mid, v1, e1))
        heappush(heap, (-e2, tick + 1, mid, hi, v2, e2))
        tick += 2
        nseg += 1
    value = math.fsum(seg[4] for seg in heap)
    return value, total_err, nseg


def _adaptive_to_inf(f, a, tol, cap):
    """[a, inf) by doubling panels with geometric tail extrapolation.

    Stops when the extrapolated remainder (ratio of the last two panel
    integrals, assumed to keep contracting) drops below tol/2.
    """
    k0 = max(1.0, abs(a) + 1.0)
    vals = []
    errs = []
    nseg = 0
    v, e, n = _adaptive_finite(f, a, k0, 0.25 * tol, cap)
    vals.append(v)
    errs.append(e)
    nseg += n
    lo, hi = k0, 2.0 * k0
    prev = None
    for j in range(200):
        panel_tol = 0.25 * tol / ((j + 2) * (j + 2))
        v, e, n = _adaptive_finite(f, lo, hi, panel_tol, cap - nseg)
        vals.append(v)
        errs.append(e)
        nseg += n
        if prev is not None and abs(prev) > 0.0:
            r = abs(v) / abs(prev)
            if r < 0.95:
                remainder = abs(v) * r / (1.0 - r)
                if remainder < 0.5 * tol:
                    return (math.fsum(vals),
                            math.fsum(errs) + remainder, nseg)
        if abs(v) == 0.0:
            return math.fsum(vals), math.fsum(errs), nseg
        prev = v
        lo, hi = hi, 2.0 * hi
    raise NonConvergence(
        "tail of [%g, inf) did not contract below tol=%g" % (a, tol),
        partial=QuadResult(math.fsum(vals), math.fsum(errs) + abs(v), nseg))


def integrate_adaptive(f, a, b, tol=1e-10):
    """Integrate f over [a, b], b possibly math.inf.

    f must be finite on the open interval; integrable endpoint
    singularities are tolerated because the rules are open, but the
    caller is responsible for substituting away anything stronger.
    Raises NonConvergence (with .partial) if the subdivision cap is hit.
    """
    if not tol > 0.0:
        raise DomainError("tol must be positive")
    if math.isinf(a):
        raise DomainError("lower limit must be finite")
    if b == a:
        return QuadResult(0.0, 0.0, 0)
    if math.isinf(b):
        v, e, n = _adaptive_to_inf(f, a, tol, SUBDIVISION_CAP)
    else:
        v, e, n = _adaptive_finite(f, a, b, tol, SUBDIVISION_CAP)
    return QuadResult(v, e, n)


# --- oscillatory half-line transform -----------------------------------


def _euler_diagonal(partials):
    """Repeated-averaging limit of a sequence of partial sums.

    Returns (limit, delta) where delta is the change introduced by the
    final averaging pass; for an alternating tail the diagonal converges
    geometrically and delta tracks the true error well.
    """
    row = list(partials)
    last = row[-1]
    delta = math.inf
    while len(row) > 1:
        row = [0.5 * (row[i] + row[i + 1]) for i in range(len(row) - 1)]
        delta = abs(row[-1] - last)
        last = row[-1]
    return last, delta


def _cos_lobes_float(g, tau, tol, decay_p, start, max_lobes):
    """Between-zeros lobe integrals of g(k)cos(k tau) from k=start.

    Returns (value, err, nseg, amp, converged); amp is the largest lobe
    magnitude, used by the caller to judge cancellation.
    """
    h = lambda k: g(k) * math.cos(k * tau)
    edges_gap = math.pi / tau
    first_zero = 0.5 * math.pi / tau
    while first_zero <= start:
        first_zero += edges_gap
    lo = start
    hi = first_zero
    partials = []
    lobes = []
    errs = []
    nseg = 0
    running = 0.0
    amp = 0.0
    for m in range(max_lobes):
        # floor the per-lobe tolerance at the float64 resolution of the
        # lobes seen so far; a cap hit below that floor still yields a
        # usable partial and the caller's cancellation logic takes over
        lobe_tol = max(tol / (8.0 * (m + 2.0) ** 1.2), amp * 1e-15)
        try:
            v, e, n = _adaptive_finite(h, lo, hi, lobe_tol, 512)
        except NonConvergence as exc:
            if exc.partial is None:
                raise
            v = exc.partial.value
            e = exc.partial.abs_error_estimate
            n = exc.partial.subdivisions
        nseg += n
        lobes.append(v)
        errs.append(e)
        running += v
        partials.append(running)
        amp = max(amp, abs(v))
        if m >= 8:
            value, delta = _euler_diagonal(partials)
            tail_c = abs(g(hi)) * hi ** decay_p
            tail_bound = tail_c * hi ** (1.0 - decay_p) / (decay_p - 1.0)
            est = delta + math.fsum(errs)
            if est < 0.5 * tol or (tail_bound < 0.5 * tol and delta < tol):
                return value, est, nseg, amp, True
            # cancellation floor of float64: no point piling on lobes
            if amp * 4e-15 > tol and m >= 16:
                return value, est, nseg, amp, False
        lo, hi = hi, hi + edges_gap
    value, delta = _euler_diagonal(partials)
    return value, delta + math.fsum(errs), nseg, amp, False


def _cos_lobes_mp(g, tau, tol, start, dps, max_lobes):
    """Same lobe/averaging scheme in mpmath working precision."""
    import mpmath as mp

    with mp.workdps(dps):
        mtau = mp.mpf(tau)
        hfun = lambda k: g(k) * mp.cos(k * mtau)
        gap = mp.pi / mtau
        first_zero = gap / 2
        while first_zero <= start:
            first_zero += gap
        lo = mp.mpf(start)
        hi = first_zero
        partials = []
        running = mp.mpf(0)
        target = mp.mpf(tol) / 4
        value = None
        for m in range(max_lobes):
            v = mp.quad(hfun, [lo, hi])
            running += v
            partials.append(running)
            if m >= 10:
                row = partials
                while len(row) > 1:
                    row = [(row[i] + row[i + 1]) / 2
                           for i in range(len(row) - 1)]
                prev_value = value
                value = row[0]
                if prev_value is not None and abs(value - prev_value) < target:
                    return float(value), m + 1
            lo, hi = hi, hi + gap
        raise NonConvergence(
            "oscillatory acceleration stalled at %d lobes (mp dps=%d)"
            % (max_lobes, dps))


def fourier_cos_halfline(g, tau, tol=1e-10, decay_p=2.0, start=0.0):
    """int_start^inf g(k) cos(k tau) dk, default start=0.

    g must be a nonnegative amplitude decaying at least like k^(-decay_p)
    with decay_p > 1 (needed both for the tau=0 reduction and for the
    analytic tail bound).  Even in tau: |tau| is used.  g is also called
    with mpmath arguments on the high-precision path, so it should be
    written with generic arithmetic (**, +, abs), not numpy-only ops.

    Raises SlowDecay when the tail bound cannot meet tol, NonConvergence
    when acceleration stalls.
    """
    if not tol > 0.0:
        raise DomainError("tol must be positive")
    if not decay_p > 1.0:
        raise DomainError("decay_p must exceed 1 for an integrable tail")
    tau = abs(tau)
    if tau == 0.0:
        return integrate_adaptive(g, start, math.inf, tol)

    value, est, nseg, amp, ok = _cos_lobes_float(
        g, tau, tol, decay_p, start, max_lobes=160)
    floor = amp * 4e-15
    if ok and floor <= tol:
        return QuadResult(value, est, nseg)
    if floor <= tol:
        # decay too slow for the lobe budget rather than cancellation
        raise SlowDecay(
            "tail bound still above tol=%g after 160 lobes" % tol,
            partial=QuadResult(value, est, nseg))

    # cancellation-limited: re-run in mpmath with precision covering the
    # observed amplitude-to-value ratio, estimate error from a second,
    # higher-precision run
    digits_lost = math.log10(amp / tol) if amp > 0 else 0.0
    dps = int(math.ceil(digits_lost)) + 12
    v1, n1 = _cos_lobes_mp(g, tau, tol, start, dps, max_lobes=700)
    v2, n2 = _cos_lobes_mp(g, tau, tol, start, dps + 8, max_lobes=700)
    err = abs(v1 - v2) + abs(v2) * 1e-15
    return QuadResult(v2, max(err, 0.25 * tol * 1e-3), nseg + n1 + n2)


def power_sin2_halfline(exponent, tol=1e-10):
    """int_0^inf k^(-exponent) sin^2(k/2) dk for 1 < exponent < 3.

    Near k=0 the sin^2 factor regularizes the power; the [0,1] piece is
    summed exactly from the sine power series (no cancellation), the
    [1, inf) piece splits sin^2(k/2) = (1 - cos k)/2 into a closed-form
    power tail and an oscillatory lobe sum.
    """
    p = float(exponent)
    if not 1.0 < p < 3.0:
        raise DomainError("exponent must lie in (1, 3), got %g" % p)
    if not tol > 0.0:
        raise DomainError("tol must be positive")
    # [0,1]: sin^2(k/2) = (1 - cos k)/2 = sum_{m>=1} (-1)^(m+1) k^(2m)/(2 (2m)!)
    head = 0.0
    m = 1
    while True:
        term = (-1.0) ** (m + 1) / (2.0 * math.factorial(2 * m)
                                    * (2.0 * m - p + 1.0))
        head += term
        if abs(term) < 1e-17:
            break
        m += 1
    # [1,inf): (1/2) int k^-p dk  -  (1/2) int k^-p cos k dk
    flat = 0.5 / (p - 1.0)
    osc = fourier_cos_halfline(lambda k: k ** (-p), 1.0, tol=tol,
                               decay_p=p, start=1.0)
    return QuadResult(head + flat - 0.5 * osc.value,
                      0.5 * osc.abs_error_estimate + 1e-16,
                      osc.subdivisions)
