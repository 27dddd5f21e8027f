"""Numerical summation of divergent one-variable series along rays.

The pipeline: divide the coefficients a_n by Gamma(1 + n/k) (Borel
transform of order k), continue the resulting convergent series along a
ray by diagonal rational approximants, and integrate it back with the
kernel ``k t^{-k} exp(-(tau/t)^k) tau^{k-1}``.  Specializing the
coefficients of a germ-power expansion at a point and evaluating the germ
there reduces germ-relative summation to this one-variable machinery.

Error reporting is split and mandatory: the quadrature error is the
accumulated panel-refinement estimate, the continuation error is the
difference between two consecutive approximant orders propagated through
the same integral.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .errors import ContinuationError, SectorError, SingularRayError
from .scalars import DEFAULT_PREC_BITS, to_mpc
from .transforms import _poly_roots

TWO_PI = 2 * math.pi


def _resolve_prec(prec):
    return int(prec) if prec else DEFAULT_PREC_BITS


def _angdiff(a, b):
    """Signed angular difference a - b wrapped to (-pi, pi]."""
    d = mpmath.mpf(a) - mpmath.mpf(b)
    return d - TWO_PI * mpmath.floor((d + mpmath.pi) / TWO_PI)


@dataclass(frozen=True)
class OneVarSeries:
    """Plain coefficient list a_0..a_{M-1} of a (possibly divergent) series."""
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    @classmethod
    def from_expansion(cls, expansion, point):
        """Specialize a germ-power expansion at a point: a_n = g_n(point)."""
        return cls(expansion.specialize(point))


@dataclass(frozen=True)
class BorelSeries:
    """Coefficients b_n = a_n / Gamma(1 + n/k)."""
    k: float
    coeffs: tuple

    def __len__(self):
        return len(self.coeffs)


def borel_transform(series, k, prec=None):
    """Divide the n-th coefficient by Gamma(1 + n/k), in working precision."""
    if not k > 0:
        raise ValueError("summability index k must be positive")
    coeffs = series.coeffs if isinstance(series, OneVarSeries) else tuple(series)
    prec = _resolve_prec(prec)
    with mp.workprec(prec):
        kk = mpmath.mpf(k)
        out = tuple(to_mpc(a) / mpmath.gamma(1 + mpmath.mpf(n) / kk)
                    for n, a in enumerate(coeffs))
    return BorelSeries(float(k), out)


# -- rational (Pade-type) continuation ---------------------------------------

class RationalApproximant:
    """Ratio of two polynomials matching a Taylor series to order n+m."""

    __slots__ = ("num", "den", "prec", "_pole_cache")

    def __init__(self, num, den, prec):
        self.num = tuple(num)
        self.den = tuple(den)
        self.prec = prec
        self._pole_cache = None

    @property
    def order(self):
        return (len(self.num) - 1, len(self.den) - 1)

    def __call__(self, tau):
        tau = to_mpc(tau)
        return _horner(self.num, tau) / _horner(self.den, tau)

    def raw_poles(self):
        return _clustered_roots(self.den, self.prec)

    def zeros(self):
        return _clustered_roots(self.num, self.prec)

    def filtered_poles(self, rel_tol=1e-6):
        """Poles with Froissart doublets (pole ~ nearby zero) removed."""
        if self._pole_cache is None:
            zeros = [z for z, _ in self.zeros()]
            kept = []
            for p, mult in self.raw_poles():
                close = any(abs(p - z) < rel_tol * max(1, abs(p)) for z in zeros)
                if not close:
                    kept.append((p, mult))
            self._pole_cache = tuple(kept)
        return self._pole_cache


def _horner(coeffs, x):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _clustered_roots(coeffs, prec):
    # drop numerically-negligible high-order coefficients before root finding
    with mp.workprec(prec):
        mags = [abs(to_mpc(c)) for c in coeffs]
        top = max(mags) if mags else mpmath.mpf(0)
        if top == 0:
            return []
        cut = top * mpmath.mpf(2) ** (-(prec // 2))
        hi = len(coeffs) - 1
        while hi > 0 and mags[hi] < cut:
            hi -= 1
        return _poly_roots(list(coeffs[:hi + 1]), prec)


def _pade(coeffs, m, prec):
    """Diagonal-type approximant of denominator degree m; None if degenerate."""
    n = m
    if n + m + 1 > len(coeffs):
        return None
    if m == 0:
        return RationalApproximant([to_mpc(coeffs[0])], [mpmath.mpc(1)], prec)
    with mp.workprec(2 * prec):
        c = [to_mpc(x) for x in coeffs]
        A = mpmath.zeros(m)
        rhs = mpmath.matrix(m, 1)
        for i in range(m):
            for j in range(m):
                idx = n + i - j
                A[i, j] = c[idx] if idx >= 0 else 0
            rhs[i] = -c[n + 1 + i]
        try:
            sol = mpmath.lu_solve(A, rhs)
        except ZeroDivisionError:
            return None
        den = [mpmath.mpc(1)] + [sol[j] for j in range(m)]
        if any(mpmath.isnan(abs(x)) or mpmath.isinf(abs(x)) for x in den):
            return None
        num = []
        for i in range(n + 1):
            acc = mpmath.mpc(0)
            for j in range(0, min(i, m) + 1):
                acc += den[j] * c[i - j]
            num.append(acc)
    return RationalApproximant(num, den, prec)


def build_approximant(coeffs, m=None, prec=None):
    """Best feasible rational approximant with denominator degree <= m.

    Degenerate Toeplitz systems (exactly rational inputs of lower true
    degree) reduce the requested degree until the solve succeeds.
    """
    prec = _resolve_prec(prec)
    if m is None:
        m = (len(coeffs) - 1) // 2
    m = max(0, min(m, (len(coeffs) - 1) // 2))
    for mm in range(m, -1, -1):
        appr = _pade(coeffs, mm, prec)
        if appr is not None:
            return appr
    raise RuntimeError("unreachable: degree-0 approximant always exists")


@dataclass(frozen=True)
class RayContinuation:
    """Samples of the continued Borel transform along a ray, plus evaluators."""
    direction: float
    radii: tuple
    values: tuple
    errors: tuple
    method: str
    poles: tuple
    prec: int
    _hi: object
    _lo: object

    def evaluate(self, tau):
        return self._hi(tau)

    def evaluate_low(self, tau):
        return self._lo(tau) if self._lo is not None else self._hi(tau)

    def to_json(self):
        return {
            "direction": self.direction,
            "method": self.method,
            "samples": [{"radius": float(r),
                         "value": {"re": float(v.real), "im": float(v.imag)},
                         "error": float(e)}
                        for r, v, e in zip(self.radii, self.values, self.errors)],
            "poles": [{"re": float(to_mpc(p).real), "im": float(to_mpc(p).imag)}
                      for p in self.poles],
        }


def _matched_poles(hi, lo, rel_tol=0.2):
    """Poles of hi confirmed by a nearby pole of lo (cross-order stability)."""
    if lo is None:
        return tuple(p for p, _ in hi.filtered_poles())
    lo_poles = [p for p, _ in lo.filtered_poles()]
    out = []
    for p, _ in hi.filtered_poles():
        if lo_poles and min(abs(p - q) for q in lo_poles) <= rel_tol * max(1, abs(p)):
            out.append(p)
    return tuple(out)


def continue_on_ray(b, theta, radii, method="pade", delta_min=0.15, prec=None):
    """Continue the Borel series along arg tau = theta, sampling at the radii.

    The default method evaluates the diagonal rational approximant; the
    per-sample error estimate is the difference against the approximant of
    one lower order.  A cross-order-stable pole within angular distance
    ``delta_min`` of the ray raises :class:`SingularRayError`.

    The alternative ``method="taylor"`` re-expands the truncated series
    stepwise along the ray, with steps at most 1/3 of the distance to the
    nearest detected pole.
    """
    coeffs = b.coeffs
    if len(coeffs) < 8:
        raise ValueError("need at least 8 Borel coefficients to continue")
    radii = tuple(float(r) for r in radii)
    if any(r <= 0 for r in radii) or any(b2 <= a2 for a2, b2 in zip(radii, radii[1:])):
        raise ValueError("radii must be positive and strictly increasing")
    prec = _resolve_prec(prec)
    with mp.workprec(prec):
        theta = float(theta)
        m_star = (len(coeffs) - 1) // 2
        hi = build_approximant(coeffs, m_star, prec)
        lo = build_approximant(coeffs, m_star - 1, prec) if m_star >= 1 else None
        poles = _matched_poles(hi, lo)
        for p in poles:
            if abs(_angdiff(mpmath.arg(p), theta)) < delta_min:
                raise SingularRayError(
                    f"stable pole at {complex(to_mpc(p))} within "
                    f"{delta_min} rad of the ray arg tau = {theta:.6g}",
                    pole=to_mpc(p))
        phase = mpmath.expjpi(mpmath.mpf(theta) / mpmath.pi)
        values, errors = [], []
        if method == "pade":
            for r in radii:
                tau = r * phase
                v = hi(tau)
                values.append(v)
                errors.append(float(abs(v - lo(tau))) if lo is not None else 0.0)
        elif method == "taylor":
            for r in radii:
                v, e = _taylor_continue(coeffs, theta, r, poles, prec)
                values.append(v)
                errors.append(e)
        else:
            raise ValueError(f"unknown continuation method {method!r}")
    return RayContinuation(direction=theta, radii=radii, values=tuple(values),
                           errors=tuple(errors), method=method, poles=poles,
                           prec=prec, _hi=hi, _lo=lo)


def _taylor_continue(coeffs, theta, r, poles, prec):
    """Stepwise re-expansion of the truncated Taylor series along the ray."""
    with mp.workprec(prec):
        cur = [to_mpc(c) for c in coeffs]
        M = len(cur)
        phase = mpmath.expjpi(mpmath.mpf(theta) / mpmath.pi)
        center = mpmath.mpc(0)
        target = r * phase
        while True:
            remaining = abs(target - center)
            dist = min((abs(p - center) for p in poles), default=mpmath.inf)
            step = min(remaining, dist / 3)
            if step >= remaining:
                break
            center2 = center + step * phase
            delta = center2 - center
            new = [mpmath.mpc(0)] * M
            # binomial re-centering of the truncated polynomial
            for j in range(M):
                acc = mpmath.mpc(0)
                binom = mpmath.mpf(1)
                dpow = mpmath.mpc(1)
                for i in range(j, M):
                    acc += cur[i] * binom * dpow
                    dpow *= delta
                    binom = binom * (i + 1) / (i + 1 - j)
                new[j] = acc
            cur = new
            center = center2
        z = target - center
        v = _horner(cur, z)
        v_short = _horner(cur[:-2], z) if M > 2 else v
        return v, float(abs(v - v_short))


# -- Laplace integral ---------------------------------------------------------

@dataclass(frozen=True)
class SumResult:
    """A numeric germ-k-sum (or plain k-sum) evaluation with split errors."""
    t: object
    k: float
    theta: float
    value: object
    quadrature_error: float
    continuation_error: float
    tail_cut: float

    @property
    def total_error(self):
        return self.quadrature_error + self.continuation_error

    def to_json(self):
        t = to_mpc(self.t)
        v = to_mpc(self.value)
        return {
            "t": {"re": float(t.real), "im": float(t.imag)},
            "k": self.k,
            "theta": self.theta,
            "value": {"re": float(v.real), "im": float(v.imag)},
            "quadrature_error": self.quadrature_error,
            "continuation_error": self.continuation_error,
            "tail_cut": self.tail_cut,
        }


_GL_CACHE = {}
_GL_POINTS = 20


def _gl_nodes(prec):
    """Gauss-Legendre nodes/weights on [-1, 1] at the given precision."""
    key = (_GL_POINTS, prec)
    if key not in _GL_CACHE:
        n = _GL_POINTS
        with mp.workprec(prec + 16):
            nodes = []
            for i in range(1, n // 2 + 1):
                x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (n + mpmath.mpf(1) / 2))
                for _ in range(60):
                    p0, p1 = mpmath.mpf(1), x
                    for j in range(2, n + 1):
                        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                    dp = n * (x * p1 - p0) / (x * x - 1)
                    dx = p1 / dp
                    x -= dx
                    if abs(dx) < mpmath.mpf(2) ** (-prec - 8):
                        break
                w = 2 / ((1 - x * x) * dp * dp)
                nodes.append((x, w))
                nodes.append((-x, w))
        _GL_CACHE[key] = tuple(nodes)
    return _GL_CACHE[key]


def _gl_panel(f, a, b, nodes):
    half = (b - a) / 2
    mid = (a + b) / 2
    acc = mpmath.mpc(0)
    for x, w in nodes:
        acc += w * f(mid + half * x)
    return acc * half


def _adaptive(f, a, b, tol, nodes, depth=0):
    whole = _gl_panel(f, a, b, nodes)
    mid = (a + b) / 2
    split = _gl_panel(f, a, mid, nodes) + _gl_panel(f, mid, b, nodes)
    est = abs(whole - split)
    if est <= tol or depth >= 24:
        return split, est
    left, el = _adaptive(f, a, mid, tol / 2, nodes, depth + 1)
    right, er = _adaptive(f, mid, b, tol / 2, nodes, depth + 1)
    return left + right, el + er


_KERNEL_FLOOR = mpmath.mpf("1e-20")


def laplace_sum(rc, k, t, derivative=False, eps=1e-16, prec=None,
                max_continuation_error=None):
    """Laplace integral of the continued Borel transform along its ray.

    Computes ``k t^{-k} \\int exp(-(tau/t)^k) g(tau) tau^{k-1} dtau`` over
    ``arg tau = rc.direction``, cut off where the kernel drops below 1e-20.
    Requires ``cos(k*(theta - arg t)) > 0`` (kernel decay along the ray).
    With ``derivative=True`` returns d/dt of the sum (differentiation under
    the integral: one extra ``(tau/t)^k - 1`` factor and prefactor
    ``k^2 t^{-k-1}``).  Evaluation uses the rational approximants carried
    by the continuation (for either construction method).

    Panels are split until the local Gauss-Legendre refinement estimate
    drops below the (length-prorated) share of ``eps``; the value is
    computed with the high-order continuation and the reported
    continuation error is the difference against the low-order one pushed
    through the same integral.  When ``max_continuation_error`` is given
    and the estimate exceeds it, a :class:`ContinuationError` is raised
    instead of returning a silently degraded value.
    """
    prec = _resolve_prec(max(prec or 0, rc.prec))
    with mp.workprec(prec):
        t = to_mpc(t)
        if t == 0:
            raise SectorError("cannot sum at t = 0")
        kk = mpmath.mpf(k)
        theta = mpmath.mpf(rc.direction)
        ang = _angdiff(kk * theta, kk * mpmath.arg(t))
        decay = mpmath.cos(ang)
        if not decay > 0.05:
            raise SectorError(
                f"direction/point incompatible: cos(k*(theta-arg t)) = {float(decay):.3f}")
        tmod = abs(t)
        S = tmod * (mpmath.log(1 / _KERNEL_FLOOR) / decay) ** (1 / kk)
        scale = tmod * (1 / decay) ** (1 / kk)
        ray_phase = mpmath.expjpi(theta / mpmath.pi)
        # tau^(k-1) dtau contributes e^(i k theta) s^(k-1) ds along the ray
        full_phase = mpmath.expjpi(kk * theta / mpmath.pi)
        kern_phase = mpmath.mpc(mpmath.cos(ang), mpmath.sin(ang))

        def integrand(g):
            def f(s):
                if s <= 0:
                    return mpmath.mpc(0)
                tau = s * ray_phase
                z = (s / tmod) ** kk * kern_phase
                w = mpmath.exp(-z)
                extra = (z - 1) if derivative else 1
                return w * extra * g(tau) * s ** (kk - 1)
            return f

        # geometric panels clustered at the kernel scale
        breaks = [mpmath.mpf(0)]
        step = scale / 8
        while breaks[-1] < S:
            breaks.append(min(breaks[-1] + step, S))
            step *= 2
        nodes = _gl_nodes(prec)
        eps = mpmath.mpf(eps)

        def run(g):
            total = mpmath.mpc(0)
            err = mpmath.mpf(0)
            f = integrand(g)
            for a, b2 in zip(breaks, breaks[1:]):
                tol = eps * (b2 - a) / S / 4
                v, e = _adaptive(f, a, b2, tol, nodes)
                total += v
                err += e
            return total * full_phase, err

        i_hi, qerr = run(rc.evaluate)
        i_lo, _ = run(rc.evaluate_low)
        tpk = tmod ** kk * mpmath.mpc(mpmath.cos(kk * mpmath.arg(t)),
                                      mpmath.sin(kk * mpmath.arg(t)))
        if derivative:
            pref = kk ** 2 / (tpk * t)
        else:
            pref = kk / tpk
        value = pref * i_hi
        cont = float(abs(pref) * abs(i_hi - i_lo))
        # discarded tail beyond the kernel cutoff, included in the budget
        tail_err = abs(rc.evaluate(S * ray_phase)) * _KERNEL_FLOOR / decay
        if derivative:
            tail_err *= (mpmath.log(1 / _KERNEL_FLOOR) / decay + 1) / tmod
        if max_continuation_error is not None and cont > max_continuation_error:
            raise ContinuationError(
                f"continuation error {cont:.3e} exceeds the tolerance "
                f"{max_continuation_error:.3e}")
        return SumResult(t=t, k=float(k), theta=float(theta), value=value,
                         quadrature_error=float(abs(pref) * qerr + tail_err),
                         continuation_error=cont, tail_cut=float(S))


def p_k_sum(expansion, point, k, theta, delta=0.35, prec=None, method="pade"):
    """Germ-k-sum of an expansion at a point: specialize, transform, continue, integrate.

    ``t = P(point)`` must lie within ``pi/(2k) + delta`` of the requested
    direction; the Laplace step additionally requires actual kernel decay.
    """
    prec = _resolve_prec(prec)
    with mp.workprec(prec):
        t = to_mpc(expansion.germ.p.eval_at(point))
        if t == 0:
            raise SectorError("the germ vanishes at the evaluation point")
        off = abs(_angdiff(mpmath.arg(t), theta))
        if off > mpmath.pi / (2 * mpmath.mpf(k)) + delta:
            raise SectorError(
                f"point outside the germ sector: |arg P(x) - theta| = {float(off):.3f} "
                f"> pi/(2k) + {delta}")
        spec = OneVarSeries.from_expansion(expansion, point)
        b = borel_transform(spec, k, prec=prec)
        tmod = abs(t)
        radii = [float(tmod * 2 ** j) for j in range(-1, 4)]
        rc = continue_on_ray(b, theta, radii, method=method, prec=prec)
        return laplace_sum(rc, k, t, prec=prec)


# -- singular directions ------------------------------------------------------

@dataclass(frozen=True)
class PoleCluster:
    center: object
    modulus: float
    argument: float
    stability: float
    hits: int

    def to_json(self):
        return {"modulus": self.modulus, "argument": self.argument,
                "stability": self.stability, "hits": self.hits}


@dataclass(frozen=True)
class SingularDirectionReport:
    k: float
    clusters: tuple
    directions: tuple

    def to_json(self):
        return {
            "k": self.k,
            "directions": list(self.directions),
            "direction_period": TWO_PI,
            "clusters": [c.to_json() for c in self.clusters],
        }


def singular_directions(b, k=None, n_orders=3, match_rel=0.1, prec=None):
    """Directions obstructed by cross-order-stable poles of the continuation.

    Builds rational approximants at ``n_orders`` consecutive denominator
    degrees, keeps only poles reproduced (within ``match_rel`` relative
    distance) at every order, and reports the arguments of the cluster
    centers, deduplicated within 0.05 rad.  An empty report means no
    obstruction was detected (entire Borel transform).
    """
    coeffs = b.coeffs
    if len(coeffs) < 16:
        raise ValueError("need at least 16 Borel coefficients")
    k = float(k if k is not None else getattr(b, "k", 1.0))
    prec = _resolve_prec(prec)
    with mp.workprec(prec):
        m0 = (len(coeffs) - 1) // 2
        orders = [max(1, m0 - i) for i in range(n_orders)]
        pole_sets = []
        for m in dict.fromkeys(orders):
            appr = build_approximant(coeffs, m, prec)
            pole_sets.append([p for p, _ in appr.filtered_poles()])
        clusters = []
        for p in pole_sets[0]:
            matched = [p]
            for ps in pole_sets[1:]:
                if not ps:
                    break
                q = min(ps, key=lambda x: abs(x - p))
                if abs(q - p) > match_rel * max(1, abs(p)):
                    break
                matched.append(q)
            if len(matched) == len(pole_sets):
                center = sum(matched) / len(matched)
                spread = max(abs(x - center) for x in matched)
                clusters.append(PoleCluster(
                    center=center, modulus=float(abs(center)),
                    argument=float(mpmath.arg(center)),
                    stability=float(spread), hits=len(matched)))
        clusters.sort(key=lambda c: c.modulus)
        directions = []
        for c in clusters:
            if all(abs(float(_angdiff(c.argument, d))) > 0.05 for d in directions):
                directions.append(c.argument)
    return SingularDirectionReport(k=k, clusters=tuple(clusters),
                                   directions=tuple(sorted(directions)))
