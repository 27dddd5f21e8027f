"""Canned example series and formal/numeric verification of their equations.

Three generator names are understood:

* ``remark79`` - the double series ``sum n! x2^(2n) (x1 x2)^n`` together
  with the monomial germ ``x1*x2``; its pullbacks through the two
  distinguished blow-up charts display Gevrey orders (1, 1/2, 1).
* ``ode-euler`` - ``y = sum m! P^(m+1)`` with ``P = x^2 - eps^2``, the
  divergent formal solution of ``P^2 y' = P' y - P P'`` (derivative in x).
* ``pde-quasihom`` - ``f = x1 sum n! P^(n+1)`` with ``P = x2^2 - x1^3``,
  a formal solution of the first-order PDE with coefficients built from
  ``x2 dP/dx2`` and ``x1 dP/dx1`` (parameters alpha=0, beta=1, k=1).

The formal verifiers evaluate the differential equations in exact
arithmetic on the stored polynomial representatives at a raised working
truncation, so residual valuations (which sit above the generator's
truncation) are visible and reported.  The numeric verifier reduces the
ODE to its one-variable form ``t^2 F'(t) = F(t) - t`` for the sum
``F = Laplace(Borel(sum m! t^(m+1)))``: substituting t = P(x) and
factoring P' out of the two-variable equation leaves exactly this
relation, so checking it along rays checks the original equation wherever
P' does not vanish.
"""
from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import mpmath
from mpmath import mp

from .borel import OneVarSeries, borel_transform, continue_on_ray, laplace_sum
from .errors import GermsumError
from .scalars import DEFAULT_PREC_BITS, to_mpc
from .series import MonomialOrder, TruncatedSeries
from .weierstrass import Germ, wdivide

EXAMPLE_NAMES = ("remark79", "ode-euler", "pde-quasihom")


@dataclass(frozen=True)
class ExampleData:
    name: str
    f: TruncatedSeries
    p: TruncatedSeries
    order: MonomialOrder
    notes: dict


def gen_example(name, trunc):
    """Exact generator for the named example series, to the requested order."""
    n = int(trunc)
    if name == "remark79":
        terms = {}
        m = 0
        while 4 * m <= n:
            terms[(m, 3 * m)] = Fraction(factorial(m))
            m += 1
        f = TruncatedSeries(2, n, terms)
        p = TruncatedSeries(2, n, {(1, 1): 1})
        return ExampleData(name, f, p, MonomialOrder((1, 1)),
                           {"expected_order": 1.0})
    if name == "ode-euler":
        p = TruncatedSeries(2, n, {(2, 0): 1, (0, 2): -1})
        f = TruncatedSeries.zero(2, n)
        m = 0
        while 2 * (m + 1) <= n:
            f = f + p ** (m + 1) * Fraction(factorial(m))
            m += 1
        return ExampleData(name, f, p, MonomialOrder((1, 1)),
                           {"k": 1, "singular_direction": 0.0})
    if name == "pde-quasihom":
        p = TruncatedSeries(2, n, {(0, 2): 1, (3, 0): -1})
        x1 = TruncatedSeries.variable(0, 2, n)
        f = TruncatedSeries.zero(2, n)
        m = 0
        # include whole summands only: x1 * P^(m+1) has top degree 1 + 3(m+1),
        # so no power of the (inhomogeneous) germ gets sliced by the truncation
        while 1 + 3 * (m + 1) <= n:
            f = f + x1 * p ** (m + 1) * Fraction(factorial(m))
            m += 1
        return ExampleData(name, f, p, MonomialOrder((2, 3)),
                           {"alpha": 0, "beta": 1, "k": 1, "depth": m})
    raise ValueError(f"unknown example {name!r}; choose from {EXAMPLE_NAMES}")


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of a formal or numeric equation check."""
    formal_valuation: object = None
    exact_to_truncation: object = None
    numeric_max_residual: object = None
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "formal_valuation": self.formal_valuation,
            "exact_to_truncation": self.exact_to_truncation,
            "numeric_max_residual": self.numeric_max_residual,
            "details": {k: v for k, v in self.details.items()
                        if not isinstance(v, TruncatedSeries)},
        }


def verify_ode_formal(y, p):
    """Exact residual of P^2 dy/dx - P' y + P P' (derivative in the first variable).

    Inputs are treated as exact polynomial data; the computation runs at a
    raised truncation so the genuine residual valuation of a truncated
    solution shows up (it grows linearly with the generation depth).
    """
    work = y.trunc + 2 * (p.degree() or 0) + 2
    yl = y.with_trunc(work)
    pl = p.with_trunc(work)
    dp = pl.differentiate(0)
    residual = pl * pl * yl.differentiate(0) - dp * yl + pl * dp
    val = residual.valuation()
    return ResidualReport(
        formal_valuation=val,
        exact_to_truncation=(val is None or val > y.trunc),
        details={"trunc": y.trunc, "work_trunc": work,
                 "residual_terms": len(residual.terms)})


def verify_pde_formal(f, p, alpha, beta, k, A=None, B=None, order=None):
    """Compute the PDE left-hand side exactly and factor the stated right side.

    Returns ``(report, h)`` where h is the computed left-hand side
    ``(x2 P_2 + alpha P^(k+1) + P A) x1 f_1 - (x1 P_1 + beta P^(k+1) + P B) x2 f_2``
    (subscripts = partial derivatives).  The report records whether h is
    exactly divisible by ``x2 * dP/dx2 * P``, the cofactor series of that
    division, and whether the cofactor is the constant 1 (the form the
    equation is usually quoted with); a leading cofactor x1 is flagged as
    a discrepancy rather than silently absorbed.
    """
    deg_p = p.degree() or 1
    work = f.trunc + (int(k) + 2) * deg_p + 4
    fl = f.with_trunc(work)
    pl = p.with_trunc(work)
    x1 = TruncatedSeries.variable(0, f.dim, work)
    x2 = TruncatedSeries.variable(1, f.dim, work)
    a_series = A.with_trunc(work) if A is not None else TruncatedSeries.zero(f.dim, work)
    b_series = B.with_trunc(work) if B is not None else TruncatedSeries.zero(f.dim, work)
    p_pow = pl ** (int(k) + 1)
    coeff1 = x2 * pl.differentiate(1) + p_pow * Fraction(alpha) + pl * a_series
    coeff2 = x1 * pl.differentiate(0) + p_pow * Fraction(beta) + pl * b_series
    h = coeff1 * (x1 * fl.differentiate(0)) - coeff2 * (x2 * fl.differentiate(1))

    stated = x2 * pl.differentiate(1) * pl
    report_details = {"stated_rhs": stated, "computed_h": h}
    if stated.is_zero:
        raise GermsumError("stated right-hand side x2*dP/dx2*P vanishes")
    divisor = Germ(stated, order or MonomialOrder((2, 3)))
    division = wdivide(h, divisor)
    divisible = division.r.is_zero
    cofactor = division.q
    is_stated_form = (not cofactor.is_zero
                      and cofactor.terms == {(0,) * f.dim: 1}
                      )
    lead = None
    if not cofactor.is_zero:
        from .series import v_ell
        le = v_ell(cofactor, divisor.order)
        lead = {"exp": list(le), "coeff": str(cofactor.terms[le])}
    report = ResidualReport(
        formal_valuation=h.valuation(),
        exact_to_truncation=divisible,
        details={
            "divisible_by_stated_rhs": divisible,
            "cofactor_leading_term": lead,
            "cofactor": cofactor,
            "stated_form_matches": is_stated_form,
            "stated_form_discrepancy": divisible and not is_stated_form,
            "remainder_terms": len(division.r.terms),
        })
    return report, h


def euler_borel_series(n_coeffs):
    """Coefficients of sum_{m>=0} m! t^(m+1), the one-variable ODE solution."""
    return OneVarSeries([0] + [factorial(m) for m in range(n_coeffs - 1)])


def verify_ode_numeric(k, theta, t_samples, n_coeffs=48, prec=None, eps=1e-18):
    """Check t^2 F' = F - t for the ray sum of the factorial series.

    F and F' are produced by the Borel-ray-Laplace pipeline (F' by
    differentiation under the integral), and the maximal residual over the
    sample moduli |t| is reported.  A direction congruent to 0 mod 2*pi
    fails with a singular-ray error (branch point of the Borel transform).
    """
    prec = prec or DEFAULT_PREC_BITS
    with mp.workprec(prec):
        b = borel_transform(euler_borel_series(n_coeffs), k, prec=prec)
        radii = [0.25, 0.5, 1.0, 2.0]
        rc = continue_on_ray(b, theta, radii, prec=prec)
        phase = mpmath.expjpi(mpmath.mpf(theta) / mpmath.pi)
        worst = 0.0
        samples = []
        for r in t_samples:
            t = mpmath.mpf(r) * phase
            fs = laplace_sum(rc, k, t, eps=eps, prec=prec)
            fps = laplace_sum(rc, k, t, derivative=True, eps=eps, prec=prec)
            res = abs(t * t * fps.value - fs.value + t)
            samples.append({"t_mod": float(r), "residual": float(res),
                            "quad_err": fs.quadrature_error,
                            "cont_err": fs.continuation_error})
            worst = max(worst, float(res))
    return ResidualReport(
        numeric_max_residual=worst,
        details={"theta": float(theta), "k": float(k), "samples": samples,
                 "n_coeffs": n_coeffs})


@dataclass(frozen=True)
class PSectorSample:
    """Points of a polydisk with the germ's argument inside a window."""
    a: float
    b: float
    R: float
    points: tuple
    p: TruncatedSeries

    def recheck(self):
        width = (self.b - self.a) % (2 * cmath.pi) or 2 * cmath.pi
        for x in self.points:
            if not all(abs(c) < self.R for c in x):
                return False
            w = complex(to_mpc(self.p.eval_at(x)))
            if w == 0 or (cmath.phase(w) - self.a) % (2 * cmath.pi) >= width:
                return False
        return True


def sample_p_sector(p, a, b, R, count, seed=0, max_tries=200000):
    """Rejection-sample points with a < arg P(x) < b inside the polydisk."""
    if not b > a:
        raise ValueError("need a < b")
    rng = random.Random(seed)
    pts = []
    width = (b - a) % (2 * cmath.pi) or 2 * cmath.pi
    for _ in range(max_tries):
        if len(pts) >= count:
            break
        x = tuple(complex(rng.uniform(-R, R), rng.uniform(-R, R))
                  for _ in range(p.dim))
        if not all(abs(c) < R for c in x):
            continue
        w = complex(to_mpc(p.eval_at(x)))
        if w == 0:
            continue
        rel = (cmath.phase(w) - a) % (2 * cmath.pi)
        if rel < width:
            pts.append(x)
    if len(pts) < count:
        raise GermsumError(
            f"could not find {count} sector points (got {len(pts)})")
    return PSectorSample(a=float(a), b=float(b), R=float(R),
                         points=tuple(pts), p=p)
