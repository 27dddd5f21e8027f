"""Blow-up charts, ramification, rotation averaging and dominant-term data.

The quadratic blow-up of the (x1, x2)-plane is covered by charts indexed
by a point xi of the projective line: in the chart at finite xi the map is
``(x1, x2, rest) = (v2, (xi+v1)*v2, rest)`` and in the chart at infinity
``(v1*v2, v2, rest)``.  Overlapping charts differ by the shift
``v1 -> v1 + (zeta - xi)``.  The ramification of order k substitutes
``x1 = t1^k``; series invariant under the induced rotation descend by
dividing the first exponent by k.

``dominant_data`` extracts, for a germ P, the bivariate leading form H
(degree h) whose projective zeros are exactly the charts where the blown-up
germ fails to start with the monomial ``v2^h * rest^a``; off those charts
the completed weight order makes ``(0, h) ++ a`` the minimal exponent of
the blown-up germ.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .errors import DimensionMismatchError, ZeroGermError
from . import scalars
from .scalars import DEFAULT_PREC_BITS, is_zero, sadd, scalar_to_json, to_mpc
from .series import MonomialOrder, TruncatedSeries, substitute


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


#: Chart marker for the point at infinity of the exceptional line.
INFINITY = _Infinity()


@dataclass(frozen=True)
class BlowupChart:
    """A chart of the blow-up: a finite center xi or INFINITY."""
    xi: object

    @classmethod
    def at_infinity(cls):
        return cls(INFINITY)

    @property
    def is_infinite(self):
        return self.xi is INFINITY


def _resolve_chart(chart):
    if isinstance(chart, BlowupChart):
        chart = chart.xi
    if chart is INFINITY or (isinstance(chart, str) and chart.lower() in ("inf", "infinity")):
        return INFINITY
    if isinstance(chart, float):
        if chart == float("inf"):
            return INFINITY
        return mpmath.mpf(chart)
    if isinstance(chart, complex):
        return mpmath.mpc(chart)
    return chart


def blowup(f, chart):
    """Compose f with the blow-up chart at xi (or at infinity).

    Each input term of total degree m lands at v-degree >= m, so the
    output keeps f's truncation order.  Non-exact xi promotes the affected
    coefficients to floats.
    """
    if f.dim < 2:
        raise DimensionMismatchError("blow-up needs at least two variables")
    xi = _resolve_chart(chart)
    d, n = f.dim, f.trunc
    v2 = TruncatedSeries.variable(1, d, n)
    rest = [TruncatedSeries.variable(j, d, n) for j in range(2, d)]
    if xi is INFINITY:
        v1v2 = TruncatedSeries.monomial((1, 1) + (0,) * (d - 2), 1, n)
        images = [v1v2, v2, *rest]
    else:
        img2 = {(1, 1) + (0,) * (d - 2): 1}
        if not is_zero(xi):
            img2[(0, 1) + (0,) * (d - 2)] = xi
        images = [v2, TruncatedSeries(d, n, img2), *rest]
    return substitute(f, images)


def ramify(f, k):
    """Substitute x1 = t1^k (k >= 2); all first exponents become multiples of k.

    The substitution is exact on the stored terms and the truncation order
    scales to ``k * f.trunc``, so that descending through
    :func:`rotation_average` round-trips (on genuinely ramified data this
    scaled claim is the correct one; for other degree-(> f.trunc) tails it
    holds on the stored representative).
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError("ramification order must be an integer >= 2")
    trunc = k * f.trunc if f.trunc >= 0 else -1
    return TruncatedSeries(f.dim, trunc,
                           {(k * e[0],) + e[1:]: c for e, c in f.terms.items()})


def rotation_average(g, k, descend=False):
    """Project g onto terms whose first exponent is divisible by k.

    This equals the average of g over the order-k rotation of the first
    variable.  With ``descend=True`` the first exponent (and the stored
    truncation order) is divided by k, undoing :func:`ramify` on
    rotation-invariant data.
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError("rotation order must be an integer >= 2")
    kept = {e: c for e, c in g.terms.items() if e[0] % k == 0}
    if not descend:
        return TruncatedSeries(g.dim, g.trunc, kept)
    trunc = g.trunc // k if g.trunc >= 0 else -1
    return TruncatedSeries(g.dim, trunc,
                           {(e[0] // k,) + e[1:]: c for e, c in kept.items()})


def chart_shift(f_xi, xi, zeta):
    """Move chart data from center xi to center zeta: v1 -> v1 + (zeta - xi).

    Satisfies ``blowup(f, zeta) == chart_shift(blowup(f, xi), xi, zeta)``
    whenever the stored data is exact to its truncation (in particular for
    polynomial input); the output keeps the input truncation on that
    representative basis.
    """
    xi = _resolve_chart(xi)
    zeta = _resolve_chart(zeta)
    if xi is INFINITY or zeta is INFINITY:
        raise ValueError("chart shifts are defined between finite charts")
    delta = sadd(zeta, scalars.sneg(xi))
    if is_zero(delta):
        return f_xi
    d, n = f_xi.dim, f_xi.trunc
    img1 = TruncatedSeries(d, n, {(1,) + (0,) * (d - 1): 1,
                                  (0,) * d: delta})
    images = [img1] + [TruncatedSeries.variable(j, d, n) for j in range(1, d)]
    return substitute(f_xi, images, out_trunc=n)


@dataclass(frozen=True)
class DominantData:
    """Leading-form data of a germ under blow-up.

    h: degree of the bivariate leading form; H: the form itself (dim-2
    series); a: minimal exponent of the remaining variables; roots: zeros
    of H on the projective line with multiplicities, the charts where the
    blown-up germ is not dominated by ``v2^h * rest^a``.
    """
    base_order: object
    completed_order: MonomialOrder
    h: int
    H: TruncatedSeries
    a: tuple
    roots: tuple

    def root_values(self):
        return [v for v, _ in self.roots]

    def to_json(self):
        return {
            "h": self.h,
            "H": [[e[0], e[1], scalar_to_json(c)] for e, c in self.H.sorted_terms()],
            "a": list(self.a),
            "roots": [{"value": _root_str(v), "mult": m} for v, m in self.roots],
            "order": self.completed_order.to_json(),
        }


def _root_str(v):
    if v is INFINITY:
        return "inf"
    if isinstance(v, scalars.QQi):
        return str(complex(float(v.re), float(v.im)))
    if scalars.is_exact(v):
        return scalar_to_json(v)
    z = to_mpc(v)
    if z.imag == 0:
        return repr(float(z.real))
    return str(complex(float(z.real), float(z.imag)))


def _cluster_roots(values, radius):
    """Greedy clustering of approximate roots; multiplicity = cluster size."""
    clusters = []
    for z in sorted(values, key=lambda w: (abs(w), mpmath.arg(w) if w != 0 else 0)):
        for c in clusters:
            center = c[0] / c[1]
            if abs(z - center) <= radius * max(1, abs(center)):
                c[0] += z
                c[1] += 1
                break
        else:
            clusters.append([z, 1])
    return [(c[0] / c[1], c[1]) for c in clusters]


def _poly_roots(coeffs_low_to_high, prec):
    """Roots of a univariate polynomial with exact zero-root deflation."""
    roots = []
    cs = list(coeffs_low_to_high)
    while cs and is_zero(cs[-1]):
        cs.pop()
    if len(cs) <= 1:
        return roots
    zero_mult = 0
    while is_zero(cs[0]):
        cs.pop(0)
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if len(cs) <= 1:
        return roots
    with mp.workprec(prec):
        poly = [to_mpc(c) for c in reversed(cs)]
        try:
            found = mpmath.polyroots(poly, maxsteps=200, extraprec=prec)
        except mpmath.libmp.libhyper.NoConvergence:
            comp = mpmath.zeros(len(poly) - 1)
            lead = poly[0]
            for i in range(len(poly) - 1):
                comp[i, len(poly) - 2] = -poly[len(poly) - 1 - i] / lead
                if i > 0:
                    comp[i, i - 1] = 1
            found, _ = mpmath.eig(comp)
        radius = mpmath.mpf(2) ** (-(prec // 4))
        roots.extend(_cluster_roots(found, radius))
    return roots


def dominant_data(germ, base, prec=None):
    """Compute (h, H, a, roots) and a completing weight order for a germ.

    ``germ`` may be a Germ or a bare TruncatedSeries.  ``base`` is the
    weight order on the variables beyond the first two (pass None when
    d == 2).  The completed order takes the base weights on those
    variables and fills in (w/2, w) on (x1, x2) with w chosen below the
    base order's smallest value gap, so that the dominant-term claim holds.
    """
    p = germ.p if hasattr(germ, "p") else germ
    if p.is_zero:
        raise ZeroGermError("dominant data needs a nonzero germ")
    prec = prec or max(mp.prec, DEFAULT_PREC_BITS)
    d = p.dim
    if d == 2:
        if base is not None:
            raise DimensionMismatchError("base order must be None for two variables")
        a = ()
        slice_terms = dict(p.terms)
        gap = None
    else:
        if not isinstance(base, MonomialOrder) or base.dim != d - 2:
            raise DimensionMismatchError(
                f"base order must cover {d - 2} variables")
        groups = {}
        for e, c in p.terms.items():
            groups.setdefault(e[2:], {})[e[:2]] = c
        a = min(groups, key=base.key)
        slice_terms = {e2 + a: c for e2, c in groups[a].items()}
        others = [base.weight(m) for m in groups if m != a]
        gap = (min(others) - base.weight(a)) if others else None
    h = min(sum(e[:2]) for e in slice_terms)
    H = TruncatedSeries(2, h, {e[:2]: c for e, c in slice_terms.items()
                               if sum(e[:2]) == h})

    if gap is not None and h > 0:
        w2 = min(Fraction(1), Fraction(gap) / (2 * h))
    else:
        w2 = Fraction(1)
    base_weights = base.weights if base is not None else ()
    tiebreak = base.tiebreak if base is not None else "lex"
    completed = MonomialOrder((w2 / 2, w2) + base_weights, tiebreak)

    # zeros of H on the projective line: H(1, xi) plus infinity if the
    # pure-x2 coefficient vanishes
    cs = [H.coeff((h - j, j)) for j in range(h + 1)]
    roots = _poly_roots(cs, prec)
    deg = h
    while deg > 0 and is_zero(cs[deg]):
        deg -= 1
    if h - deg > 0:
        roots.append((INFINITY, h - deg))
    return DominantData(base, completed, h, H, a, tuple(roots))
