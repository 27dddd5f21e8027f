"""Truncated multivariate power series and monomial orders.

A :class:`TruncatedSeries` is a finite exponent->coefficient map together
with a total-degree truncation order ``trunc``: terms of total degree
greater than ``trunc`` are unrepresented (unknown, not zero).  Arithmetic
never claims accuracy beyond what the operands certify:

* ``add``/``mul`` keep ``min`` of the operand truncations,
* ``substitute`` derives the output truncation from the valuations of the
  substituted images (a term of the unknown tail of ``f``, of degree
  ``trunc+1`` or more, contributes only at degree
  ``>= (trunc+1) * min_i val(images[i])``),
* callers that knowingly treat the stored terms as exact polynomial data
  (a "representative") may override via ``out_trunc`` / ``with_trunc``.

Coefficients are exact rationals, exact complex rationals or mpmath
complex floats; see :mod:`germsum.scalars`.
"""
from __future__ import annotations

from fractions import Fraction

from mpmath import mp

from .errors import (DimensionMismatchError, InsufficientTruncationError,
                     ZeroSeriesError)
from . import scalars
from .scalars import (DEFAULT_PREC_BITS, is_zero, sabs, sabs_float, sadd,
                      scalar_eq, scalar_from_json, scalar_to_json, smul, sneg)

ExponentVec = tuple
#: Radius used by the majorant norm; any positive rational or float.
PolyRadius = object


class MonomialOrder:
    """Positive rational weights plus a deterministic total-order tie-break.

    The induced order on exponents compares the weighted degree first, the
    total degree second, and finally a lexicographic rule: ``"lex"`` makes
    x1 the smallest variable (larger x1-exponent wins a tie), ``"revlex"``
    makes xd the smallest.  The result is a total order on N^d compatible
    with addition, refining the weight comparison.
    """

    __slots__ = ("weights", "tiebreak")

    def __init__(self, weights, tiebreak="lex"):
        ws = tuple(Fraction(w) for w in weights)
        if not ws or any(w <= 0 for w in ws):
            raise ValueError("monomial order needs a nonempty positive weight vector")
        if tiebreak not in ("lex", "revlex"):
            raise ValueError(f"unknown tiebreak {tiebreak!r}")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "tiebreak", tiebreak)

    def __setattr__(self, *a):
        raise AttributeError("MonomialOrder is immutable")

    @property
    def dim(self):
        return len(self.weights)

    def weight(self, e):
        return sum(w * k for w, k in zip(self.weights, e))

    def key(self, e):
        """Sort key realizing the total order (smaller key = smaller monomial)."""
        if self.tiebreak == "lex":
            tie = tuple(-k for k in e)
        else:
            tie = tuple(-k for k in reversed(e))
        return (self.weight(e), sum(e), tie)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and self.weights == other.weights
                and self.tiebreak == other.tiebreak)

    def __hash__(self):
        return hash((self.weights, self.tiebreak))

    def __repr__(self):
        ws = ",".join(str(w) for w in self.weights)
        return f"MonomialOrder({ws}:{self.tiebreak})"

    def to_json(self):
        return {"weights": [scalar_to_json(w) for w in self.weights],
                "tiebreak": self.tiebreak}

    @classmethod
    def from_json(cls, obj):
        return cls([Fraction(str(w)) for w in obj["weights"]],
                   obj.get("tiebreak", "lex"))


def _prune_terms(terms, trunc):
    """Drop out-of-window and (relatively) zero coefficients in place."""
    kill = [e for e, c in terms.items() if sum(e) > trunc or is_zero(c)]
    for e in kill:
        del terms[e]
    if any(not scalars.is_exact(c) for c in terms.values()):
        prec = max(mp.prec, DEFAULT_PREC_BITS)
        eps = mp.mpf(2) ** (-(prec // 2))
        by_deg = {}
        for e, c in terms.items():
            d = sum(e)
            a = sabs(c)
            if d not in by_deg or a > by_deg[d]:
                by_deg[d] = a
        kill = [e for e, c in terms.items()
                if not scalars.is_exact(c) and sabs(c) < by_deg[sum(e)] * eps]
        for e in kill:
            del terms[e]
    return terms


class TruncatedSeries:
    """Element of C[[x1..xd]] known modulo terms of total degree > trunc."""

    __slots__ = ("dim", "trunc", "terms")

    def __init__(self, dim, trunc, terms=None):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        trunc = int(trunc)
        if trunc < -1:
            trunc = -1
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != dim:
                raise DimensionMismatchError(
                    f"exponent {e} has length {len(e)}, expected {dim}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent in {e}")
            clean[e] = sadd(clean[e], c) if e in clean else c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "terms", _prune_terms(clean, trunc))

    def __setattr__(self, *a):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, dim, trunc):
        return cls(dim, trunc, {})

    @classmethod
    def constant(cls, value, dim, trunc):
        return cls(dim, trunc, {(0,) * dim: value})

    @classmethod
    def one(cls, dim, trunc):
        return cls.constant(1, dim, trunc)

    @classmethod
    def monomial(cls, exp, coeff, trunc):
        return cls(len(tuple(exp)), trunc, {tuple(exp): coeff})

    @classmethod
    def variable(cls, i, dim, trunc):
        e = [0] * dim
        e[i] = 1
        return cls(dim, trunc, {tuple(e): 1})

    # -- queries -----------------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_exact(self):
        """True when every coefficient is an exact rational scalar."""
        return all(scalars.is_exact(c) for c in self.terms.values())

    def coeff(self, exp):
        return self.terms.get(tuple(exp), 0)

    def valuation(self):
        """Minimal total degree of a stored term, or None for the zero series."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def degree(self):
        """Maximal total degree of a stored term, or None for the zero series."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.dim != other.dim or self.trunc != other.trunc:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(scalar_eq(c, other.terms[e]) for e, c in self.terms.items())

    def agrees_with(self, other, upto=None):
        """Termwise equality up to min(self.trunc, other.trunc, upto)."""
        if self.dim != other.dim:
            return False
        bound = min(self.trunc, other.trunc)
        if upto is not None:
            bound = min(bound, upto)
        for e in set(self.terms) | set(other.terms):
            if sum(e) <= bound and not scalar_eq(self.terms.get(e, 0),
                                                 other.terms.get(e, 0)):
                return False
        return True

    def __repr__(self):
        items = self.sorted_terms()
        shown = " + ".join(_fmt_term(e, c) for e, c in items[:6])
        if len(items) > 6:
            shown += f" + ... ({len(items)} terms)"
        return f"<series d={self.dim} trunc={self.trunc}: {shown or '0'}>"

    # -- ring operations ---------------------------------------------------
    def _check_dim(self, other):
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_dim(other)
        trunc = min(self.trunc, other.trunc)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = sadd(terms[e], c) if e in terms else c
        return TruncatedSeries(self.dim, trunc, terms)

    def __neg__(self):
        return TruncatedSeries(self.dim, self.trunc,
                               {e: sneg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check_dim(other)
        trunc = min(self.trunc, other.trunc)
        terms = _mul_raw(self.terms, other.terms, trunc)
        return TruncatedSeries(self.dim, trunc, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        """Multiply every coefficient by the scalar c."""
        return TruncatedSeries(self.dim, self.trunc,
                               {e: smul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers take nonnegative integer exponents")
        result = TruncatedSeries.one(self.dim, self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def differentiate(self, i):
        """Partial derivative in variable i; certifies one order less."""
        if not 0 <= i < self.dim:
            raise ValueError(f"variable index {i} out of range")
        terms = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[e2] = smul(c, e[i])
        return TruncatedSeries(self.dim, max(self.trunc - 1, -1), terms)

    def truncated(self, new_trunc):
        """Restrict to a smaller truncation order."""
        return TruncatedSeries(self.dim, min(self.trunc, new_trunc), self.terms)

    def with_trunc(self, new_trunc):
        """Reinterpret the stored terms with a caller-asserted truncation.

        Used where an operation is known to be exact on the stored
        representative (e.g. shifting a blown-up polynomial); the generic
        bookkeeping would be more pessimistic.
        """
        return TruncatedSeries(self.dim, new_trunc, self.terms)

    def eval_at(self, point):
        """Evaluate the stored polynomial at a point (exact when possible)."""
        if len(point) != self.dim:
            raise DimensionMismatchError(
                f"point has {len(point)} coordinates, series has {self.dim}")
        caches = [{0: 1} for _ in range(self.dim)]

        def power(i, n):
            cache = caches[i]
            if n not in cache:
                cache[n] = smul(power(i, n - 1), point[i])
            return cache[n]

        total = 0
        for e, c in self.sorted_terms():
            piece = c
            for i, k in enumerate(e):
                if k:
                    piece = smul(piece, power(i, k))
            total = sadd(total, piece)
        return total

    def map_coefficients(self, fn):
        return TruncatedSeries(self.dim, self.trunc,
                               {e: fn(c) for e, c in self.terms.items()})


def _fmt_term(e, c):
    mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "")
                    for i, k in enumerate(e) if k)
    return f"({c})" + (f"*{mono}" if mono else "")


def _mul_raw(ta, tb, trunc):
    if len(ta) > len(tb):
        ta, tb = tb, ta
    out = {}
    for ea, ca in ta.items():
        da = sum(ea)
        for eb, cb in tb.items():
            if da + sum(eb) > trunc:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            c = smul(ca, cb)
            out[e] = sadd(out[e], c) if e in out else c
    return out


# -- spec operation surface -------------------------------------------------

def add(a, b):
    """Coefficientwise sum; result truncation is min(a.trunc, b.trunc)."""
    return a + b


def mul(a, b):
    """Cauchy product truncated at min(a.trunc, b.trunc)."""
    return a * b


def substitute(f, images, out_trunc=None):
    """Compose f with the given image series, one per variable of f.

    Each image must either vanish at the origin or have an exact, finite
    constant term (affine substitutions).  The output truncation is
    ``min(min_i images[i].trunc, (f.trunc+1)*min_i val(images[i]) - 1)``
    unless overridden; when some image is a unit and the derived truncation
    is empty, an :class:`InsufficientTruncationError` is raised.
    """
    if len(images) != f.dim:
        raise DimensionMismatchError(
            f"need {f.dim} images, got {len(images)}")
    d2 = images[0].dim
    for g in images:
        if g.dim != d2:
            raise DimensionMismatchError("images live in different dimensions")
    if out_trunc is None:
        vals = [(g.valuation() if g.valuation() is not None else g.trunc + 1)
                for g in images]
        tail = (f.trunc + 1) * min(vals) - 1
        out_trunc = min(min(g.trunc for g in images), tail)
        if out_trunc < 0:
            raise InsufficientTruncationError(
                "substitution with unit images cannot certify any output "
                "coefficient; pass out_trunc to assert polynomial inputs")

    one = {(0,) * d2: 1}
    caches = [{0: one} for _ in range(f.dim)]

    def power(i, n):
        cache = caches[i]
        if n not in cache:
            cache[n] = _mul_raw(power(i, n - 1), images[i].terms, out_trunc)
        return cache[n]

    acc = {}
    for e, c in f.sorted_terms():
        piece = {(0,) * d2: c}
        for i, k in enumerate(e):
            if k:
                piece = _mul_raw(piece, power(i, k), out_trunc)
        for e2, c2 in piece.items():
            acc[e2] = sadd(acc[e2], c2) if e2 in acc else c2
    return TruncatedSeries(d2, out_trunc, acc)


def v_ell(f, order):
    """Order-minimal exponent of a nonzero truncated series."""
    if order.dim != f.dim:
        raise DimensionMismatchError(
            f"order has {order.dim} weights, series has {f.dim} variables")
    if f.is_zero:
        raise ZeroSeriesError("zero series has no valuation")
    return min(f.terms, key=order.key)


def majorant_norm(f, rho):
    """Sum of |c_e| * rho^deg(e) over stored terms.

    Upper-bounds the sup of |f| on the closed polydisk of radius rho, for
    the stored polynomial part.
    """
    r = float(rho)
    if not r > 0:
        raise ValueError("majorant radius must be positive")
    total = 0.0
    for e, c in f.terms.items():
        total += sabs_float(c) * r ** sum(e)
    return total


def differentiate(f, i):
    return f.differentiate(i)


# -- JSON interchange --------------------------------------------------------

def series_to_json(f):
    """Canonical JSON object; exponents sorted lexicographically."""
    return {
        "dim": f.dim,
        "trunc": f.trunc,
        "terms": [{"exp": list(e), "coeff": scalar_to_json(c)}
                  for e, c in f.sorted_terms()],
    }


def series_from_json(obj):
    try:
        dim = int(obj["dim"])
        trunc = int(obj["trunc"])
        raw = obj["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"series JSON missing/invalid field: {exc}") from exc
    terms = {}
    for i, item in enumerate(raw):
        try:
            e = tuple(int(k) for k in item["exp"])
            c = scalar_from_json(item["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"series JSON terms[{i}]: {exc}") from exc
        terms[e] = c
    return TruncatedSeries(dim, trunc, terms)
