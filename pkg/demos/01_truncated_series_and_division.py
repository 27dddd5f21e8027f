"""Truncated multivariate series, monomial orders, and division by a germ.

Walks through the core objects: build series from exponent/coefficient
data, inspect how truncation metadata flows through arithmetic, pick a
weight order, and split a series into quotient and cone-avoiding
remainder with respect to a germ.
"""
from fractions import Fraction

from germsum import (Germ, MonomialOrder, TruncatedSeries, majorant_norm,
                     p_expand, t_substitute, v_ell, wdivide)

# -- series arithmetic -------------------------------------------------------
# A series is a finite {exponent: coefficient} map plus a truncation order:
# terms of total degree > trunc are *unknown*, not zero.
f = TruncatedSeries(2, 8, {(0, 0): 1, (1, 1): Fraction(1, 2)})
g = TruncatedSeries(2, 6, {(0, 2): 1, (3, 0): -1})
print("f =", f)
print("g =", g)
print("f * g =", f * g)          # truncation follows the min rule
print("g**2  =", g ** 2)

# The majorant norm sums |c| * rho^degree: an upper bound for the sup of
# |f| on the polydisk of that radius.
print("norm of g at rho=1/2:", majorant_norm(g, Fraction(1, 2)))

# -- weight orders -----------------------------------------------------------
# Weights (1,2) make x1^3 the smallest monomial of g: under this order the
# series "starts" with -x1^3 even though x2^2 has lower total degree.
order = MonomialOrder((1, 2))
print("\nminimal exponent of g under (1,2):", v_ell(g, order))
print("minimal exponent of g under (1,1):", v_ell(g, MonomialOrder((1, 1))))

# -- division by a germ ------------------------------------------------------
# Dividing by g (germ with leading monomial x1^3) writes any series as
# q*g + r where no exponent of r is >= (3,0) componentwise.
germ = Germ(g, order)
h = TruncatedSeries(2, 6, {(6, 0): 1})
division = wdivide(h, germ)
print("\ndivide x1^6 by g:")
print("  q =", division.q)
print("  r =", division.r)
reconstructed = division.q.with_trunc(6) * g + division.r
print("  q*g + r == x1^6 (mod trunc):", reconstructed.agrees_with(h))

# -- iterated expansion ------------------------------------------------------
# Iterating on the quotient expands a series in powers of the germ; the
# coefficients avoid the leading-monomial cone and substituting the germ
# back for t recovers the series.
stack = TruncatedSeries.zero(2, 12)
for n in range(5):
    stack = stack + g.with_trunc(12) ** n
expansion = p_expand(stack, Germ(g.with_trunc(12), order), 5)
print("\nexpansion of 1 + g + ... + g^4: coefficients",
      [dict(c.terms) for c in expansion.coeffs])
print("back-substitution agrees:",
      t_substitute(expansion).agrees_with(stack))
