"""Blow-up charts change the divergence rate of a series expansion.

The running example is the factorially divergent double series

    f = sum_n  n! x2^(2n) (x1 x2)^n

expanded in powers of the monomial germ P = x1*x2.  Its coefficient norms
grow like n! (order-1 divergence).  Pulling everything back through the
two distinguished charts of the quadratic blow-up changes the picture:
the chart at 0 shows square-root-of-factorial growth (order 1/2), the
chart at infinity shows order 1 again.  The dominant-term data of P tells
us in advance that 0 and infinity are exactly the charts worth looking at.
"""
from fractions import Fraction

from germsum import (INFINITY, Germ, MonomialOrder, blowup, dominant_data,
                     fit_gevrey, gen_example, norm_sequence, p_expand)

ex = gen_example("remark79", 212)
print("germ P =", ex.p, "\nseries f:", ex.f)

# Which charts are special?  The zeros of the leading form of P on the
# projective line (here: 0 and infinity, each simple).
dd = dominant_data(ex.p, None)
print("\nleading form of degree", dd.h, "with roots:",
      [(str(v), m) for v, m in dd.roots])

# Direct expansion with respect to P: coefficients n! x2^(2n).
direct = p_expand(ex.f, Germ(ex.p, ex.order), 41)
est = fit_gevrey(norm_sequence(direct, Fraction(1, 2)), 5)
print("\nGevrey order of the direct expansion: s = %.3f (rms %.1e)"
      % (est.s, est.rms_residual))

# Chart at 0: (x1, x2) = (v2, v1*v2).  P becomes v1*v2^2 and the pulled
# back series is supported on even indices only.
f0 = blowup(ex.f, 0)
p0 = blowup(ex.p, 0)
germ0 = Germ(p0, MonomialOrder((1, 1)))
exp0 = p_expand(f0, germ0, 61)
est0 = fit_gevrey(norm_sequence(exp0, Fraction(1, 2)), 5)
print("chart 0:        P ->", p0, " fitted s = %.3f" % est0.s)

# Chart at infinity: (x1, x2) = (v1*v2, v2).  Same germ image, different
# coefficient growth.
finf = blowup(ex.f, INFINITY)
expinf = p_expand(finf, germ0, 41)
estinf = fit_gevrey(norm_sequence(expinf, Fraction(1, 2)), 5)
print("chart infinity: P ->", blowup(ex.p, INFINITY),
      " fitted s = %.3f" % estinf.s)

print("\nexpected triple (1, 1/2, 1); fitted (%.2f, %.2f, %.2f)"
      % (est.s, est0.s, estinf.s))
