"""Summing a factorially divergent series numerically.

The alternating factorial series sum (-1)^n n! t^n diverges for every
t != 0, yet it determines a unique analytic function away from its one
singular direction.  The pipeline: divide coefficients by n! (Borel
transform), continue the resulting geometric series along a ray with a
rational approximant, integrate back against the exponential kernel, and
read off split error estimates.  Crossing the singular direction changes
the answer by an exponentially small jump -- which we measure.
"""
import math
from math import factorial

import mpmath
from mpmath import mp

from germsum import (OneVarSeries, borel_transform, continue_on_ray,
                     laplace_sum, singular_directions)
from germsum.errors import SingularRayError

series = OneVarSeries([(-1) ** n * factorial(n) for n in range(40)])
borel = borel_transform(series, 1)
print("Borel coefficients (alternating factorials become geometric):",
      [complex(c) for c in borel.coeffs[:6]])

# Where does summation fail?  Poles of the continuation that persist
# across approximant orders mark the singular directions.
report = singular_directions(borel, 1)
print("singular directions:", [round(d, 6) for d in report.directions])

# Summation along the positive axis, compared with brute-force quadrature
# of the exact Borel transform 1/(1+tau).
rc = continue_on_ray(borel, 0.0, [1.0, 2.0, 4.0])
result = laplace_sum(rc, 1, mpmath.mpf("0.1"))
with mp.workprec(250):
    oracle = mpmath.quad(lambda u: mpmath.exp(-u) / (1 + mpmath.mpf("0.1") * u),
                         [0, mpmath.inf])
print("\nsum at t=0.1:      ", complex(result.value))
print("quadrature oracle: ", complex(oracle))
print("difference %.2e, reported errors: quad %.1e, continuation %.1e"
      % (abs(result.value - oracle), result.quadrature_error,
         result.continuation_error))

# Asking for the singular direction itself is refused.
try:
    continue_on_ray(borel, math.pi, [1.0])
except SingularRayError as err:
    print("\nray at pi refused:", err)

# Summing on either side of the singular direction gives two analytic
# functions whose difference is exponentially small in 1/|t|.
up = continue_on_ray(borel, math.pi - 0.4, [1.0, 2.0])
down = continue_on_ray(borel, math.pi + 0.4, [1.0, 2.0])
print("\n|t|      jump                jump * exp(+0.5/|t|)")
for r in (0.3, 0.15, 0.08, 0.04):
    with mp.workprec(160):
        t = mpmath.mpf(str(r)) * mpmath.expjpi(1)
        jump = abs(laplace_sum(up, 1, t).value - laplace_sum(down, 1, t).value)
        print("%.2f   %.6e    %.6e"
              % (r, float(jump), float(jump * mpmath.exp(mpmath.mpf("0.5") / r))))
