"""Divergent formal solutions of differential equations, checked two ways.

First example: the ODE  P^2 y' = P' y - P P'  with P = x^2 - eps^2 has the
divergent formal solution y = sum m! P^(m+1).  We verify the equation
exactly on the truncated series, then numerically: writing y = F(P) turns
the equation into t^2 F'(t) = F(t) - t, and the Borel-Laplace sum of
sum m! t^(m+1) satisfies that relation along every admissible ray to
near-machine accuracy.

Second example: a first-order PDE built from a quasi-homogeneous germ
P = x2^2 - x1^3 with formal solution f = x1 sum n! P^(n+1).  Computing
the right-hand side exactly shows it is divisible by x2*(dP/dx2)*P with
cofactor x1 -- not the bare product one might quote.  The verifier
records the cofactor instead of silently absorbing it.
"""
import math

from germsum import (gen_example, verify_ode_formal, verify_ode_numeric,
                     verify_pde_formal)

# -- ODE, formal -------------------------------------------------------------
ex = gen_example("ode-euler", 24)
report = verify_ode_formal(ex.f, ex.p)
print("ODE residual valuation:", report.formal_valuation,
      "(truncation %d)" % ex.f.trunc)
print("vanishes to truncation:", report.exact_to_truncation)

# -- ODE, numeric ------------------------------------------------------------
for theta in (math.pi, math.pi / 2):
    rep = verify_ode_numeric(1, theta, [0.02, 0.1, 0.3])
    print("max |t^2 F' - F + t| along theta=%.3f: %.2e"
          % (theta, rep.numeric_max_residual))

# The direction theta = 0 is singular for this equation: the machinery
# refuses it rather than producing an uncontrolled number.
from germsum.errors import SingularRayError
try:
    verify_ode_numeric(1, 0.0, [0.1])
except SingularRayError as err:
    print("theta=0 refused:", err)

# -- PDE ---------------------------------------------------------------------
ex = gen_example("pde-quasihom", 25)
report, h = verify_pde_formal(ex.f, ex.p, alpha=0, beta=1, k=1)
d = report.details
print("\nPDE: computed right-hand side has", len(h.terms), "terms")
print("divisible by x2*(dP/dx2)*P:", d["divisible_by_stated_rhs"])
print("cofactor leading term:", d["cofactor_leading_term"])
print("matches the bare product:", d["stated_form_matches"],
      "-> discrepancy flagged:", d["stated_form_discrepancy"])
