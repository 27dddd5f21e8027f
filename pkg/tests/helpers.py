"""Shared test utilities: random instances and the independent expansion oracle."""
from fractions import Fraction

from germsum.scalars import QQi
from germsum.series import MonomialOrder, TruncatedSeries
from germsum.weierstrass import delta_member


def random_series(rng, dim, trunc, max_terms=10, complex_coeffs=False,
                  min_degree=0, nonzero=False):
    terms = {}
    for _ in range(rng.randint(1 if nonzero else 0, max_terms)):
        e = tuple(rng.randint(0, trunc) for _ in range(dim))
        if sum(e) > trunc or sum(e) < min_degree:
            continue
        num = rng.randint(-9, 9)
        if num == 0:
            num = 1
        c = Fraction(num, rng.randint(1, 5))
        if complex_coeffs and rng.random() < 0.5:
            c = QQi(c, Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        terms[e] = c
    if nonzero and not terms:
        terms[(1,) + (0,) * (dim - 1)] = Fraction(1)
    return TruncatedSeries(dim, trunc, terms)


def random_order(rng, dim):
    weights = [Fraction(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(dim)]
    return MonomialOrder(weights, rng.choice(["lex", "revlex"]))


def fixed_germs(dim, trunc):
    """The benchmark germ set, embedded into the requested dimension."""
    pad = (0,) * (dim - 2)
    mk = lambda terms: TruncatedSeries(dim, trunc, {e + pad: c for e, c in terms.items()})
    return [
        ("x1*x2", mk({(1, 1): 1}), MonomialOrder([1] * dim)),
        ("x1^2*x2", mk({(2, 1): 1}), MonomialOrder([1] * dim)),
        ("x2^2-x1^3", mk({(0, 2): 1, (3, 0): -1}),
         MonomialOrder([Fraction(1), Fraction(2)] + [Fraction(1)] * (dim - 2))),
        ("x1^2+x2^2", mk({(2, 0): 1, (0, 2): 1}),
         MonomialOrder([Fraction(1), Fraction(2)] + [Fraction(1)] * (dim - 2))),
    ]


def monomials_upto(dim, bound):
    if dim == 1:
        return [(k,) for k in range(bound + 1)]
    out = []
    for rest in monomials_upto(dim - 1, bound):
        for k in range(bound - sum(rest) + 1):
            out.append((k,) + rest)
    return out


def solve_exact(rows, rhs):
    """Gaussian elimination over the rationals; returns None if inconsistent.

    rows: list of lists (Fraction), rhs: list (Fraction).  Requires full
    column rank (asserts no free pivots among used columns).
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows, ncols = len(m), len(m[0]) - 1
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        scale = m[r][c]
        m[r] = [x / scale for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    # consistency
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            return None
    assert len(pivots) == ncols, "oracle system has free variables"
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol


def expansion_oracle(f, germ, depth):
    """Independent linear-solve oracle for the germ-power expansion.

    Sets up the linear system  f = sum_{n<depth} g_n P^n + q P^depth
    modulo terms of degree > f.trunc, with g_n supported on cone-avoiding
    monomials m satisfying deg(m + n*lead) <= trunc (the jointly
    determined window) and q on monomials with deg(m + depth*lead) <= trunc,
    and solves it by exact Gaussian elimination.  Returns the list of g_n
    as coefficient dicts.
    """
    trunc = f.trunc
    lead_deg = germ.lead_degree
    p_pows = [TruncatedSeries.one(f.dim, trunc)]
    for _ in range(depth):
        p_pows.append(p_pows[-1] * germ.p)
    unknowns = []
    columns = []
    for n in range(depth + 1):
        bound = trunc - n * lead_deg
        if bound < 0:
            break
        for mexp in monomials_upto(f.dim, bound):
            if n < depth and not delta_member(mexp, germ):
                continue
            col = TruncatedSeries.monomial(mexp, 1, trunc) * p_pows[n]
            unknowns.append((n, mexp))
            columns.append(col.terms)
    exps = monomials_upto(f.dim, trunc)
    rows = [[Fraction(col.get(e, 0)) for col in columns] for e in exps]
    rhs = [Fraction(f.terms.get(e, 0)) for e in exps]
    sol = solve_exact(rows, rhs)
    assert sol is not None, "oracle system inconsistent"
    out = [dict() for _ in range(depth)]
    for (n, mexp), c in zip(unknowns, sol):
        if n < depth and c != 0:
            out[n][mexp] = c
    return out
