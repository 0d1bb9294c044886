"""Small exact linear algebra over the rationals.

Matrices are lists of rows, entries are ``Fraction``.  The sizes handled here
are tiny (a handful of rows and columns), where plain Gaussian elimination on
``Fraction`` beats converting to a symbolic matrix type.
"""
from fractions import Fraction


def frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(map(frac, r)) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def kernel(rows, ncols):
    """Basis of {x : rows . x = 0} as a list of vectors of length ncols."""
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def row_space(rows, ncols=None):
    return rref(rows, ncols)[0]


def transpose(rows, nrows_if_empty=0):
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def solve(rows, rhs):
    """Unique solution of a square or overdetermined consistent system, else None."""
    n = len(rows[0]) if rows else 0
    aug = [list(map(frac, r)) + [frac(b)] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, n + 1)
    if n in piv or len(piv) < n:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def affine_solutions(rows, rhs, ncols):
    """Parametrize {x : rows . x = rhs} as x0 + T t.

    Returns (x0, T) where T is a list of basis vectors (columns of the
    parametrization), or None when the system is inconsistent.
    """
    if not rows:
        return [Fraction(0)] * ncols, [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    aug = [list(map(frac, r)) + [frac(b)] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x0 = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x0[p] = row[ncols]
    return x0, kernel([r[:ncols] for r in red], ncols)


def normalize_min_one(v):
    """Scale v so that its smallest nonzero absolute entry equals 1 (sign kept)."""
    nz = [abs(x) for x in v if x != 0]
    if not nz:
        return list(v)
    m = min(nz)
    return [x / m for x in v]


# ----------------------------------------------------------------------
# exact linear programming
#
# sympy's simplex (1.14) can report feasible points that violate equality
# constraints, so the few LPs needed here are solved with a plain tableau
# simplex over Fraction using Bland's rule.

def _pivot(T, basis, r, c):
    pv = T[r][c]
    T[r] = [x / pv for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]
    basis[r] = c


def _optimize(T, basis, cost, ncols):
    """Maximize cost over the tableau in place; False if unbounded."""
    while True:
        red = [cost[j] - sum((cost[basis[i]] * T[i][j] for i in range(len(T))), Fraction(0))
               for j in range(ncols)]
        enter = next((j for j in range(ncols) if red[j] > 0), None)
        if enter is None:
            return True
        best = None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)


def simplex(c, A_eq, b_eq):
    """max c.x subject to A_eq x = b_eq and x >= 0.

    Returns ``(status, value, x)`` with status "optimal", "infeasible" or
    "unbounded".
    """
    n = len(c)
    c = [frac(x) for x in c]
    T = []
    for row, b in zip(A_eq, b_eq):
        row, b = [frac(x) for x in row], frac(b)
        if b < 0:
            row, b = [-x for x in row], -b
        T.append(row + [b])
    m = len(T)
    # phase one with artificial columns n .. n+m-1
    T = [r[:n] + [Fraction(int(i == k)) for k in range(m)] + [r[n]] for i, r in enumerate(T)]
    basis = list(range(n, n + m))
    _optimize(T, basis, [Fraction(0)] * n + [Fraction(-1)] * m, n + m)
    if any(T[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return "infeasible", None, None
    keep = []
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                continue  # redundant row
            _pivot(T, basis, i, j)
        keep.append(i)
    T = [T[i][:n] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    if not _optimize(T, basis, c, n):
        return "unbounded", None, None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return "optimal", sum((a * b for a, b in zip(c, x)), Fraction(0)), x


def feasible_point(rows, rhs):
    """A point t with rows . t >= rhs, or None.  Variables are free."""
    d = len(rows[0]) if rows else 0
    if not rows:
        return [Fraction(0)] * d
    k = len(rows)
    # t = u - v, rows.t - s = rhs with u, v, s >= 0
    A = [list(map(frac, r)) + [-frac(x) for x in r] + [Fraction(-int(i == j)) for j in range(k)]
         for i, r in enumerate(rows)]
    status, _, x = simplex([0] * (2 * d + k), A, rhs)
    if status != "optimal":
        return None
    return [x[i] - x[d + i] for i in range(d)]
