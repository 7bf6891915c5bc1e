"""Exact rational two-phase simplex with Bland's rule.

Solves ``min c.x  s.t.  A x = b,  x >= 0`` over the rationals.  The tableau
is stored as one sparse dict per row, which keeps incidence-matrix
problems cheap.  The optimal basis comes back with the dual vector ``y``
so that the optimum can be re-verified by plain matrix arithmetic
(``c - A^T y >= 0`` and ``c.x = b.y``).
"""
from dataclasses import dataclass, field
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    value: Fraction = None
    x: dict = field(default_factory=dict)
    y: list = None
    basis: tuple = ()
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.obj = {}
        self.z = Fraction(0)
        self.pivots = 0

    def pivot(self, r, j):
        row = self.rows[r]
        piv = row[j]
        if piv != 1:
            inv = 1 / piv
            row = {k: v * inv for k, v in row.items()}
            self.rows[r] = row
            self.rhs[r] *= inv
        b = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(j)
            if f is None:
                continue
            _axpy(other, -f, row)
            self.rhs[i] -= f * b
        f = self.obj.get(j)
        if f is not None:
            _axpy(self.obj, -f, row)
            self.z += f * b
        self.basis[r] = j
        self.pivots += 1

    def run(self, allowed):
        """Bland's rule until optimal; returns False if unbounded."""
        while True:
            j = min((k for k, d in self.obj.items() if d < 0 and allowed(k)), default=None)
            if j is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(j)
                if a is not None and a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], j)


def _axpy(target, f, row):
    """target += f * row, dropping zeros."""
    for k, v in row.items():
        x = target.get(k, 0) + f * v
        if x:
            target[k] = x
        else:
            target.pop(k, None)


def solve_lp(rows, b, c):
    """Minimise c.x subject to rows . x = b, x >= 0.

    ``rows`` is a list of sparse dicts (column -> coefficient), ``b`` the
    right-hand side and ``c`` the full cost vector (its length fixes the
    number of columns).
    """
    n = len(c)
    m = len(rows)
    c = [Fraction(x) for x in c]
    signs = []
    trows, rhs = [], []
    for i, (row, bi) in enumerate(zip(rows, b)):
        bi = Fraction(bi)
        s = -1 if bi < 0 else 1
        signs.append(s)
        r = {k: Fraction(v) * s for k, v in row.items() if v}
        r[n + i] = Fraction(1)
        trows.append(r)
        rhs.append(bi * s)
    T = _Tableau(trows, rhs, [n + i for i in range(m)])

    # phase 1: minimise the sum of artificials
    for i, row in enumerate(trows):
        for k, v in row.items():
            if k < n:
                T.obj[k] = T.obj.get(k, 0) - v
        T.z += rhs[i]
    T.obj = {k: v for k, v in T.obj.items() if v}
    T.run(lambda k: True)
    if T.z > 0:
        return LPResult(INFEASIBLE, pivots=T.pivots)

    # drive zero-level artificials out of the basis where possible
    for i in range(m):
        if T.basis[i] >= n:
            k = min((k for k in T.rows[i] if k < n), default=None)
            if k is not None:
                T.pivot(i, k)

    # phase 2
    obj = {k: c[k] for k in range(n) if c[k]}
    z = Fraction(0)
    for i in range(m):
        cb = c[T.basis[i]] if T.basis[i] < n else 0
        if cb:
            _axpy(obj, -cb, T.rows[i])
            z += cb * T.rhs[i]
    T.obj, T.z = obj, z
    if not T.run(lambda k: k < n):
        return LPResult(UNBOUNDED, pivots=T.pivots)

    x = {T.basis[i]: T.rhs[i] for i in range(m) if T.basis[i] < n and T.rhs[i]}
    y = [-T.obj.get(n + i, 0) * signs[i] for i in range(m)]
    return LPResult(OPTIMAL, T.z, x, y, tuple(T.basis), T.pivots)


def verify_certificate(rows, b, c, x, y):
    """Primal feasibility, dual feasibility and zero duality gap, checked directly."""
    n = len(c)
    if any(v < 0 for v in x.values()):
        return False
    for row, bi in zip(rows, b):
        if sum((Fraction(v) * x.get(k, 0) for k, v in row.items()), Fraction(0)) != bi:
            return False
    aty = [Fraction(0)] * n
    for yi, row in zip(y, rows):
        for k, v in row.items():
            aty[k] += yi * v
    if any(Fraction(c[k]) - aty[k] < 0 for k in range(n)):
        return False
    primal = sum((Fraction(c[k]) * v for k, v in x.items()), Fraction(0))
    dual = sum((yi * Fraction(bi) for yi, bi in zip(y, b)), Fraction(0))
    return primal == dual
