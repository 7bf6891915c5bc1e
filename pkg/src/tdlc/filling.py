"""Filling norms by exact L1 minimisation, isoperimetric scans and 0-dimensional distortion."""
import csv
import io
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import RationalChain, boundary, l1_norm, loop_to_chain, CombinatorialLoop
from .errors import DegreeMismatch, Disconnected, Infeasible
from .simplex import INFEASIBLE, OPTIMAL, solve_lp


@dataclass
class FillingResult:
    value: Fraction
    witness: RationalChain
    # dual cochain on the cells of the input degree; LP basis (column p < k is
    # sigma+ of columns[p], k <= p < 2k is sigma-, larger p are artificials)
    dual: dict = field(default_factory=dict)
    basis: tuple = ()
    columns: tuple = ()


def _lp_data(X, c, allowed):
    d = c.degree
    if d not in (0, 1):
        raise DegreeMismatch(f"cannot fill a degree-{d} chain in a 2-complex")
    M = X.boundary_matrix(d + 1)
    cols = tuple(sorted(allowed)) if allowed is not None else tuple(range(M.cols))
    pos = {j: k for k, j in enumerate(cols)}
    k = len(cols)
    by_row = {}
    for (i, j), q in M.entries.items():
        if j in pos:
            by_row.setdefault(i, {})[pos[j]] = q
    cells = sorted(set(by_row) | set(c.coeffs))
    rows, rhs = [], []
    for i in cells:
        r = by_row.get(i, {})
        # sigma = sigma+ - sigma-: column p for sigma+, k + p for sigma-
        rows.append({**r, **{k + p: -q for p, q in r.items()}})
        rhs.append(c[i])
    return cols, cells, rows, rhs


def filling_norm(X, c, allowed=None):
    """Minimum l1 norm of a chain one degree up whose boundary is c.

    ``allowed`` restricts the filling cells (e.g. to interior faces).
    Raises Infeasible when c is not a boundary.
    """
    cols, cells, rows, rhs = _lp_data(X, c, allowed)
    if not c:
        return FillingResult(Fraction(0), RationalChain(c.degree + 1), {}, (), cols)
    k = len(cols)
    if any(not r and q for r, q in zip(rows, rhs)):
        raise Infeasible("chain is not a boundary")
    res = solve_lp(rows, rhs, [1] * (2 * k))
    if res.status == INFEASIBLE:
        raise Infeasible("chain is not a boundary")
    assert res.status == OPTIMAL
    sigma = {}
    for p, v in res.x.items():
        j = cols[p % k]
        sigma[j] = sigma.get(j, 0) + (v if p < k else -v)
    dual = {i: y for i, y in zip(cells, res.y) if y}
    return FillingResult(res.value, RationalChain(c.degree + 1, sigma), dual, res.basis, cols)


def verify_filling(X, c, result):
    """Independent check of a FillingResult: the witness fills c, every allowed
    cell satisfies |<dual, boundary(cell)>| <= 1, and the dual pairing with c
    equals the witness norm."""
    if boundary(X, result.witness) != c:
        return False
    if l1_norm(result.witness) != result.value:
        return False
    if any(j not in result.columns for j in result.witness.coeffs):
        return False
    M = X.boundary_matrix(c.degree + 1)
    pairing = {}
    for (i, j), q in M.entries.items():
        y = result.dual.get(i)
        if y:
            pairing[j] = pairing.get(j, 0) + y * q
    if any(abs(pairing.get(j, 0)) > 1 for j in result.columns):
        return False
    return sum((y * c[i] for i, y in result.dual.items()), Fraction(0)) == result.value


@dataclass
class IsoperimetricScanReport:
    max_ratio: Fraction
    loop_count: int
    # loop length -> (worst ratio, witness loop, filling value)
    per_length: dict
    infeasible: list

    def csv(self):
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["length", "worst_ratio", "fill", "base"])
        for n in sorted(self.per_length):
            ratio, loop, value = self.per_length[n]
            w.writerow([n, str(ratio), str(value), loop.base])
        return buf.getvalue()


def _canonical_cycle(X, steps):
    """Key identifying a closed path up to rotation and reversal."""
    n = len(steps)
    rev = tuple((e, -s) for e, s in reversed(steps))
    return min(min(seq[i:] + seq[:i] for i in range(n)) for seq in (tuple(steps), rev))


def enumerate_loops(X, max_len, bases=None):
    """Non-backtracking combinatorial loops of length <= max_len, one per
    unbased cycle, starting at the given base vertices (default: interior)."""
    if bases is None:
        bases = [v for v in range(X.n_vertices) if v not in X.frontier]
    adj = X.adjacency()
    seen = set()
    out = []
    for base in sorted(bases):
        stack = [(base, (), None)]
        while stack:
            x, path, last = stack.pop()
            for y, e, s in reversed(adj[x]):
                if e == last:
                    continue
                step = path + ((e, s),)
                if y == base:
                    # cyclically non-backtracking: closing edge differs from the first
                    if step[0][0] != e:
                        key = _canonical_cycle(X, step)
                        if key not in seen:
                            seen.add(key)
                            out.append(CombinatorialLoop(base, step))
                    continue
                if len(step) < max_len:
                    stack.append((y, step, e))
    out.sort(key=lambda c: (len(c), c.base, c.steps))
    return out


def _fill_value(X, loop, allowed):
    chain = loop_to_chain(X, loop)
    norm = l1_norm(chain)
    if not norm:
        return norm, None
    try:
        return norm, filling_norm(X, chain, allowed).value
    except Infeasible:
        return norm, None


def isoperimetric_scan(X, max_len, loops=None, allowed=None, workers=1):
    """Worst ratio filling_norm(c) / l1(c) over combinatorial loops c.

    ``X`` is a TwoComplexBall (or anything with a ``complex`` attribute).
    Loops default to enumerate_loops(X, max_len).  Loops that cannot be
    filled inside the ball are listed as infeasible rather than failing.
    With workers > 1 the LPs run in a process pool; the report does not
    depend on the schedule.
    """
    X = getattr(X, "complex", X)
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    if loops is None:
        loops = enumerate_loops(X, max_len)
    loops = list(loops)
    if workers > 1 and len(loops) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_fill_value, repeat(X), loops, repeat(allowed), chunksize=8))
    else:
        values = [_fill_value(X, loop, allowed) for loop in loops]
    best = Fraction(0)
    per_length = {}
    infeasible = []
    count = 0
    for loop, (norm, value) in zip(loops, values):
        if not norm:
            continue
        count += 1
        if value is None:
            infeasible.append(loop)
            continue
        ratio = value / norm
        n = len(loop)
        if n not in per_length or ratio > per_length[n][0]:
            per_length[n] = (ratio, loop, value)
        best = max(best, ratio)
    return IsoperimetricScanReport(best, count, per_length, infeasible)


@dataclass
class DistortionRow:
    vertex: int
    distance: int
    value: Fraction
    l1: Fraction


def zero_dim_distortion(G, v0):
    """For every vertex v, the filling norm of v - v0 by 1-chains, next to
    the graph distance and the (constant) l1 norm of v - v0."""
    X = getattr(G, "complex", G)
    dist = X.distances(v0)
    if any(d < 0 for d in dist):
        raise Disconnected("graph ball is not connected")
    rows = []
    for v in range(X.n_vertices):
        alpha = RationalChain.cell(0, v) - RationalChain.cell(0, v0)
        value = filling_norm(X, alpha).value if v != v0 else Fraction(0)
        rows.append(DistortionRow(v, dist[v], value, l1_norm(alpha)))
    return rows
