"""Finite 2-complexes, exact rational chains, l1 norms and chain-level algorithms.

Edges carry a fixed orientation ``(tail, head)``; traversing an edge against
it contributes -1.  A face boundary, like a combinatorial loop, is a tuple
of signed steps ``(edge, sign)`` with ``sign`` in {+1, -1}.
"""
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BoundaryMismatch, DegreeMismatch, DegreeZero, HomotopyIdentityFails, NotACycle,
    NotChainMap, NotClosed, NotIntegral,
)


class RationalChain:
    """Sparse exact-rational chain of a fixed degree; zero coefficients are dropped."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree, coeffs=None):
        self.degree = degree
        self.coeffs = {}
        for i, q in (coeffs or {}).items():
            q = Fraction(q)
            if q:
                self.coeffs[int(i)] = q

    @classmethod
    def cell(cls, degree, i, q=1):
        return cls(degree, {i: q})

    def __getitem__(self, i):
        return self.coeffs.get(i, Fraction(0))

    def _check(self, other):
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, q in other.coeffs.items():
            out[i] = out.get(i, 0) + q
        return RationalChain(self.degree, out)

    def __neg__(self):
        return RationalChain(self.degree, {i: -q for i, q in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        q = Fraction(q)
        return RationalChain(self.degree, {i: q * x for i, x in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalChain):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def is_integral(self):
        return all(q.denominator == 1 for q in self.coeffs.values())

    def support(self):
        return sorted(self.coeffs)

    def __repr__(self):
        body = ", ".join(f"{i}: {q}" for i, q in sorted(self.coeffs.items()))
        return f"RationalChain({self.degree}, {{{body}}})"


def l1_norm(alpha):
    return sum((abs(q) for q in alpha.coeffs.values()), Fraction(0))


def preceq(nu, mu):
    """nu <= mu iff t_e^2 <= t_e s_e for every cell e."""
    if nu.degree != mu.degree:
        raise DegreeMismatch("preceq needs chains of equal degree")
    return all(t * t <= t * mu[e] for e, t in nu.coeffs.items())


class SparseRationalMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows, self.cols = rows, cols
        self.entries = {}
        for (i, j), q in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
            q = Fraction(q)
            if q:
                self.entries[(i, j)] = q

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def from_dense(cls, rows):
        m = len(rows)
        n = len(rows[0]) if m else 0
        return cls(m, n, {(i, j): q for i, row in enumerate(rows) for j, q in enumerate(row)})

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), q in self.entries.items():
            out[i][j] = q
        return out

    @property
    def shape(self):
        return (self.rows, self.cols)

    def column(self, j):
        return {i: q for (i, jj), q in self.entries.items() if jj == j}

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), q in self.entries.items():
            cols[j][i] = q
        return cols

    def __matmul__(self, other):
        if isinstance(other, RationalChain):
            out = {}
            for (i, j), q in self.entries.items():
                x = other.coeffs.get(j)
                if x:
                    out[i] = out.get(i, 0) + q * x
            return out
        if self.cols != other.rows:
            raise DegreeMismatch(f"cannot compose {self.shape} with {other.shape}")
        by_row = {}
        for (k, j), q in other.entries.items():
            by_row.setdefault(k, []).append((j, q))
        out = {}
        for (i, k), p in self.entries.items():
            for j, q in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + p * q
        return SparseRationalMatrix(self.rows, other.cols, out)

    def __add__(self, other):
        if self.shape != other.shape:
            raise DegreeMismatch(f"cannot add {self.shape} and {other.shape}")
        out = dict(self.entries)
        for k, q in other.entries.items():
            out[k] = out.get(k, 0) + q
        return SparseRationalMatrix(self.rows, self.cols, out)

    def __neg__(self):
        return SparseRationalMatrix(self.rows, self.cols, {k: -q for k, q in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def transpose(self):
        return SparseRationalMatrix(self.cols, self.rows, {(j, i): q for (i, j), q in self.entries.items()})

    def __repr__(self):
        return f"SparseRationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def l1_operator_norm(M):
    """Tight l1 -> l1 operator norm: the largest column l1 mass."""
    mass = [Fraction(0)] * M.cols
    for (_, j), q in M.entries.items():
        mass[j] += abs(q)
    return max(mass, default=Fraction(0))


@dataclass(frozen=True)
class CombinatorialLoop:
    base: int
    steps: tuple = ()

    def __len__(self):
        return len(self.steps)


class TwoComplexBall:
    """Finite portion of a cellular 2-complex.

    ``frontier`` holds the vertices on the ball's boundary sphere; an edge or
    face is a frontier cell when it touches such a vertex.
    """

    def __init__(self, n_vertices, edges, faces=(), frontier=(), validate=True):
        self.n_vertices = n_vertices
        self.edges = [tuple(e) for e in edges]
        self.faces = [tuple((int(e), int(s)) for e, s in f) for f in faces]
        self.frontier = frozenset(frontier)
        self.edge_index = {}
        for k, (u, v) in enumerate(self.edges):
            self.edge_index[(u, v)] = (k, 1)
            self.edge_index[(v, u)] = (k, -1)
        self._adj = None
        self._d1 = self._d2 = None
        if validate:
            self.validate()

    def validate(self):
        seen = set()
        for k, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge {k} has an endpoint out of range")
            if u == v:
                raise ValueError(f"edge {k} is a loop")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"edge {k} duplicates an earlier edge")
            seen.add(key)
        for i, face in enumerate(self.faces):
            if not face:
                raise ValueError(f"face {i} has an empty boundary")
            if not self.is_closed_path(face):
                raise NotClosed(f"face {i} boundary is not a closed edge path")
        if self.faces and (self.d1() @ self.d2()).entries:
            raise ValueError("boundary of boundary is not zero")

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def n_faces(self):
        return len(self.faces)

    def step_ends(self, step):
        e, s = step
        u, v = self.edges[e]
        return (u, v) if s > 0 else (v, u)

    def is_closed_path(self, steps, base=None):
        if not steps:
            return True
        ends = [self.step_ends(st) for st in steps]
        if base is not None and ends[0][0] != base:
            return False
        return all(ends[i][1] == ends[(i + 1) % len(ends)][0] for i in range(len(ends)))

    def path_vertices(self, steps):
        ends = [self.step_ends(st) for st in steps]
        return [a for a, _ in ends]

    def adjacency(self):
        """vertex -> sorted list of (neighbour, edge, sign)."""
        if self._adj is None:
            adj = [[] for _ in range(self.n_vertices)]
            for k, (u, v) in enumerate(self.edges):
                adj[u].append((v, k, 1))
                adj[v].append((u, k, -1))
            for a in adj:
                a.sort(key=lambda t: (t[1], t[0]))
            self._adj = adj
        return self._adj

    def degree(self, v):
        return len(self.adjacency()[v])

    def d1(self):
        if self._d1 is None:
            ent = {}
            for k, (u, v) in enumerate(self.edges):
                ent[(v, k)] = 1
                ent[(u, k)] = -1
            self._d1 = SparseRationalMatrix(self.n_vertices, self.n_edges, ent)
        return self._d1

    def d2(self):
        if self._d2 is None:
            ent = {}
            for i, face in enumerate(self.faces):
                for e, s in face:
                    ent[(e, i)] = ent.get((e, i), 0) + s
            self._d2 = SparseRationalMatrix(self.n_edges, self.n_faces, ent)
        return self._d2

    def boundary_matrix(self, degree):
        if degree == 1:
            return self.d1()
        if degree == 2:
            return self.d2()
        if degree == 0:
            raise DegreeZero("degree-0 chains have no boundary")
        raise DegreeMismatch(f"no boundary map in degree {degree}")

    def frontier_edges(self):
        return {k for k, (u, v) in enumerate(self.edges) if u in self.frontier or v in self.frontier}

    def frontier_faces(self):
        fv = self.frontier
        return {i for i, f in enumerate(self.faces)
                if any(self.edges[e][0] in fv or self.edges[e][1] in fv for e, _ in f)}

    def distances(self, source):
        dist = [-1] * self.n_vertices
        dist[source] = 0
        queue = deque([source])
        adj = self.adjacency()
        while queue:
            x = queue.popleft()
            for y, _, _ in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def distance(self, u, v):
        return self.distances(u)[v]

    def n_cells(self, degree):
        return (self.n_vertices, self.n_edges, self.n_faces)[degree]


def boundary(X, alpha):
    if alpha.degree == 0:
        raise DegreeZero("degree-0 chains have no boundary")
    M = X.boundary_matrix(alpha.degree)
    for i in alpha.coeffs:
        if not 0 <= i < M.cols:
            raise IndexError(f"cell {i} out of range in degree {alpha.degree}")
    return RationalChain(alpha.degree - 1, M @ alpha)


def loop_to_chain(X, c):
    if not X.is_closed_path(c.steps, base=c.base if c.steps else None):
        raise NotClosed("combinatorial loop does not close up")
    out = {}
    for e, s in c.steps:
        out[e] = out.get(e, 0) + s
    return RationalChain(1, out)


def _check_integral(mu):
    if not mu.is_integral():
        raise NotIntegral("chain has non-integral coefficients")


def extract_path_chain(X, mu, u, v, m):
    """Given integral mu with boundary m(v - u), return an integral nu with
    boundary v - u, nu <= mu, entries in {-1, 0, 1}, induced by a
    vertex-injective directed path from u to v."""
    _check_integral(mu)
    if mu.degree != 1:
        raise DegreeMismatch("extract_path_chain needs a 1-chain")
    if u == v or m < 1:
        raise ValueError("need distinct endpoints and a positive multiplicity")
    target = RationalChain(0, {v: m, u: -m})
    if boundary(X, mu) != target:
        raise BoundaryMismatch("boundary of mu is not m(v - u)")
    # arcs of the directed multigraph: one direction per edge, with multiplicity |s_e|
    out_arcs = [[] for _ in range(X.n_vertices)]
    for e in sorted(mu.coeffs):
        s = mu.coeffs[e]
        a, b = X.edges[e]
        if s > 0:
            out_arcs[a].append((b, e, 1))
        else:
            out_arcs[b].append((a, e, -1))
    parent = {u: None}
    queue = deque([u])
    while queue and v not in parent:
        x = queue.popleft()
        for y, e, sgn in out_arcs[x]:
            if y not in parent:
                parent[y] = (x, e, sgn)
                queue.append(y)
    if v not in parent:
        raise BoundaryMismatch("no directed path from u to v")
    nu = {}
    x = v
    while parent[x] is not None:
        x, e, sgn = parent[x]
        nu[e] = sgn
    return RationalChain(1, nu)


def decompose_cycle(X, z):
    """Split an integral 1-cycle into loops whose l1 norms add up to l1(z)."""
    _check_integral(z)
    if z.degree != 1:
        raise DegreeMismatch("decompose_cycle needs a 1-chain")
    if boundary(X, z):
        raise NotACycle("chain has nonzero boundary")
    remaining = {e: int(q) for e, q in z.coeffs.items()}
    loops = []
    while remaining:
        e0 = min(remaining)
        a, b = X.edges[e0]
        start = a if remaining[e0] > 0 else b
        path = []       # steps walked so far
        pos = {start: 0}  # vertex -> index into path where it was reached
        x = start
        while True:
            step = _out_step(X, remaining, x)
            path.append(step)
            y = X.step_ends(step)[1]
            _consume(remaining, step)
            if y in pos:
                i = pos[y]
                loops.append(CombinatorialLoop(y, tuple(path[i:])))
                for w in X.path_vertices(path[i:]):
                    pos.pop(w, None)
                del path[i:]
                if not path:
                    break
                pos[y] = i
                x = y
            else:
                pos[y] = len(path)
                x = y
    return loops


def _out_step(X, remaining, x):
    for y, e, sign in X.adjacency()[x]:
        q = remaining.get(e, 0)
        if q * sign > 0:
            return (e, sign)
    raise NotACycle("flow conservation violated")


def _consume(remaining, step):
    e, s = step
    remaining[e] -= s
    if not remaining[e]:
        del remaining[e]


def _family_get(fam, i, rows, cols):
    M = fam.get(i)
    if M is None:
        return SparseRationalMatrix.zero(rows, cols)
    if M.shape != (rows, cols):
        raise DegreeMismatch(f"map in degree {i} has shape {M.shape}, expected {(rows, cols)}")
    return M


def _first_bad_column(M, N):
    diff = (M - N).entries
    return min(j for _, j in diff)


def chain_homotopy_check(f, g, h, d_src, d_dst, n=None):
    """Verify d h + h d = g f - Id on the source complex and return the
    constant bounding the operator norms of g_{n+1}, f_n and h_n.

    Families are dicts degree -> SparseRationalMatrix: f_i, g_i between
    chain groups of equal degree, h_i raising degree by one, and d_i the
    boundary from degree i to i-1.
    """
    top = max(f)
    dim_src = {i: f[i].cols for i in f}
    dim_dst = {i: f[i].rows for i in f}
    dim_src[-1] = dim_dst[-1] = 0
    dim_src[top + 1] = h[top].rows if top in h else 0
    dim_dst[top + 1] = g[top + 1].rows if top + 1 in g else 0
    for i in range(0, top + 1):
        if i not in g:
            raise DegreeMismatch(f"g missing in degree {i}")
    for i in range(1, top + 1):
        ds = _family_get(d_src, i, dim_src[i - 1], dim_src[i])
        dd = _family_get(d_dst, i, dim_dst[i - 1], dim_dst[i])
        fi, fl = f[i], f[i - 1]
        gi, gl = _family_get(g, i, dim_src[i], dim_dst[i]), _family_get(g, i - 1, dim_src[i - 1], dim_dst[i - 1])
        if dd @ fi != fl @ ds:
            raise NotChainMap("f", i, _first_bad_column(dd @ fi, fl @ ds))
        if ds @ gi != gl @ dd:
            raise NotChainMap("g", i, _first_bad_column(ds @ gi, gl @ dd))
    for i in range(0, top + 1):
        d_up = _family_get(d_src, i + 1, dim_src[i], dim_src[i + 1])
        d_here = _family_get(d_src, i, dim_src[i - 1], dim_src[i])
        hi = _family_get(h, i, dim_src[i + 1], dim_src[i])
        hl = _family_get(h, i - 1, dim_src[i], dim_src[i - 1])
        lhs = d_up @ hi + hl @ d_here
        rhs = g[i] @ f[i] - SparseRationalMatrix.identity(dim_src[i])
        if lhs != rhs:
            raise HomotopyIdentityFails(i, _first_bad_column(lhs, rhs))
    if n is None:
        n = max(top - 1, 0)
    norms = [l1_operator_norm(f[n])]
    if n + 1 in g:
        norms.append(l1_operator_norm(g[n + 1]))
    if n in h:
        norms.append(l1_operator_norm(h[n]))
    return max(norms)
