"""Bass-Serre tree balls, Cayley-Abels quotient balls, presentation complexes,
the C'(1/6) complex check and four-point hyperbolicity.

A vertex of the Bass-Serre tree is a coset gA or gB.  It is labelled
``(factor, seq)`` where ``seq`` is the tuple of transversal letters of the
normal form of g with any trailing letter of that factor dropped; this is
the unique shortest representative of the coset.
"""
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .amalgam import Letter, invert, multiply, normal_form
from .chains import TwoComplexBall
from .errors import BudgetExceeded, Disconnected
from .filling import _canonical_cycle
from .smallcancel import _require_c6, is_trivial_in_quotient

MAX_VERTICES = 200_000
OTHER = {"A": "B", "B": "A"}


def coset_label(ctx, g, factor):
    """Label of the coset g*factor for a word g."""
    w = normal_form(ctx, g)
    seq = [Letter(f, ctx.rep[f][x]) for f, x in w]
    # a pure C element has trivial representative
    if seq and (seq[-1].factor == factor or seq[-1].elem == ctx.groups[seq[-1].factor].identity):
        seq.pop()
    return (factor, tuple(seq))


def tree_neighbours(ctx, label):
    """Neighbouring cosets of a tree vertex, in transversal order."""
    f, seq = label
    g = OTHER[f]
    out = []
    for t in ctx.transversal[f]:
        if t == ctx.groups[f].identity:
            edge = seq
        else:
            edge = seq + (Letter(f, t),)
        if edge and edge[-1].factor == g:
            out.append((g, edge[:-1]))
        else:
            out.append((g, edge))
    return out


def translate(ctx, w, label):
    """Left action of the word w on a tree vertex label."""
    f, seq = label
    return coset_label(ctx, tuple(w) + seq, f)


@dataclass
class GraphBall:
    complex: TwoComplexBall
    labels: list
    radius: int
    base: int
    dist: list
    index: dict = field(default_factory=dict, repr=False)

    @property
    def n_vertices(self):
        return self.complex.n_vertices

    def vertex(self, label):
        return self.index.get(label)

    def interior(self):
        return [v for v in range(self.n_vertices) if self.dist[v] < self.radius]

    def edge_list_text(self):
        lines = [f"# {self.n_vertices} vertices, {self.complex.n_edges} edges, base {self.base}"]
        lines += [f"{u} {v}" for u, v in self.complex.edges]
        return "\n".join(lines) + "\n"


def _orient(labels, a, b):
    # edges point from the A-vertex to the B-vertex
    return (a, b) if labels[a][0] == "A" else (b, a)


def bass_serre_ball(ctx, radius, max_vertices=MAX_VERTICES):
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    base = ("A", ())
    labels = [base]
    index = {base: 0}
    dist = [0]
    edges = []
    queue = deque([0])
    while queue:
        v = queue.popleft()
        if dist[v] >= radius:
            continue
        for x in tree_neighbours(ctx, labels[v]):
            q = index.get(x)
            if q is None:
                q = len(labels)
                if q >= max_vertices:
                    raise BudgetExceeded(f"Bass-Serre ball exceeds {max_vertices} vertices")
                labels.append(x)
                index[x] = q
                dist.append(dist[v] + 1)
                queue.append(q)
                edges.append(_orient(labels, v, q))
    frontier = [v for v in range(len(labels)) if dist[v] == radius]
    X = TwoComplexBall(len(labels), edges, frontier=frontier)
    return GraphBall(X, labels, radius, 0, dist, index)


def same_vertex_in_quotient(R, x, y):
    """Whether tree vertices x, y (same factor F) map to one vertex of T/N,
    i.e. y^-1 x f lies in N for some f in F."""
    f, xs = x
    g, ys = y
    if f != g:
        return False
    ctx = R.ctx
    u = multiply(ctx, invert(ctx, ys), xs)
    for a in range(ctx.groups[f].order):
        if is_trivial_in_quotient(R, u + (Letter(f, a),)):
            return True
    return False


def cayley_abels_ball(ctx, R, radius, max_vertices=MAX_VERTICES):
    """Ball of the quotient graph T/N around the base A-vertex."""
    if not len(R):
        return bass_serre_ball(ctx, radius, max_vertices)
    _require_c6(R)
    base = ("A", ())
    labels = [base]
    where = {base: 0}
    dist = [0]
    adj = [set()]
    layers = {0: [0]}
    edges = []
    queue = deque([0])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if d >= radius:
            continue
        for x in tree_neighbours(ctx, labels[v]):
            q = where.get(x)
            if q is None:
                # the image of x is a neighbour of v: either already adjacent,
                # or in the next layer
                cands = sorted(adj[v]) + [u for u in layers.get(d + 1, ()) if u not in adj[v]]
                for u in cands:
                    if labels[u][0] == x[0] and same_vertex_in_quotient(R, x, labels[u]):
                        q = u
                        break
            if q is None:
                q = len(labels)
                if q >= max_vertices:
                    raise BudgetExceeded(f"quotient ball exceeds {max_vertices} vertices")
                labels.append(x)
                dist.append(d + 1)
                adj.append(set())
                layers.setdefault(d + 1, []).append(q)
                queue.append(q)
            where[x] = q
            if q not in adj[v]:
                adj[v].add(q)
                adj[q].add(v)
                edges.append(_orient(labels, v, q))
    frontier = [v for v in range(len(labels)) if dist[v] == radius]
    X = TwoComplexBall(len(labels), edges, frontier=frontier)
    ball = GraphBall(X, labels, radius, 0, dist, where)
    return ball


def _locate(R, ball, prev, label):
    """Quotient vertex of a tree coset adjacent to one lying over ``prev``."""
    q = ball.index.get(label)
    if q is not None:
        return q
    X = ball.complex
    for u, _, _ in X.adjacency()[prev]:
        if ball.labels[u][0] == label[0] and same_vertex_in_quotient(R, label, ball.labels[u]):
            ball.index[label] = u
            return u
    return None


def relator_walk(ctx, start, r):
    """Tree cosets visited when reading r from the A-vertex ``start``."""
    g = start[1]
    out = [start]
    for x in r:
        if out[-1][0] != x.factor:
            out.append(coset_label(ctx, g, x.factor))
        g = g + (x,)
    if out[-1][0] != "A":
        out.append(coset_label(ctx, g, "A"))
    return out


@dataclass
class PresentationComplexBall:
    complex: TwoComplexBall
    relators: list
    base: int
    graph: GraphBall
    omitted: int = 0


def presentation_complex_ball(ctx, R, radius, max_vertices=MAX_VERTICES):
    """Quotient ball with one 2-cell per distinct closed relator path inside it."""
    ball = cayley_abels_ball(ctx, R, radius, max_vertices)
    X = ball.complex
    faces, face_rel, seen = [], [], set()
    omitted = 0
    for v in range(X.n_vertices):
        if ball.labels[v][0] != "A":
            continue
        for r in R.relators:
            walk = relator_walk(ctx, ball.labels[v], r)
            verts = [v]
            for label in walk[1:]:
                q = _locate(R, ball, verts[-1], label)
                if q is None:
                    break
                verts.append(q)
            else:
                if verts[-1] != v:
                    raise AssertionError("relator path does not close in the quotient")
                steps = tuple(X.edge_index[(a, b)] for a, b in zip(verts, verts[1:]))
                key = _canonical_cycle(X, steps)
                if key not in seen:
                    seen.add(key)
                    faces.append(steps)
                    face_rel.append(r)
                continue
            omitted += 1
    C2 = TwoComplexBall(X.n_vertices, X.edges, faces, frontier=X.frontier)
    return PresentationComplexBall(C2, face_rel, ball.base, ball, omitted)


@dataclass
class C6Report:
    satisfied: bool
    face_count: int
    max_arc: int
    # (face_i, face_j, arc length) with the largest arc / boundary ratio
    witness: tuple = None
    non_embedded: list = field(default_factory=list)
    omitted_frontier_paths: int = 0


def _longest_common_arc(fi, fj):
    ei = [e for e, _ in fi]
    ej = [e for e, _ in fj]
    pos = {}
    for k, e in enumerate(ej):
        pos.setdefault(e, []).append(k)
    n, m = len(ei), len(ej)
    best = 0
    for p in range(n):
        if ei[p] not in pos:
            continue
        for k0 in pos[ei[p]]:
            for d in (1, -1):
                length = 1
                k = k0
                while length < n and length < m:
                    e = ei[(p + length) % n]
                    k = (k + d) % m
                    if ej[k] != e:
                        break
                    length += 1
                best = max(best, length)
    return best


def check_c6_complex(P):
    """Every pair of distinct faces shares arcs shorter than a sixth of each
    boundary, and every face boundary is an embedded cycle."""
    X = getattr(P, "complex", P)
    faces = X.faces
    non_embedded = [i for i, f in enumerate(faces)
                    if len(set(X.path_vertices(f))) != len(f)]
    by_edge = {}
    for i, f in enumerate(faces):
        for e, _ in f:
            by_edge.setdefault(e, set()).add(i)
    pairs = set()
    for fs in by_edge.values():
        fs = sorted(fs)
        pairs.update((a, b) for k, a in enumerate(fs) for b in fs[k + 1:])
    ok = not non_embedded
    max_arc = 0
    witness = None
    worst = Fraction(-1)
    for i, j in sorted(pairs):
        arc = _longest_common_arc(faces[i], faces[j])
        max_arc = max(max_arc, arc)
        ratio = Fraction(arc, min(len(faces[i]), len(faces[j])))
        if ratio > worst:
            worst, witness = ratio, (i, j, arc)
        if not (6 * arc < len(faces[i]) and 6 * arc < len(faces[j])):
            ok = False
    return C6Report(ok, len(faces), max_arc, witness, non_embedded, getattr(P, "omitted", 0))


def distance_matrix(X):
    n = X.n_vertices
    D = np.empty((n, n), dtype=np.int64)
    for v in range(n):
        D[v] = X.distances(v)
    return D


def four_point_delta(G):
    """Four-point hyperbolicity constant of a connected graph, as a Fraction."""
    X = getattr(G, "complex", G)
    n = X.n_vertices
    if n == 0:
        return Fraction(0)
    D = distance_matrix(X)
    if (D < 0).any():
        raise Disconnected("graph is not connected")
    best = 0
    for x in range(n):
        # S[y, z, w] for the three pairings of {x, y, z, w}
        s1 = D[x][:, None, None] + D[None, :, :]
        s2 = D[x][None, :, None] + D[:, None, :]
        s3 = D[x][None, None, :] + D[:, :, None]
        hi = np.maximum(np.maximum(s1, s2), s3)
        lo = np.minimum(np.minimum(s1, s2), s3)
        mid = s1 + s2 + s3 - hi - lo
        best = max(best, int((hi - mid).max()))
    return Fraction(best, 2)


@dataclass
class GridBall:
    complex: TwoComplexBall
    size: int
    coords: list

    def vertex(self, i, j):
        return i * (self.size + 1) + j

    def square_loop(self, i, j, k):
        """Boundary of the k x k square with lower corner (i, j)."""
        from .chains import CombinatorialLoop
        X = self.complex
        pts = ([(i + t, j) for t in range(k)] + [(i + k, j + t) for t in range(k)]
               + [(i + k - t, j + k) for t in range(k)] + [(i, j + k - t) for t in range(k)])
        pts.append((i, j))
        vs = [self.vertex(a, b) for a, b in pts]
        steps = tuple(X.edge_index[(a, b)] for a, b in zip(vs, vs[1:]))
        return CombinatorialLoop(vs[0], steps)


def grid_ball(size):
    """The square [0, size]^2 of the Z^2 grid with unit square faces."""
    m = size + 1
    vid = lambda i, j: i * m + j
    edges, eidx = [], {}
    for i in range(m):
        for j in range(m):
            for di, dj in ((1, 0), (0, 1)):
                if i + di < m and j + dj < m:
                    eidx[(vid(i, j), vid(i + di, j + dj))] = len(edges)
                    edges.append((vid(i, j), vid(i + di, j + dj)))
    faces = []
    for i in range(size):
        for j in range(size):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            faces.append(((eidx[(a, b)], 1), (eidx[(b, c)], 1), (eidx[(d, c)], -1), (eidx[(a, d)], -1)))
    frontier = [vid(i, j) for i in range(m) for j in range(m) if i in (0, size) or j in (0, size)]
    X = TwoComplexBall(m * m, edges, faces, frontier=frontier)
    return GridBall(X, size, [(i, j) for i in range(m) for j in range(m)])
