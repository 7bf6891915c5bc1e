"""Finite groups given by multiplication tables.

Elements are the integers ``0 .. order-1``.  Everything here is immutable
once built, so groups, subgroups and homomorphisms can be shared freely.
"""
import random
from dataclasses import dataclass, field

from .errors import NotAGroup

# full O(n^3) associativity check up to this order, sampled above it
ASSOC_FULL_LIMIT = 64
ASSOC_SAMPLES = 10_000


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    mult: tuple
    identity: int
    inv: tuple
    element_names: tuple = None

    def mul(self, g, h):
        return self.mult[g][h]

    def name(self, g):
        if self.element_names is None:
            return str(g)
        return self.element_names[g]

    def index_of(self, name):
        """Resolve an element name (or a decimal index) to an element index."""
        if self.element_names is not None and name in self.element_names:
            return self.element_names.index(name)
        g = int(name)
        if not 0 <= g < self.order:
            raise ValueError(f"element {name!r} out of range")
        return g

    def product(self, elems):
        g = self.identity
        for h in elems:
            g = self.mult[g][h]
        return g

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def make_group(table, names=None, assoc_full_limit=ASSOC_FULL_LIMIT, seed=0):
    """Validate a multiplication table and return the group it defines.

    Raises NotAGroup naming the witness (row, column, element or triple).
    """
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotAGroup(f"row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if not isinstance(x, int) or not 0 <= x < n:
                raise NotAGroup(f"entry ({i},{j}) = {x!r} out of range")
        rows.append(tuple(row))
    full = set(range(n))
    for i, row in enumerate(rows):
        if set(row) != full:
            raise NotAGroup(f"row {i} is not a permutation")
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise NotAGroup(f"column {j} is not a permutation")

    e = None
    for g in range(n):
        if all(rows[g][h] == h for h in range(n)):
            e = g
            break
    if e is None or any(rows[h][e] != h for h in range(n)):
        raise NotAGroup("no two-sided identity")

    inv = [None] * n
    for g in range(n):
        h = rows[g].index(e)
        if rows[h][g] != e:
            raise NotAGroup(f"element {g} has no two-sided inverse")
        inv[g] = h

    if n <= assoc_full_limit:
        triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                   for _ in range(ASSOC_SAMPLES))
    for a, b, c in triples:
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NotAGroup(f"associativity fails on triple ({a}, {b}, {c})")

    if names is not None:
        names = tuple(str(x) for x in names)
        if len(names) != n or len(set(names)) != n:
            raise NotAGroup(f"element_names must be {n} distinct labels")
    return FiniteGroup(n, tuple(rows), e, tuple(inv), names)


def cyclic_group(n):
    return make_group([[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(G, H):
    n, m = G.order, H.order
    table = [[G.mult[a // m][b // m] * m + H.mult[a % m][b % m] for b in range(n * m)]
             for a in range(n * m)]
    return make_group(table)


def symmetric_group(k):
    from itertools import permutations
    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return make_group(table)


@dataclass(frozen=True)
class SubgroupHandle:
    parent: FiniteGroup
    elements: tuple
    left_transversal: tuple
    # coset_rep[g] is the transversal element t with g in tH
    coset_rep: tuple = field(repr=False)

    @property
    def order(self):
        return len(self.elements)

    @property
    def index(self):
        return len(self.left_transversal)

    def __contains__(self, g):
        return self.coset_rep[g] == self.parent.identity


def subgroup_closure(G, gens):
    """Smallest subgroup of G containing gens, with its canonical left transversal."""
    elements = {G.identity}
    frontier = [G.identity]
    gens = sorted(set(gens))
    for g in gens:
        if not 0 <= g < G.order:
            raise ValueError(f"generator {g} out of range")
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mult[x][g]
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return _handle(G, elements)


def _handle(G, elements):
    elements = tuple(sorted(elements))
    rep = [None] * G.order
    transversal = []
    for g in range(G.order):
        if rep[g] is None:
            # g is the smallest index in its coset gH
            transversal.append(g)
            for h in elements:
                rep[G.mult[g][h]] = g
    # identity has the smallest index only if it is 0; force it to represent H
    if G.identity != 0:
        t0 = rep[G.identity]
        transversal[transversal.index(t0)] = G.identity
        for g in range(G.order):
            if rep[g] == t0:
                rep[g] = G.identity
        transversal.sort(key=lambda t: (t != G.identity, t))
    return SubgroupHandle(G, elements, tuple(transversal), tuple(rep))


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple

    def __call__(self, g):
        return self.image[g]


@dataclass(frozen=True)
class HomCheck:
    is_hom: bool
    injective: bool
    witness: tuple = None

    def __bool__(self):
        return self.is_hom


def check_hom(f):
    """Check multiplicativity on all pairs; report injectivity separately."""
    S, T, img = f.source, f.target, f.image
    if len(img) != S.order or any(not 0 <= x < T.order for x in img):
        raise ValueError("image table does not match source/target orders")
    injective = len(set(img)) == S.order
    for g in range(S.order):
        for h in range(S.order):
            if img[S.mult[g][h]] != T.mult[img[g]][img[h]]:
                return HomCheck(False, injective, (g, h))
    return HomCheck(True, injective)


def image_subgroup(f):
    return _handle(f.target, set(f.image))
