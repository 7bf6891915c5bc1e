"""Words and canonical normal forms in an amalgamated free product A *_C B.

A word is a plain tuple of :class:`Letter`.  The canonical form of an
element is ``t_1 t_2 ... t_n c`` where the ``t_i`` are left-transversal
representatives of the embedded copy of C in alternating factors and
``c`` in C is absorbed into the last letter.  An element of C alone is
written as a single A-letter; the identity is the empty tuple.
"""
from collections import namedtuple

from .errors import NotWeaklyCyclicallyReduced
from .groups import GroupHom, check_hom, image_subgroup

Letter = namedtuple("Letter", "factor elem")

FACTORS = ("A", "B")


class AmalgamContext:
    """The data A, B, C and the embeddings C -> A, C -> B.

    Construction validates both embeddings and precomputes, for every
    element g of each factor, the decomposition g = t * iota(c) with t the
    canonical transversal representative of g*iota(C).
    """

    def __init__(self, A, B, C, iota_A, iota_B):
        if not isinstance(iota_A, GroupHom):
            iota_A = GroupHom(C, A, tuple(iota_A))
        if not isinstance(iota_B, GroupHom):
            iota_B = GroupHom(C, B, tuple(iota_B))
        for name, f in (("iota_A", iota_A), ("iota_B", iota_B)):
            res = check_hom(f)
            if not res.is_hom:
                raise ValueError(f"{name} is not a homomorphism (witness {res.witness})")
            if not res.injective:
                raise ValueError(f"{name} is not injective")
        self.A, self.B, self.C = A, B, C
        self.iota_A, self.iota_B = iota_A, iota_B
        self.groups = {"A": A, "B": B}
        self.iota = {"A": iota_A.image, "B": iota_B.image}
        self.subgroups = {"A": image_subgroup(iota_A), "B": image_subgroup(iota_B)}
        self.transversal = {f: self.subgroups[f].left_transversal for f in FACTORS}
        self.rep = {}
        self.cpart = {}
        for f in FACTORS:
            G = self.groups[f]
            back = {x: c for c, x in enumerate(self.iota[f])}
            rep = self.subgroups[f].coset_rep
            self.rep[f] = rep
            self.cpart[f] = tuple(back[G.mult[G.inv[rep[g]]][g]] for g in range(G.order))

    @property
    def index_A(self):
        return len(self.transversal["A"])

    @property
    def index_B(self):
        return len(self.transversal["B"])

    def in_C(self, letter):
        f, x = letter
        return self.rep[f][x] == self.groups[f].identity

    def c_letter(self, c):
        """The element c of C written as an A-letter."""
        return Letter("A", self.iota["A"][c])

    def letter_rep(self, letter):
        """Factor-tagged coset representative of a letter: its class modulo right C."""
        return (letter.factor, self.rep[letter.factor][letter.elem])


def normal_form(ctx, w):
    """Canonical normal form of the product of the letters of w."""
    reps = []
    C = ctx.C
    c = C.identity
    groups, iota, rep, cpart = ctx.groups, ctx.iota, ctx.rep, ctx.cpart
    for f, x in w:
        F = groups[f]
        y = F.mult[iota[f][c]][x]
        if reps and reps[-1][0] == f:
            y = F.mult[reps.pop()[1]][y]
        t = rep[f][y]
        c = cpart[f][y]
        if t != F.identity:
            reps.append((f, t))
    if not reps:
        if c == C.identity:
            return ()
        return (ctx.c_letter(c),)
    f, t = reps[-1]
    reps[-1] = (f, groups[f].mult[t][iota[f][c]])
    return tuple(Letter(f, x) for f, x in reps)


def multiply(ctx, u, v):
    return normal_form(ctx, tuple(u) + tuple(v))


def invert(ctx, u):
    return normal_form(ctx, tuple(Letter(f, ctx.groups[f].inv[x]) for f, x in reversed(u)))


def is_reduced(ctx, w):
    n = len(w)
    if n == 0:
        return True
    if n == 1:
        f, x = w[0]
        return x != ctx.groups[f].identity
    for i in range(n):
        if ctx.in_C(w[i]):
            return False
        if i and w[i].factor == w[i - 1].factor:
            return False
    return True


def is_cyclically_reduced(ctx, w):
    if not is_reduced(ctx, w):
        return False
    return len(w) <= 1 or w[-1].factor != w[0].factor


def is_weakly_cyclically_reduced(ctx, w):
    if not is_reduced(ctx, w):
        return False
    if len(w) <= 1:
        return True
    if w[-1].factor != w[0].factor:
        # a product of letters from A\C and B\C never lies in C
        return True
    f = w[0].factor
    prod = ctx.groups[f].mult[w[-1].elem][w[0].elem]
    return not ctx.in_C(Letter(f, prod))


def is_semi_reduced(ctx, w):
    """Conditions (1), (2'), (3), (4): successive products avoid C."""
    n = len(w)
    if n == 0:
        return True
    if n == 1:
        f, x = w[0]
        return x != ctx.groups[f].identity
    if any(ctx.in_C(x) for x in w):
        return False
    for a, b in zip(w, w[1:]):
        if a.factor == b.factor and ctx.in_C(Letter(a.factor, ctx.groups[a.factor].mult[a.elem][b.elem])):
            return False
    return True


def conjugate_by_c(ctx, w, c):
    """c^-1 w c for c in C, in normal form."""
    C = ctx.C
    return normal_form(ctx, (ctx.c_letter(C.inv[c]),) + tuple(w) + (ctx.c_letter(c),))


def cyclic_shift(ctx, w, k=1):
    w = tuple(w)
    k %= max(len(w), 1)
    return normal_form(ctx, w[k:] + w[:k])


def weakly_cyclic_conjugates(ctx, w):
    """All weakly cyclically reduced words reachable from w by cyclic
    shifts of letters and conjugation by elements of C (normal forms)."""
    if not is_weakly_cyclically_reduced(ctx, w):
        raise NotWeaklyCyclicallyReduced(w)
    start = normal_form(ctx, w)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        moves = [cyclic_shift(ctx, u)]
        moves.extend(conjugate_by_c(ctx, u, c) for c in range(ctx.C.order))
        for v in moves:
            if v and v not in seen and is_weakly_cyclically_reduced(ctx, v):
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


def word_str(ctx, w):
    if not w:
        return "1"
    return " ".join(f + ctx.groups[f].name(x) for f, x in w)


def modular_context():
    """Z/4 *_{Z/2} Z/6, the amalgam decomposition of SL(2, Z)."""
    from .groups import cyclic_group
    return AmalgamContext(cyclic_group(4), cyclic_group(6), cyclic_group(2), (0, 2), (0, 3))
