"""Symmetrized relator sets, pieces, the C'(lambda) condition and Dehn's algorithm."""
import random
from dataclasses import dataclass
from fractions import Fraction

from .amalgam import (
    Letter, cyclic_shift, invert, is_weakly_cyclically_reduced, multiply, normal_form,
    weakly_cyclic_conjugates,
)
from .errors import NotWeaklyCyclicallyReduced, SmallCancellationViolated, StepBudgetExceeded

DEHN_STEP_BUDGET = 100_000


def relator_key(r):
    """Deterministic order on relators: shortest first, then lexicographic."""
    return (len(r), r)


def rep_sequence(ctx, w):
    return tuple(ctx.letter_rep(x) for x in w)


class SymmetrizedSet:
    def __init__(self, ctx, relators):
        self.ctx = ctx
        self.relators = tuple(sorted(set(relators), key=relator_key))
        self._reps = {r: rep_sequence(ctx, r) for r in self.relators}
        self._dehn_index = None
        self._c6 = None

    def __len__(self):
        return len(self.relators)

    def __iter__(self):
        return iter(self.relators)

    def __contains__(self, w):
        return w in self._reps

    @property
    def min_length(self):
        return min((len(r) for r in self.relators), default=0)

    @property
    def max_length(self):
        return max((len(r) for r in self.relators), default=0)

    def reps(self, r):
        return self._reps[r]

    def dehn_index(self):
        """Map rep-sequence of a prefix longer than half its relator -> relators."""
        if self._dehn_index is None:
            index = {}
            for r in self.relators:
                seq = self._reps[r]
                n = len(r)
                for k in range(n // 2 + 1, n + 1):
                    index.setdefault(seq[:k], []).append(r)
            self._dehn_index = index
            self._dehn_lengths = sorted({len(key) for key in index}, reverse=True)
            # every key starts with one of these; a cheap filter per position
            k0 = self._dehn_lengths[-1] if index else 0
            self._dehn_heads = (k0, {key[:k0] for key in index})
        return self._dehn_index


def symmetrize(ctx, R0):
    """Smallest symmetrized set containing the words of R0."""
    out = set()
    for r in R0:
        r = normal_form(ctx, r)
        if not r or not is_weakly_cyclically_reduced(ctx, r):
            raise NotWeaklyCyclicallyReduced(r)
        for s in (r, invert(ctx, r)):
            if s not in out:
                out |= weakly_cyclic_conjugates(ctx, s)
    return SymmetrizedSet(ctx, out)


def is_symmetrized(R):
    ctx = R.ctx
    for r in R:
        if not is_weakly_cyclically_reduced(ctx, r):
            return False
        if invert(ctx, r) not in R:
            return False
        if not weakly_cyclic_conjugates(ctx, r) <= set(R.relators):
            return False
    return True


def _lcp(s, t):
    k = 0
    for a, b in zip(s, t):
        if a != b:
            break
        k += 1
    return k


def is_piece(R, b):
    """Return (True, (r1, r2)) if b is a common prefix, up to right C, of two
    distinct relators; otherwise (False, None)."""
    if not b:
        raise ValueError("a piece must be nonempty")
    seq = rep_sequence(R.ctx, b)
    k = len(seq)
    hits = [r for r in R.relators if len(r) >= k and R.reps(r)[:k] == seq]
    if len(hits) >= 2:
        return True, (hits[0], hits[1])
    return False, None


@dataclass
class CancellationReport:
    lam: Fraction
    max_piece_len: int
    min_relator_len: int
    satisfied: bool
    witness: dict = None


def piece_lengths(R):
    """For every relator, the length of its longest prefix that is a piece."""
    order = sorted(R.relators, key=R.reps)
    out = {}
    for i, r in enumerate(order):
        best = 0
        # with sequences sorted lexicographically the longest common prefix
        # with any other element is attained at a neighbour
        for j in (i - 1, i + 1):
            if 0 <= j < len(order):
                best = max(best, _lcp(R.reps(r), R.reps(order[j])))
        out[r] = best
    return out


def check_cprime(R, lam):
    lam = Fraction(lam)
    if not 0 < lam <= 1:
        raise ValueError("lambda must lie in (0, 1]")
    if not len(R):
        return CancellationReport(lam, 0, 0, True)
    plen = piece_lengths(R)
    max_piece = max(plen.values())
    min_len = R.min_length
    witness = None
    if not min_len > 1 / lam:
        short = R.relators[0]
        witness = {"kind": "short_relator", "relator": short, "length": len(short)}
    else:
        for r in R.relators:
            k = plen[r]
            if not k < lam * len(r):
                partner = min((s for s in R.relators
                               if s != r and _lcp(R.reps(r), R.reps(s)) == k), key=relator_key)
                witness = {"kind": "long_piece", "piece": r[:k], "relator": r,
                           "partner": partner, "length": k}
                break
    return CancellationReport(lam, max_piece, min_len, witness is None, witness)


def _require_c6(R):
    if R._c6 is None:
        R._c6 = check_cprime(R, Fraction(1, 6))
    if not R._c6.satisfied:
        raise SmallCancellationViolated(f"relator set fails C'(1/6): {R._c6.witness}")


def _dehn_step(R, w):
    index = R.dehn_index()
    ctx = R.ctx
    seq = rep_sequence(ctx, w)
    n = len(w)
    k0, heads = R._dehn_heads
    for i in range(n - k0 + 1):
        if seq[i:i + k0] not in heads:
            continue
        for k in R._dehn_lengths:
            if i + k > n:
                continue
            hits = index.get(seq[i:i + k])
            if not hits:
                continue
            r = hits[0]
            # w[i:i+k] = r[:k] * c  and  r[:k] = (r[k:])^-1 modulo N
            c = multiply(ctx, invert(ctx, r[:k]), w[i:i + k])
            return normal_form(ctx, w[:i] + invert(ctx, r[k:]) + c + w[i + k:])
    return None


def dehn_reduce(R, w, max_steps=DEHN_STEP_BUDGET):
    """Apply Dehn's algorithm to w (no cyclic moves); the result equals w in G."""
    _require_c6(R)
    w = normal_form(R.ctx, w)
    if not len(R):
        return w
    steps = 0
    while True:
        nxt = _dehn_step(R, w)
        if nxt is None:
            return w
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(f"Dehn reduction exceeded {max_steps} steps")
        w = nxt


def is_trivial_in_quotient(R, w, max_steps=DEHN_STEP_BUDGET):
    """Word problem in (A *_C B)/<<R>> for C'(1/6) sets."""
    _require_c6(R)
    ctx = R.ctx
    w = normal_form(ctx, w)
    if not len(R):
        return not w
    steps = 0
    while True:
        w = dehn_reduce(R, w, max_steps)
        if not w:
            return True
        # triviality is conjugation invariant: try the cyclic permutations
        progress = None
        for j in range(1, len(w)):
            v = cyclic_shift(ctx, w, j)
            if len(v) < len(w):
                progress = v
                break
            red = _dehn_step(R, v)
            if red is not None:
                progress = red
                break
        if progress is None:
            return False
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(f"cyclic Dehn reduction exceeded {max_steps} steps")
        w = progress


def random_cyclic_word(ctx, length, rng):
    """Random cyclically reduced word of the given even length starting in A."""
    if length % 2:
        raise ValueError("cyclically reduced words of length > 1 have even length")
    out = []
    for i in range(length):
        f = "AB"[i % 2]
        G = ctx.groups[f]
        while True:
            x = rng.randrange(G.order)
            if not ctx.in_C(Letter(f, x)):
                break
        out.append(Letter(f, x))
    return normal_form(ctx, tuple(out))


def search_relators(ctx, length, lam, seed=0, attempts=1000):
    """Random search for a single relator whose symmetrized closure is C'(lam).

    Returns (relator, R, report, attempt) or None if the budget runs out.
    """
    rng = random.Random(seed)
    for attempt in range(attempts):
        r = random_cyclic_word(ctx, length, rng)
        R = symmetrize(ctx, [r])
        report = check_cprime(R, lam)
        if report.satisfied:
            return r, R, report, attempt
    return None
