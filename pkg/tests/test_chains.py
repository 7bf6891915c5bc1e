import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tdlc.chains import (
    CombinatorialLoop, RationalChain, SparseRationalMatrix, TwoComplexBall, boundary, chain_homotopy_check,
    decompose_cycle, extract_path_chain, l1_norm, l1_operator_norm, loop_to_chain, preceq,
)
from tdlc.errors import (
    BoundaryMismatch, DegreeZero, HomotopyIdentityFails, NotACycle, NotChainMap, NotClosed, NotIntegral,
)

from oracles import (
    bfs, col_norm, homotopy_valid_brute, random_connected_graph, random_homotopy_triple, random_path,
)


def triangle():
    return TwoComplexBall(3, [(0, 1), (1, 2), (0, 2)], [((0, 1), (1, 1), (2, -1))])


def fam(d):
    return {k: SparseRationalMatrix.from_dense(v) for k, v in d.items()}


def test_validation():
    with pytest.raises(ValueError):
        TwoComplexBall(2, [(0, 0)])
    with pytest.raises(ValueError):
        TwoComplexBall(2, [(0, 1), (1, 0)])
    with pytest.raises(NotClosed):
        TwoComplexBall(3, [(0, 1), (1, 2)], [((0, 1), (1, 1))])


def test_boundary_examples():
    X = triangle()
    assert boundary(X, RationalChain(1)) == RationalChain(0)
    assert boundary(X, RationalChain.cell(1, 0)) == RationalChain(0, {1: 1, 0: -1})
    assert boundary(X, boundary(X, RationalChain.cell(2, 0))) == RationalChain(0)
    with pytest.raises(DegreeZero):
        boundary(X, RationalChain.cell(0, 0))
    assert not (X.d1() @ X.d2()).entries


def test_l1_examples():
    assert l1_norm(RationalChain(1)) == 0
    assert l1_norm(RationalChain.cell(2, 0, Fraction(3, 2))) == Fraction(3, 2)
    a, b = RationalChain(1, {0: 1, 1: -2}), RationalChain(1, {2: Fraction(1, 3)})
    assert l1_norm(a + b) == l1_norm(a) + l1_norm(b)


chains = st.dictionaries(st.integers(0, 6), st.fractions(max_denominator=5).filter(lambda q: abs(q) < 10),
                         max_size=6).map(lambda d: RationalChain(1, d))


@settings(max_examples=200, deadline=None)
@given(chains, chains, st.fractions(max_denominator=7))
def test_norm_axioms(a, b, q):
    assert l1_norm(a + b) <= l1_norm(a) + l1_norm(b)
    assert l1_norm(a * q) == abs(q) * l1_norm(a)
    assert (l1_norm(a) == 0) == (not a)


def test_operator_norm_examples():
    assert l1_operator_norm(SparseRationalMatrix.identity(3)) == 1
    assert l1_operator_norm(SparseRationalMatrix.zero(2, 3)) == 0
    M = SparseRationalMatrix.from_dense([[1, -2], [3, 0]])
    assert l1_operator_norm(M) == 4
    # brute force over +-1 basis vectors
    best = max(sum(abs(x) for x in (M @ RationalChain(0, {j: s})).values()) for j in range(2) for s in (1, -1))
    assert best == 4


mats = st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=4))


@settings(max_examples=100, deadline=None)
@given(mats, st.integers(1, 4), st.integers(0, 10_000))
def test_submultiplicative(rows, k, seed):
    rng = random.Random(seed)
    M = SparseRationalMatrix.from_dense(rows)
    N = SparseRationalMatrix.from_dense([[rng.randint(-3, 3) for _ in range(k)] for _ in range(M.cols)])
    assert l1_operator_norm(M @ N) <= l1_operator_norm(M) * l1_operator_norm(N)


def test_loop_examples():
    X = triangle()
    assert loop_to_chain(X, CombinatorialLoop(0, ())) == RationalChain(1)
    tri = loop_to_chain(X, CombinatorialLoop(0, ((0, 1), (1, 1), (2, -1))))
    assert l1_norm(tri) == 3 and not boundary(X, tri)
    assert loop_to_chain(X, CombinatorialLoop(0, ((0, 1), (0, -1)))) == RationalChain(1)
    with pytest.raises(NotClosed):
        loop_to_chain(X, CombinatorialLoop(0, ((0, 1),)))


def test_preceq_examples():
    mu = RationalChain(1, {0: 2, 1: -1})
    assert preceq(RationalChain(1), mu)
    assert preceq(mu, mu)
    assert not preceq(-mu, mu)


def path_graph(n):
    return TwoComplexBall(n, [(i, i + 1) for i in range(n - 1)])


def test_extract_examples():
    X = path_graph(2)
    mu = RationalChain.cell(1, 0)
    assert extract_path_chain(X, mu, 0, 1, 1) == mu
    X = path_graph(4)
    p = RationalChain(1, {0: 1, 1: 1, 2: 1})
    assert extract_path_chain(X, p * 2, 0, 3, 2) == p
    with pytest.raises(NotIntegral):
        extract_path_chain(X, p * Fraction(1, 2), 0, 3, 1)
    with pytest.raises(BoundaryMismatch):
        extract_path_chain(X, p, 0, 2, 1)


def check_postconditions(X, mu, u, v, nu):
    assert set(nu.coeffs.values()) <= {1, -1}
    assert boundary(X, nu) == RationalChain(0, {v: 1, u: -1})
    assert preceq(nu, mu)
    assert l1_norm(nu) >= bfs(X.n_vertices, X.edges, u)[v]
    assert l1_norm(mu) == l1_norm(mu - nu) + l1_norm(nu)
    # vertex-injective: each vertex touched by at most two edges of nu, endpoints once
    touch = {}
    for e in nu.coeffs:
        for x in X.edges[e]:
            touch[x] = touch.get(x, 0) + 1
    assert touch[u] == touch[v] == 1
    assert all(t <= 2 for t in touch.values())


def random_flow(rng, n=12, paths=3, cycles=2):
    edges = random_connected_graph(rng, n, rng.randint(3, 8))
    X = TwoComplexBall(n, edges)
    u, v = rng.sample(range(n), 2)
    mu = RationalChain(1)
    for _ in range(paths):
        p = random_path(rng, n, edges, u, v)
        mu = mu + sum((RationalChain.cell(1, e, s) for e, s in p), RationalChain(1))
    for _ in range(cycles):
        a, b = rng.sample(range(n), 2)
        p = random_path(rng, n, edges, a, b)
        q = random_path(rng, n, edges, b, a)
        mu = mu + sum((RationalChain.cell(1, e, s) for e, s in p + q), RationalChain(1))
    return X, mu, u, v, paths


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_extract_random_flows(seed):
    rng = random.Random(seed)
    X, mu, u, v, m = random_flow(rng)
    if boundary(X, mu) != RationalChain(0, {v: m, u: -m}):
        return
    nu = extract_path_chain(X, mu, u, v, m)
    check_postconditions(X, mu, u, v, nu)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_extract_iterated(seed):
    rng = random.Random(seed)
    X, mu, u, v, m = random_flow(rng)
    rest, total = mu, Fraction(0)
    d = bfs(X.n_vertices, X.edges, u)[v]
    for k in range(m, 0, -1):
        nu = extract_path_chain(X, rest, u, v, k)
        total += l1_norm(nu)
        rest = rest - nu
    assert not boundary(X, rest)
    assert total >= m * d


def figure_eight():
    # triangles 0-1-2 and 0-3-4 sharing vertex 0
    return TwoComplexBall(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


def test_decompose_examples():
    X = figure_eight()
    t1 = RationalChain(1, {0: 1, 1: 1, 2: 1})
    t2 = RationalChain(1, {3: 1, 4: 1, 5: 1})
    assert [loop_to_chain(X, c) for c in decompose_cycle(X, t1)] == [t1]
    assert {frozenset(loop_to_chain(X, c).coeffs.items()) for c in decompose_cycle(X, t1 + t2)} == \
        {frozenset(t1.coeffs.items()), frozenset(t2.coeffs.items())}
    z = t1 * 2 + t2
    loops = decompose_cycle(X, z)
    assert len(loops) == 3
    parts = [loop_to_chain(X, c) for c in loops]
    assert sum(parts, RationalChain(1)) == z
    assert sum(l1_norm(p) for p in parts) == l1_norm(z)
    with pytest.raises(NotACycle):
        decompose_cycle(X, RationalChain.cell(1, 0))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_decompose_random_cycles(seed):
    rng = random.Random(seed)
    X, mu, u, v, m = random_flow(rng, paths=0, cycles=3)
    parts = [loop_to_chain(X, c) for c in decompose_cycle(X, mu)]
    assert sum(parts, RationalChain(1)) == mu
    assert sum(l1_norm(p) for p in parts) == l1_norm(mu)


def test_identity_homotopy():
    I = {0: SparseRationalMatrix.identity(2), 1: SparseRationalMatrix.identity(3)}
    d = {1: SparseRationalMatrix.from_dense([[1, 0, -1], [-1, 1, 0]])}
    h = {0: SparseRationalMatrix.zero(3, 2)}
    assert chain_homotopy_check(I, I, h, d, d) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_random_triples(seed):
    rng = random.Random(seed)
    t = random_homotopy_triple(rng)
    assert homotopy_valid_brute(t)
    C = chain_homotopy_check(fam(t["f"]), fam(t["g"]), fam(t["h"]), fam(t["d_src"]), fam(t["d_dst"]))
    assert C == max(col_norm(t["f"][0]), col_norm(t["g"][1]), col_norm(t["h"][0]))


def test_fault_in_h_column():
    rng = random.Random(7)
    while True:
        t = random_homotopy_triple(rng)
        D = t["d_src"][1]
        # pick a column j of h0 whose perturbation is visible through D
        j = next((j for j in range(len(D)) if any(D[j])), None)
        if j is not None:
            break
    t["h"][0][0][j] += 1
    with pytest.raises(HomotopyIdentityFails) as e:
        chain_homotopy_check(fam(t["f"]), fam(t["g"]), fam(t["h"]), fam(t["d_src"]), fam(t["d_dst"]))
    assert e.value.degree in (0, 1)


def test_not_chain_map():
    d = {1: SparseRationalMatrix.from_dense([[1, -1]])}
    f = {0: SparseRationalMatrix.identity(1), 1: SparseRationalMatrix.from_dense([[1, 0], [0, 0]])}
    g = {0: SparseRationalMatrix.identity(1), 1: SparseRationalMatrix.identity(2)}
    h = {0: SparseRationalMatrix.zero(2, 1)}
    with pytest.raises(NotChainMap):
        chain_homotopy_check(f, g, h, d, d)
