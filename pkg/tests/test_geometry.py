import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tdlc.amalgam import Letter, normal_form
from tdlc.chains import TwoComplexBall
from tdlc.errors import BudgetExceeded, Disconnected, SmallCancellationViolated
from tdlc.geometry import (
    bass_serre_ball, cayley_abels_ball, check_c6_complex, coset_label, four_point_delta, grid_ball,
    presentation_complex_ball, translate, tree_neighbours,
)
from tdlc.smallcancel import random_cyclic_word, symmetrize

from oracles import bfs, delta_brute


def test_radius_zero(ctx):
    T = bass_serre_ball(ctx, 0)
    assert T.n_vertices == 1 and T.labels[0] == ("A", ())


def test_biregular_radius_two(ctx):
    T = bass_serre_ball(ctx, 2)
    X = T.complex
    assert X.degree(T.base) == 2
    for y, _, _ in X.adjacency()[T.base]:
        assert T.labels[y][0] == "B" and X.degree(y) == 3
    assert T.n_vertices == 1 + 2 + 4


def test_tree_interior_acyclic_and_bipartite(ctx):
    for r in range(1, 9):
        T = bass_serre_ball(ctx, r)
        X = T.complex
        # connected with |E| = |V| - 1 is a tree
        assert X.n_edges == X.n_vertices - 1
        assert all(d >= 0 for d in bfs(X.n_vertices, X.edges, 0))
        assert all(T.labels[u][0] != T.labels[v][0] for u, v in X.edges)
        for v in T.interior():
            assert X.degree(v) == (2 if T.labels[v][0] == "A" else 3)


def test_labels_are_cosets(ctx):
    T = bass_serre_ball(ctx, 6)
    for f, seq in T.labels:
        # the label is its own shortest coset representative
        assert coset_label(ctx, seq, f) == (f, seq)
        assert normal_form(ctx, seq) == seq


def test_budget(ctx):
    with pytest.raises(BudgetExceeded):
        bass_serre_ball(ctx, 20, max_vertices=50)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_translation_is_isomorphism(seed):
    from tdlc.amalgam import modular_context
    ctx = modular_context()
    rng = random.Random(seed)
    radius = 8
    T = bass_serre_ball(ctx, radius)
    n = rng.randint(1, radius // 2)
    w = normal_form(ctx, tuple(Letter(f, rng.randrange(ctx.groups[f].order))
                               for f in ("AB"[(i + rng.randint(0, 1)) % 2] for i in range(n))))
    small = [v for v in range(T.n_vertices) if T.dist[v] <= radius - 2 * len(w)]
    image = {v: T.vertex(translate(ctx, w, T.labels[v])) for v in small}
    assert None not in image.values()
    assert len(set(image.values())) == len(image)
    edges = {frozenset(e) for e in T.complex.edges}
    for u, v in T.complex.edges:
        if u in image and v in image:
            assert frozenset((image[u], image[v])) in edges


def test_quotient_without_relators_is_tree(ctx):
    R = symmetrize(ctx, [])
    Q = cayley_abels_ball(ctx, R, 5)
    T = bass_serre_ball(ctx, 5)
    assert Q.labels == T.labels and Q.complex.edges == T.complex.edges


def test_no_identifications_small_radius(ctx, R237):
    # radius <= 14/4: no merges
    Q = cayley_abels_ball(ctx, R237, 3)
    T = bass_serre_ball(ctx, 3)
    assert Q.n_vertices == T.n_vertices and Q.complex.n_edges == T.complex.n_edges


def test_covering_degrees(ctx, R237):
    Q = cayley_abels_ball(ctx, R237, 10)
    X = Q.complex
    for v in Q.interior():
        assert X.degree(v) == (2 if Q.labels[v][0] == "A" else 3)
    # relators close up cycles here
    assert X.n_edges > X.n_vertices - 1


def test_quotient_requires_c6(ctx):
    R = symmetrize(ctx, [random_cyclic_word(ctx, 4, random.Random(0))])
    with pytest.raises(SmallCancellationViolated):
        cayley_abels_ball(ctx, R, 3)


def test_complex_faces(ctx, R237):
    P = presentation_complex_ball(ctx, R237, 10)
    X = P.complex
    assert X.n_faces >= 1
    assert all(len(f) == 14 for f in X.faces)
    assert all(len(r) == len(f) for r, f in zip(P.relators, X.faces))
    on_face = {P.graph.labels[v][0] for f in X.faces for v in X.path_vertices(f)}
    assert on_face == {"A", "B"}
    assert P.omitted > 0
    assert X.n_faces == len({frozenset(e for e, _ in f) for f in X.faces})


def test_no_faces_without_relators(ctx):
    P = presentation_complex_ball(ctx, symmetrize(ctx, []), 4)
    assert P.complex.n_faces == 0


def test_c6_on_complex(ctx, R237):
    rep = check_c6_complex(presentation_complex_ball(ctx, R237, 10))
    assert rep.satisfied and rep.max_arc < Fraction(14, 6)
    assert not rep.non_embedded


def test_c6_toy_examples():
    # two hexagons 0..5 and 0,6..10 sharing only vertex 0
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (6, 7), (7, 8), (8, 9), (9, 10), (10, 0)]
    X = TwoComplexBall(11, edges, [tuple((k, 1) for k in range(6)), tuple((k, 1) for k in range(6, 12))])
    assert check_c6_complex(X).satisfied
    # two 6-cycles sharing one edge: arc 1 = ceil(6/6) violates
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 6), (6, 7), (7, 8), (8, 9), (9, 0)]
    f1 = tuple((k, 1) for k in range(6))
    f2 = ((0, 1), (6, 1), (7, 1), (8, 1), (9, 1), (10, 1))
    rep = check_c6_complex(TwoComplexBall(10, edges, [f1, f2]))
    assert not rep.satisfied and rep.witness == (0, 1, 1)


def cycle_graph(n):
    return TwoComplexBall(n, [(i, (i + 1) % n) for i in range(n)])


def test_delta_examples(ctx):
    assert four_point_delta(bass_serre_ball(ctx, 6)) == 0
    assert four_point_delta(TwoComplexBall(1, [])) == 0
    C12 = cycle_graph(12)
    assert four_point_delta(C12) == delta_brute(12, C12.edges)
    with pytest.raises(Disconnected):
        four_point_delta(TwoComplexBall(2, []))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_delta_random_graphs(seed):
    from oracles import random_connected_graph
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    edges = random_connected_graph(rng, n, rng.randint(0, 5))
    assert four_point_delta(TwoComplexBall(n, edges)) == delta_brute(n, edges)


def test_delta_monotone(ctx, R237):
    vals = [four_point_delta(cayley_abels_ball(ctx, R237, r)) for r in (4, 6, 8)]
    assert vals == sorted(vals)
    g = [four_point_delta(grid_ball(k)) for k in (1, 2, 3)]
    assert g == sorted(g) and g[-1] > g[0]


def test_edge_list_and_grid(ctx):
    T = bass_serre_ball(ctx, 2)
    text = T.edge_list_text()
    assert text.count("\n") == T.complex.n_edges + 1
    G = grid_ball(2)
    assert G.complex.n_faces == 4 and G.complex.n_vertices == 9
    assert len(G.square_loop(0, 0, 2)) == 8
