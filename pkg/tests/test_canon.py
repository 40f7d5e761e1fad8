import random

import pytest
from hypothesis import given, settings, strategies as st

from sqpo.canon import (CanonicalizationLimit, canonical_form, canonical_graph,
                        diagram_canonical, graph_key, graphs_isomorphic)
from sqpo.graph import Graph, GraphMorphism, cycle, discrete, path, single_edge
from sqpo.homsearch import count_monos
from sqpo.oracles import isomorphic_by_permutation
from sqpo.randgen import random_graph


def relabel(g: Graph, vperm: dict[int, int], eperm: dict[int, int]) -> Graph:
    return Graph([vperm[v] for v in g.vertices],
                 {eperm[e]: (vperm[g.src[e]], vperm[g.trg[e]]) for e in g.edges})


def test_permuted_ids_same_key():
    g = Graph([0, 1, 2], {0: (0, 1), 1: (1, 2)})
    h = relabel(g, {0: 7, 1: 3, 2: 11}, {0: 9, 1: 0})
    assert graphs_isomorphic(g, h)
    assert canonical_form(g) == canonical_form(h)


def test_vertex_vs_edge_count_differ():
    assert not graphs_isomorphic(discrete(2), single_edge())


def test_edge_direction_reversal_detected():
    g = Graph(range(4), {0: (0, 1), 1: (1, 2), 2: (2, 3)})
    h = Graph(range(4), {0: (0, 1), 1: (2, 1), 2: (2, 3)})
    assert not graphs_isomorphic(g, h)
    assert isomorphic_by_permutation(g, g) and not isomorphic_by_permutation(g, h)


def test_parallel_edges_and_loops():
    two_parallel = Graph([0, 1], {0: (0, 1), 1: (0, 1)})
    opposite = Graph([0, 1], {0: (0, 1), 1: (1, 0)})
    assert not graphs_isomorphic(two_parallel, opposite)
    loop = cycle(1)
    assert not graphs_isomorphic(loop, single_edge())
    assert graphs_isomorphic(loop, relabel(loop, {0: 5}, {0: 9}))


def test_key_partition_equals_brute_force_partition():
    # soundness & completeness of the key against raw permutation search:
    # all labeled graphs on <=3 vertices with <=2 edges, partitioned both ways
    from itertools import combinations_with_replacement
    labeled = []
    for n in range(4):
        pairs = [(s, t) for s in range(n) for t in range(n)]
        for m in range(3):
            for chosen in combinations_with_replacement(pairs, m):
                labeled.append(Graph(range(n), dict(enumerate(chosen))))
    by_key: dict[str, list[Graph]] = {}
    for g in labeled:
        by_key.setdefault(graph_key(g), []).append(g)
    for key, group in by_key.items():
        rep = group[0]
        for other in group[1:]:
            assert isomorphic_by_permutation(rep, other)
    reps = [group[0] for group in by_key.values()]
    for i, g in enumerate(reps):
        for h in reps[i + 1:]:
            assert not isomorphic_by_permutation(g, h)


def test_key_matches_brute_force_on_random_pairs():
    rnd = random.Random(1)
    for _ in range(300):
        g = random_graph(rnd, 5, 4)
        h = random_graph(rnd, 5, 4)
        assert (graph_key(g) == graph_key(h)) == isomorphic_by_permutation(g, h)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(0, 10 ** 9))
def test_canonical_form_invariant_under_random_relabeling(seed, relabel_seed):
    rnd = random.Random(seed)
    g = random_graph(rnd, 5, 5)
    rnd2 = random.Random(relabel_seed)
    vids = list(range(0, 50))
    rnd2.shuffle(vids)
    eids = list(range(0, 50))
    rnd2.shuffle(eids)
    vperm = {v: vids[i] for i, v in enumerate(g.vertices)}
    eperm = {e: eids[i] for i, e in enumerate(g.edges)}
    assert graph_key(g) == graph_key(relabel(g, vperm, eperm))


def test_canonical_graph_is_idempotent_representative():
    g = Graph([4, 9], {7: (9, 4)})
    cg = canonical_graph(g)
    assert cg.vertices == (0, 1) and cg.edges == (0,)
    assert graphs_isomorphic(cg, g)
    assert canonical_graph(cg) == cg


def test_mono_count_invariant_under_iso():
    a = single_edge()
    x = cycle(3)
    a2 = relabel(a, {0: 9, 1: 4}, {0: 2})
    x2 = relabel(x, {0: 10, 1: 20, 2: 30}, {0: 5, 1: 3, 2: 8})
    assert count_monos(a, x) == count_monos(a2, x) == count_monos(a, x2) == 3


def test_large_sparse_graph_canonicalizes_fast():
    # componentwise exactness keeps big edge-free graphs cheap
    g = discrete(40)
    assert graph_key(g) == graph_key(relabel(g, {v: 200 - v for v in g.vertices}, {}))


def test_component_cutoff_raises():
    big = path(12)
    with pytest.raises(CanonicalizationLimit):
        canonical_form(big)
    assert canonical_form(big, cutoff=12).key == canonical_form(path(12), cutoff=12).key


def test_diagram_canonical_distinguishes_morphisms():
    # same objects, different arrows: the keys must differ
    e = single_edge()
    v = discrete(1)
    to_src = GraphMorphism(v, e, {0: 0}, {})
    to_trg = GraphMorphism(v, e, {0: 1}, {})
    key_src, _ = diagram_canonical([v, e], [(0, 1, to_src)])
    key_trg, _ = diagram_canonical([v, e], [(0, 1, to_trg)])
    assert key_src != key_trg


def test_diagram_canonical_invariant_under_relabeling():
    e = single_edge()
    v = discrete(1)
    to_src = GraphMorphism(v, e, {0: 0}, {})
    e2 = relabel(e, {0: 6, 1: 2}, {0: 4})
    to_src2 = GraphMorphism(v, e2, {0: 6}, {})
    k1, _ = diagram_canonical([v, e], [(0, 1, to_src)])
    k2, _ = diagram_canonical([v, e2], [(0, 1, to_src2)])
    assert k1 == k2
