import json

import pytest

from sqpo.graph import (EMPTY, Graph, GraphError, GraphMorphism, Span, Cospan,
                        cycle, discrete, graph_from_json, graph_to_json, path,
                        single_edge, validate_graph_data, morphism_from_obj,
                        morphism_to_obj)


def test_empty_graph_is_valid():
    assert validate_graph_data([], {}) == []
    assert EMPTY.n_vertices == 0 and EMPTY.n_edges == 0


def test_two_vertices_one_edge_valid():
    assert validate_graph_data([0, 1], {0: (0, 1)}) == []


def test_dangling_src_reported():
    report = validate_graph_data([0], {0: (5, 0)})
    assert report and "src" in report[0]
    with pytest.raises(GraphError):
        Graph([0], {0: (5, 0)})


def test_dangling_trg_reported():
    report = validate_graph_data([0], {0: (0, 7)})
    assert report and "trg" in report[0]


def test_duplicate_vertex_id_reported():
    assert any("duplicate" in v for v in validate_graph_data([1, 1], {}))


def test_negative_ids_rejected():
    assert validate_graph_data([-1], {})
    assert validate_graph_data([0], {-2: (0, 0)})


def test_graph_equality_and_hash():
    g = Graph([1, 0], {3: (0, 1)})
    h = Graph([0, 1], {3: (0, 1)})
    assert g == h and hash(g) == hash(h)
    assert g != Graph([0, 1], {3: (1, 0)})


def test_graph_immutable():
    g = discrete(2)
    with pytest.raises(AttributeError):
        g.vertices = ()


def test_subgraph_dangling_rejected():
    g = single_edge()
    with pytest.raises(GraphError):
        g.subgraph([0], [0])


def test_json_round_trip_graph_to_json_and_back():
    g = Graph([0, 2, 5], {1: (0, 2), 4: (2, 2)})
    assert graph_from_json(graph_to_json(g)) == g


def test_json_byte_exact_round_trip():
    text = graph_to_json(Graph([3, 1], {0: (1, 3), 2: (3, 3)}))
    assert graph_to_json(graph_from_json(text)) == text
    # external canonical emission round-trips byte-for-byte
    canonical = json.dumps(json.loads(text), separators=(",", ":"), sort_keys=True)
    assert text == canonical


def test_json_duplicate_edge_id_rejected():
    bad = '{"vertices":[0,1],"edges":[{"id":0,"src":0,"trg":1},{"id":0,"src":1,"trg":0}]}'
    with pytest.raises(GraphError):
        graph_from_json(bad)


def test_morphism_requires_totality_injectivity_homomorphism():
    e = single_edge()
    with pytest.raises(GraphError):
        GraphMorphism(e, e, {0: 0}, {0: 0})  # not total on vertices
    with pytest.raises(GraphError):
        GraphMorphism(discrete(2), discrete(1), {0: 0, 1: 0}, {})  # not injective
    two = Graph([0, 1], {0: (0, 1), 1: (1, 0)})
    with pytest.raises(GraphError):
        GraphMorphism(e, two, {0: 0, 1: 1}, {0: 1})  # src/trg flipped


def test_morphism_identity_composition():
    g = path(3)
    ident = GraphMorphism.identity(g)
    assert ident.is_identity()
    m = GraphMorphism.inclusion(discrete(1).subgraph([0], []), discrete(1))
    assert m.then(GraphMorphism.identity(discrete(1))).vmap == m.vmap


def test_morphism_json_round_trip():
    e = single_edge()
    c3 = cycle(3)
    m = GraphMorphism(e, c3, {0: 1, 1: 2}, {0: 1})
    obj = morphism_to_obj(m)
    assert morphism_from_obj(obj, e, c3) == m


def test_span_cospan_require_shared_apex():
    a = GraphMorphism(EMPTY, discrete(1), {}, {})
    b = GraphMorphism(discrete(1), discrete(2), {0: 0}, {})
    Span(a, a)
    with pytest.raises(GraphError):
        Span(a, b)
    with pytest.raises(GraphError):
        Cospan(a, b)


def test_builders():
    assert path(4).n_edges == 3
    assert cycle(1).n_edges == 1  # a loop
    assert single_edge().endpoints(0) == (0, 1)
    with pytest.raises(GraphError):
        cycle(0)
