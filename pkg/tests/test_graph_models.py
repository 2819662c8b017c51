import pytest

from confsurf.graph_models import (
    AbramsResult,
    Graph,
    GraphError,
    abrams_check,
    cycle_graph,
    essential_vertices,
    graph_complex,
    parse_graph_text,
    path_graph,
    shortest_cycle,
    star_graph,
    subdivide,
)


def test_graph_complex_f_vectors():
    assert graph_complex(cycle_graph(3)).f_vector() == (3, 3)
    assert graph_complex(star_graph(3)).f_vector() == (4, 3)
    assert graph_complex(path_graph(2)).f_vector() == (2, 1)


def test_graph_complex_orientation():
    cc = graph_complex(Graph(2, ((1, 0),)))
    # boundary is head minus tail regardless of storage order
    assert cc.boundary_coefficients(2) == {0: 1, 1: -1}


def test_graph_complex_rejects_loop():
    with pytest.raises(GraphError, match="subdivide"):
        graph_complex(Graph(1, ((0, 0),)))


def test_subdivide_counts():
    c6 = subdivide(cycle_graph(3), 2)
    assert (c6.vertices, len(c6.edges)) == (6, 6)
    assert shortest_cycle(c6) is not None and len(shortest_cycle(c6)) - 1 == 6
    p4 = subdivide(path_graph(2), 3)
    assert (p4.vertices, len(p4.edges)) == (4, 3)
    k13 = subdivide(star_graph(3), 2)
    assert (k13.vertices, len(k13.edges)) == (7, 6)
    same = subdivide(cycle_graph(4), 1)
    assert same.edges == cycle_graph(4).edges


def test_subdivide_fixes_loops():
    g = subdivide(Graph(1, ((0, 0),)), 2)
    assert (g.vertices, len(g.edges)) == (2, 2)
    graph_complex(g).validate()
    cyc = shortest_cycle(g)
    assert cyc is not None and len(cyc) - 1 == 2 and set(cyc) == {0, 1}


def test_essential_vertices():
    assert essential_vertices(cycle_graph(5)) == ()
    assert essential_vertices(star_graph(3)) == (0,)
    # a loop contributes two to the valence
    assert essential_vertices(Graph(2, ((0, 0), (0, 1)))) == (0,)
    assert essential_vertices(subdivide(star_graph(3), 4)) == (0,)


def test_shortest_cycle_variants():
    assert shortest_cycle(path_graph(5)) is None
    assert shortest_cycle(star_graph(3)) is None
    assert shortest_cycle(Graph(1, ((0, 0),))) == (0, 0)
    assert shortest_cycle(Graph(2, ((0, 1), (0, 1)))) == (0, 1, 0)
    cyc = shortest_cycle(cycle_graph(4))
    assert cyc is not None and len(cyc) - 1 == 4 and cyc[0] == cyc[-1]


def test_abrams_examples():
    assert abrams_check(cycle_graph(3), 2).ok
    res = abrams_check(cycle_graph(4), 4)
    assert not res.ok
    assert res.failed_condition == "girth"
    assert res.length == 4
    assert res.witness is not None and res.witness[0] == res.witness[-1]
    assert abrams_check(star_graph(3), 2).ok


def test_abrams_vertex_count():
    res = abrams_check(path_graph(2), 3)
    assert not res.ok and res.failed_condition == "vertex-count"


def test_abrams_essential_distance():
    # two essential vertices joined by a short middle path
    g = Graph(
        8,
        (
            (0, 1),
            (0, 2),
            (0, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (5, 7),
        ),
    )
    assert essential_vertices(g) == (0, 5)
    res = abrams_check(g, 3)
    assert not res.ok and res.failed_condition == "essential-distance"
    assert res.length == 3 and res.witness == (0, 3, 4, 5)
    assert abrams_check(g, 2).ok


def test_abrams_monotone_in_subdivision():
    g = cycle_graph(3)
    truth = [abrams_check(subdivide(g, k), 4).ok for k in range(1, 6)]
    assert truth == sorted(truth)
    assert truth[-1]
    # essential vertices survive subdivision
    s = star_graph(4)
    for k in range(1, 5):
        assert essential_vertices(subdivide(s, k)) == (0,)


def test_abrams_requires_connected():
    with pytest.raises(GraphError, match="connected"):
        abrams_check(Graph(4, ((0, 1), (2, 3))), 2)
    with pytest.raises(GraphError, match="positive"):
        abrams_check(cycle_graph(3), 0)


def test_parse_graph_text():
    g = parse_graph_text("# triangle\n0 1\n1 2  # last\n\n2 0\n")
    assert g.vertices == 3 and len(g.edges) == 3
    with pytest.raises(GraphError, match="expected"):
        parse_graph_text("0 1 2\n")
    with pytest.raises(GraphError, match="integers"):
        parse_graph_text("a b\n")
    with pytest.raises(GraphError, match="empty"):
        parse_graph_text("# nothing\n")


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(2, ((0, 5),))
    with pytest.raises(GraphError):
        Graph(0, ())
    assert bool(AbramsResult(True)) is True
    assert bool(AbramsResult(False, "girth")) is False
