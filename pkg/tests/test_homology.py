import pytest

from confsurf.cube_complex import Cell, CubeComplex
from confsurf.graph_models import cycle_graph, graph_complex
from confsurf.homology import (
    ChainComplex,
    RationalColumnSpace,
    betti_numbers,
    chain_complex,
    homology_of_chain,
    matrix_rank,
    morse_reduce,
    rank_mod_p,
    smith_normal_form,
)
from confsurf.surface_models import build_closed, build_disk


def unit_square_complex():
    cells = [
        Cell(0, 0), Cell(1, 0), Cell(2, 0), Cell(3, 0),
        Cell(4, 1, ((0, -1), (1, 1))),
        Cell(5, 1, ((2, -1), (3, 1))),
        Cell(6, 1, ((0, -1), (2, 1))),
        Cell(7, 1, ((1, -1), (3, 1))),
        Cell(8, 2, ((4, 1), (5, -1), (6, -1), (7, 1))),
    ]
    return CubeComplex(cells).validate()


def test_chain_complex_shapes():
    ch = chain_complex(graph_complex(cycle_graph(3)))
    assert ch.counts == (3, 3)
    for col in ch.boundaries[1].values():
        assert sum(col.values()) == 0
    ch.validate()

    ch = chain_complex(unit_square_complex())
    assert len(ch.boundaries[2][0]) == 4
    ch.validate()


def test_smith_normal_form_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == ((1, 6), 2)
    assert smith_normal_form([[0, 0], [0, 0]]) == ((), 0)
    d1 = chain_complex(graph_complex(cycle_graph(3))).boundaries[1]
    assert smith_normal_form(d1) == ((1, 1), 2)
    # sparse and dense inputs agree
    assert smith_normal_form({0: {0: 2}, 1: {1: 3}}) == ((1, 6), 2)
    # repeat runs are identical
    assert smith_normal_form([[6, 4], [4, 6]]) == smith_normal_form([[6, 4], [4, 6]])


def test_smith_divisibility_chain():
    factors, rank = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert rank == len(factors)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0


def test_matrix_rank():
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, 0], [0, 1]]) == 2
    assert matrix_rank([[0]]) == 0
    assert matrix_rank([[2, 0], [0, 2]]) == 2
    d1 = chain_complex(graph_complex(cycle_graph(5))).boundaries[1]
    assert matrix_rank(d1) == 4


def test_rank_mod_p():
    assert rank_mod_p([[2, 0], [0, 2]], 2) == 0
    assert rank_mod_p([[2, 0], [0, 2]], 3) == 2
    assert rank_mod_p([[1, 1], [1, 1]], 2) == 1


def test_torus_and_genus2():
    res = betti_numbers(build_closed(1, 2)[0])
    assert res.betti == (1, 2, 1)
    assert all(t == () for t in res.torsion)
    res = betti_numbers(build_closed(2, 3)[0], reduce=False)
    assert res.betti == (1, 4, 1)
    assert all(t == () for t in res.torsion)


def test_disk_contractible():
    res = betti_numbers(build_disk(3)[0])
    assert res.betti == (1, 0, 0)
    assert res.reduced_cells == (1, 0, 0)


def test_reduce_routes_agree():
    for cc in (
        build_closed(1, 2)[0],
        build_closed(2, 2)[0],
        build_disk(2)[0],
        graph_complex(cycle_graph(6)),
    ):
        a = betti_numbers(cc, reduce=True)
        b = betti_numbers(cc, reduce=False)
        assert a.betti == b.betti
        assert a.torsion == b.torsion
        assert a.f_vector == b.f_vector == cc.f_vector()
        assert b.reduced_cells == cc.f_vector()
        assert sum((-1) ** k * x for k, x in enumerate(a.betti)) == a.euler


def test_torsion_reporting():
    # one 2-cell glued twice onto a loop: half-integer homology appears
    projective = ChainComplex((1, 1, 1), {2: {0: {0: 2}}})
    res = homology_of_chain(projective, reduce=True)
    assert res.betti == (1, 0, 0)
    assert res.torsion == ((), (2,), ())
    res = homology_of_chain(projective, reduce=False)
    assert res.torsion == ((), (2,), ())

    klein = ChainComplex((1, 2, 1), {2: {0: {0: 2}}})
    res = homology_of_chain(klein, reduce=False, mod_primes=(2, 3))
    assert res.betti == (1, 1, 0)
    assert res.torsion == ((), (2,), ())
    assert res.betti_mod[2] == (1, 2, 1)
    assert res.betti_mod[3] == (1, 1, 0)


def test_morse_reduce_examples():
    sq = chain_complex(unit_square_complex())
    red = morse_reduce(sq)
    red.validate()
    assert red.total_cells() == 1 and red.counts[0] == 1

    pts = ChainComplex((6,), {})
    assert morse_reduce(pts).counts == (6,)

    circle = chain_complex(graph_complex(cycle_graph(3)))
    red = morse_reduce(circle)
    red.validate()
    assert red.counts == (1, 1)
    assert homology_of_chain(red).betti == (1, 1)


def test_morse_preserves_homology_with_torsion():
    # mapping-cone style complex: d_2 entries force a non-unit pivot mix
    ch = ChainComplex(
        (2, 3, 2),
        {
            1: {0: {0: 1, 1: -1}},
            2: {0: {1: 2, 2: 2}, 1: {1: 2, 2: 2}},
        },
    )
    ch.validate()
    red = morse_reduce(ch)
    red.validate()
    a = homology_of_chain(ch, reduce=False)
    b = homology_of_chain(red, reduce=False)
    assert a.betti == b.betti and a.torsion == b.torsion


def test_rational_column_space():
    space = RationalColumnSpace()
    assert space.add({0: 1, 1: 2})
    assert not space.add({0: 2, 1: 4})
    assert space.add({1: 1})
    assert space.rank == 2
    assert space.contains({0: 3, 1: 5})
    assert not space.contains({2: 1})


def test_betti_json_shape():
    res = betti_numbers(build_closed(1, 2)[0])
    j = res.to_json_dict()
    assert set(j) == {"f_vector", "euler", "betti", "torsion", "reduced_cells"}
    assert j["betti"] == [1, 2, 1]
    assert j["euler"] == 0
    res = betti_numbers(build_closed(1, 2)[0], mod_primes=(2,))
    assert res.to_json_dict()["betti_mod"] == {"2": [1, 2, 1]}
