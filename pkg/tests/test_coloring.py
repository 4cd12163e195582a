"""Edge colorings: constructive algorithms, the exact chromatic index
search, and the coloring/decomposition bridge."""

import pytest

from psts.coloring import (
    EdgeColoring,
    chromatic_index,
    coloring_to_decomposition,
    decomposition_to_coloring,
    enumerate_check_missing_pair,
    enumerate_colorings,
    is_proper,
    koenig_coloring,
    prism_hamilton_coloring,
    vizing_coloring,
)
from psts.graphs import (
    Graph,
    is_bipartite,
    k4,
    k33,
    make_complete,
    make_complete_bipartite,
    petersen,
    prism,
)
from psts.rng import SplitMix64


def random_graph(rng, n, percent):
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.randbelow(100) < percent
    ]
    return Graph(range(n), edges)


def random_bipartite(rng, a, b, percent):
    edges = [
        (i, a + j)
        for i in range(a)
        for j in range(b)
        if rng.randbelow(100) < percent
    ]
    return Graph(range(a + b), edges)


def test_koenig_on_known_graphs():
    col = koenig_coloring(k33())
    assert is_proper(col)
    assert len(col.palette) == 3
    cube = prism(4)  # bipartite cubic
    col = koenig_coloring(cube)
    assert is_proper(col) and len(col.palette) == 3
    full = make_complete_bipartite(4, 4)
    col = koenig_coloring(full)
    assert is_proper(col) and len(col.palette) == 4


def test_koenig_on_seeded_randoms():
    rng = SplitMix64(77)
    for trial in range(25):
        g = random_bipartite(rng, 3 + rng.randbelow(4), 3 + rng.randbelow(4), 60)
        assert is_bipartite(g)[0]
        col = koenig_coloring(g)
        assert is_proper(col)
        assert len(col.palette) == g.max_degree()


def test_koenig_rejects_odd_cycles():
    with pytest.raises(ValueError):
        koenig_coloring(make_complete(3))


def test_vizing_on_known_graphs():
    col = vizing_coloring(petersen())
    assert is_proper(col)
    assert len(col.palette) <= 4
    col = vizing_coloring(make_complete(7))
    assert is_proper(col) and len(col.palette) <= 7


def test_vizing_on_seeded_randoms():
    rng = SplitMix64(78)
    for trial in range(25):
        g = random_graph(rng, 4 + rng.randbelow(6), 55)
        col = vizing_coloring(g)
        assert is_proper(col)
        assert len(col.palette) <= g.max_degree() + 1
        assert col.used_colors() <= frozenset(col.palette)


def test_vizing_determinism():
    g = random_graph(SplitMix64(79), 8, 50)
    assert vizing_coloring(g).assignment == vizing_coloring(g).assignment


KNOWN_CHI = [
    (k33(), 3),
    (k4(), 3),
    (prism(3), 3),
    (petersen(), 4),
    (make_complete(5), 5),
    (make_complete(6), 5),
    (Graph(range(5), [(i, (i + 1) % 5) for i in range(5)]), 3),
    (Graph(range(6), [(i, (i + 1) % 6) for i in range(6)]), 2),
    (Graph(range(3), [(0, 1), (1, 2)]), 2),
]


@pytest.mark.parametrize("g, chi", KNOWN_CHI, ids=range(len(KNOWN_CHI)))
def test_chromatic_index_known_values(g, chi):
    out = chromatic_index(g)
    assert out.is_yes
    assert out.value == chi
    wit = out.witness
    assert is_proper(wit)
    assert len(wit.used_colors()) <= chi


def test_chromatic_index_vizing_window():
    rng = SplitMix64(80)
    for trial in range(15):
        g = random_graph(rng, 4 + rng.randbelow(4), 60)
        if g.m == 0:
            continue
        out = chromatic_index(g)
        assert out.is_yes
        assert g.max_degree() <= out.value <= g.max_degree() + 1


def test_enumerate_counts():
    # one 3-coloring class for K4 (its unique 1-factorization), none for
    # the Petersen graph
    res = enumerate_colorings(k4(), 3)
    assert res.exhausted and res.count == 1
    res = enumerate_colorings(petersen(), 3)
    assert res.exhausted and res.count == 0


def test_enumerate_visitor_early_stop():
    seen = []

    def visit(col):
        seen.append(col)
        return False

    res = enumerate_colorings(make_complete(4), 3, visitor=visit)
    assert len(seen) == 1
    assert not res.exhausted
    assert is_proper(seen[0])


def test_missing_pair_check_negative():
    # on a 2-edge path the endpoints miss different colors in the unique
    # proper 2-coloring, and the checker must produce that counterexample
    path = Graph(range(3), [(0, 1), (1, 2)])
    verdict, res, cex = enumerate_check_missing_pair(path, 2, 0, 2)
    assert verdict is False
    assert cex is not None and is_proper(cex)
    assert cex.missing_colors(0) != cex.missing_colors(2)


def test_missing_pair_check_positive():
    # in every proper 2-coloring of C4 both colors appear at every vertex
    c4 = Graph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
    verdict, res, cex = enumerate_check_missing_pair(c4, 2, 0, 2)
    assert verdict is True
    assert res.exhausted and cex is None


def test_prism_hamilton_coloring():
    for k in (3, 5, 8, 37):
        col = prism_hamilton_coloring(k)
        assert is_proper(col)
        assert col.graph == prism(k)
        assert col.used_colors() == frozenset({1, 2, 3})


def test_coloring_decomposition_bridge():
    g = k4()
    col = chromatic_index(g).witness
    z = [100, 101, 102]
    packing = coloring_to_decomposition(g, col, z)
    assert packing.is_decomposition()
    back = decomposition_to_coloring(packing.triples, g, z)
    assert is_proper(back)
    # round trip: same partition of edges into color classes
    classes = lambda c: frozenset(
        frozenset(e for e, col_ in c.assignment.items() if col_ == x)
        for x in c.used_colors()
    )
    assert classes(back) == classes(col)


def test_bridge_rejects_bad_inputs():
    g = k4()
    col = chromatic_index(g).witness
    with pytest.raises(ValueError):
        coloring_to_decomposition(g, col, [100, 101])  # |z| != palette
    with pytest.raises(ValueError):
        coloring_to_decomposition(g, col, [0, 101, 102])  # z overlaps g
    path = Graph(range(3), [(0, 1), (1, 2)])
    pcol = EdgeColoring(path, (1, 2), {(0, 1): 1, (1, 2): 2})
    with pytest.raises(ValueError):
        coloring_to_decomposition(path, pcol, [100, 101])  # not regular
