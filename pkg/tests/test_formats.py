"""Round-trips and parse errors for the text formats.

The emitters are canonical (sorted records, normalized palettes), so the
round-trip law is emit(parse(emit(x))) == emit(x); parse errors must carry
the offending line number.
"""

import pytest

from psts import formats
from psts.family import psts15
from psts.coloring import EdgeColoring, koenig_coloring
from psts.formats import FormatError
from psts.graphs import Graph, k33, make_edgeless, petersen, prism


def roundtrip_graph(g):
    text = formats.emit_graph(g)
    again = formats.emit_graph(formats.parse_graph(text))
    assert again == text
    return text


def test_graph_roundtrip():
    roundtrip_graph(petersen())
    roundtrip_graph(prism(4))
    roundtrip_graph(make_edgeless(5))
    roundtrip_graph(Graph([], []))
    roundtrip_graph(Graph([3, 1, 7], [(7, 1)]))


def test_graph_comments_and_blanks():
    text = "# a comment\n\ngraph 2 1\np? no wait\n"
    with pytest.raises(FormatError):
        formats.parse_graph(text)
    text = "# leading comment\n\ngraph 2 1\nv 0\nv 1\n\n# mid comment\ne 0 1\n"
    g = formats.parse_graph(text)
    assert g.n == 2 and g.m == 1


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty input"),
        ("graph 1\nv 0\n", "expected 'graph"),
        ("psts 1 0\np 0\n", "expected 'graph"),
        ("graph 1 0\nv 0\nv 0\n", "line 3"),
        ("graph 2 1\nv 0\nv 1\ne 1 1\n", "loop"),
        ("graph 2 2\nv 0\nv 1\ne 0 1\ne 1 0\n", "duplicate edge"),
        ("graph 2 1\nv 0\nv 1\ne 0 2\n", "endpoint not declared"),
        ("graph 3 1\nv 0\nv 1\ne 0 1\n", "declared 3 vertices"),
        ("graph 2 2\nv 0\nv 1\ne 0 1\n", "declared 2 vertices 2 edges"),
        ("graph 2 1\nv 0\nv 1\nq 0 1\n", "unknown record"),
        ("graph 2 1\nv 0\nv x\ne 0 1\n", "non-integer"),
    ],
)
def test_graph_parse_rejects(text, fragment):
    with pytest.raises(FormatError) as err:
        formats.parse_graph(text)
    assert fragment in str(err.value)


def test_triples_roundtrip():
    ts = psts15()
    text = formats.emit_triples(ts)
    back = formats.parse_triples(text)
    assert back == ts
    assert formats.emit_triples(back) == text


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty input"),
        ("graph 1 0\nv 0\n", "expected 'psts"),
        ("psts 3 1\np 0\np 1\np 2\nt 0 1 1\n", "degenerate"),
        ("psts 3 2\np 0\np 1\np 2\nt 0 1 2\nt 2 1 0\n", "duplicate triple"),
        ("psts 3 1\np 0\np 1\np 2\nt 0 1 5\n", "not declared"),
        ("psts 4 1\np 0\np 1\np 2\nt 0 1 2\n", "declared 4 points"),
        ("psts 3 1\np 0\np 0\np 2\nt 0 1 2\n", "duplicate point"),
    ],
)
def test_triples_parse_rejects(text, fragment):
    with pytest.raises(FormatError) as err:
        formats.parse_triples(text)
    assert fragment in str(err.value)


def test_coloring_roundtrip():
    g = k33()
    col = koenig_coloring(g)
    text = formats.emit_coloring(col)
    back = formats.parse_coloring(text, g)
    assert back.is_proper()
    assert formats.emit_coloring(back) == text


def test_coloring_palette_normalization():
    # palette {5, 9} becomes 1..2 on emission regardless of the labels
    g = Graph([0, 1, 2], [(0, 1), (1, 2)])
    col = EdgeColoring(g, (9, 5), {(0, 1): 9, (1, 2): 5})
    text = formats.emit_coloring(col)
    assert "c 0 1 2" in text and "c 1 2 1" in text


def test_coloring_unused_color_survives():
    # a declared-but-unused color must survive the round trip, since
    # missing-color queries depend on the full palette
    g = Graph([0, 1], [(0, 1)])
    col = EdgeColoring(g, (1, 2, 3), {(0, 1): 2})
    text = formats.emit_coloring(col)
    back = formats.parse_coloring(text, g)
    assert back.palette == (1, 2, 3)
    assert back.missing_colors(0) == frozenset({1, 3})


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty input"),
        ("graph 1 0\n", "expected 'ecol"),
        ("ecol 1 1\nc 0 2 1\n", "not an edge"),
        ("ecol 2 1\nc 0 1 1\nc 1 0 1\n", "colored twice"),
        ("ecol 2 1\nc 0 1 1\n", "declared 2 records"),
        ("ecol 1 1\nc 0 1 7\n", "color 7 outside 1..1"),
    ],
)
def test_coloring_parse_rejects(text, fragment):
    g = Graph([0, 1], [(0, 1)])
    with pytest.raises(FormatError) as err:
        formats.parse_coloring(text, g)
    assert fragment in str(err.value)


def test_background_meta_parse():
    text = "# sidecar\nn=74\nu=339\nv=451\nu_prime=325\nd=126\n"
    meta = formats.parse_background_meta(text)
    assert meta == {"n": 74, "u": 339, "v": 451, "u_prime": 325, "d": 126}


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("n=74\nu=339\nv=451\nu_prime=325\n", "missing key"),
        ("n=74\nu=339\nv=451\nu_prime=325\nd=999\n", "u_prime + d"),
        ("n=74\nu=339\nv=451\nu_prime=325\nd=126\nn=74\n", "duplicate key"),
        ("nonsense\n", "key=value"),
    ],
)
def test_background_meta_rejects(text, fragment):
    with pytest.raises(FormatError) as err:
        formats.parse_background_meta(text)
    assert fragment in str(err.value)
