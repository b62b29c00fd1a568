import pytest

from prodim.generators import random_partial_ktree
from prodim.graph import complete_graph, path_graph
from prodim.io import (
    IndexOutOfRange,
    ParseError,
    detect_format,
    format_graph,
    format_td,
    parse_graph,
    parse_td,
)
from prodim.treedecomp import decompose_heuristic, validate


def test_edgelist():
    assert parse_graph(b"3 2\n0 1\n1 2\n") == path_graph(3)
    assert parse_graph("# comment\n3 2\n0 1 \n\n1 2\n") == path_graph(3)


def test_dimacs():
    assert parse_graph("c hi\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", "dimacs") == complete_graph(3)


def test_pace():
    assert parse_graph("c x\np tw 3 2\n1 2\n2 3\n", "pace-gr") == path_graph(3)


@pytest.mark.parametrize(
    "text, fmt, line, exc",
    [
        ("2 1\n0 0\n", "edgelist", 2, ParseError),
        ("3 2\n0 1\n1 0\n", "edgelist", 3, ParseError),
        ("3 1\n0 3\n", "edgelist", 2, IndexOutOfRange),
        ("3 2\n0 1\n", "edgelist", 1, ParseError),
        ("3 1\n0 x\n", "edgelist", 2, ParseError),
        ("p edge 2 1\ne 0 1\n", "dimacs", 2, IndexOutOfRange),
        ("e 1 2\n", "dimacs", 1, ParseError),
        ("p edge 2 1\nx 1 2\n", "dimacs", 2, ParseError),
        ("p tw 2 1\n1 2 3\n", "pace-gr", 2, ParseError),
    ],
)
def test_errors_carry_line(text, fmt, line, exc):
    with pytest.raises(exc) as info:
        parse_graph(text, fmt)
    assert info.value.line == line


def test_missing_header():
    with pytest.raises(ParseError):
        parse_graph("", "edgelist")
    with pytest.raises(ValueError):
        parse_graph("1 0\n", "graphml")


@pytest.mark.parametrize("fmt", ["edgelist", "dimacs", "pace-gr"])
def test_round_trip(fmt):
    g = random_partial_ktree(30, 2, 1)
    text = format_graph(g, fmt)
    assert detect_format(text) == fmt
    assert parse_graph(text, fmt) == g


def test_td_round_trip():
    g = random_partial_ktree(30, 2, 2)
    d = decompose_heuristic(g)
    back = parse_td(format_td(d, g.n))
    assert validate(g, back).valid and back.width == d.width


def test_td_errors():
    with pytest.raises(ParseError):
        parse_td("b 1 1\n")
    with pytest.raises(IndexOutOfRange):
        parse_td("s td 1 2 2\nb 2 1 2\n")
    with pytest.raises(ParseError):
        parse_td("s td 2 2 2\nb 1 1 2\n")


def test_td_declared_width_ignored():
    d = parse_td("c x\ns td 2 9 3\nb 1 1 2\nb 2 2 3\n1 2\n")
    assert d.width == 1 and validate(path_graph(3), d).valid
