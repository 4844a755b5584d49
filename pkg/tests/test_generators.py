import pytest
from hypothesis import given
from hypothesis import strategies as st

from planefire.corpus import girth
from planefire.embedding import PlaneGraphError, format_plane_graph, parse_plane_graph
from planefire.generators import FAMILIES, apollonian, family_id, generate, grid, hex_patch, k2n, star, subdivide, wheel


def test_grid_counts():
    g = grid(3, 3)
    assert (g.n, g.m, g.faces.count, girth(g)) == (9, 12, 5, 4)


def test_hex_girth():
    assert girth(hex_patch(1)) == 6
    for r in (2, 3, 4):
        assert girth(hex_patch(r)) == 6


@pytest.mark.parametrize("w, h", [(2, 2), (4, 7), (9, 3)])
def test_grid_girth(w, h):
    assert girth(grid(w, h)) == 4


def test_apollonian_counts():
    g = apollonian(5, seed=7)
    assert (g.n, g.m) == (9, 21)
    assert all(len(w) == 3 for w in g.faces.walks)


def test_family_shapes():
    assert star(5).degree(0) == 5
    k = k2n(4)
    assert (k.degree(0), k.degree(1), k.degree(2)) == (4, 4, 2)
    assert wheel(6).degree(0) == 6


def test_subdivide():
    base = grid(3, 3)
    g = subdivide(base, seed=4, count=3)
    assert (g.n, g.m) == (12, 15)
    assert all(g.degree(v) == 2 for v in range(9, 12))
    assert g == generate("subdivide", (3,), 4, "grid:3,3")


def test_family_ids():
    assert family_id("grid", (3, 4)) == "grid(3,4)"
    assert family_id("apollonian", (5,), 7) == "apollonian(5;seed=7)"
    assert family_id("subdivide", (14,), 31, "apollonian:15") == "subdivide(apollonian:15;14;seed=31)"


@pytest.mark.parametrize(
    "family, params",
    [("grid", (0, 3)), ("cycle", (2,)), ("grid", (3,)), ("nope", ()), ("subdivide", (2,)), ("hex_patch", (0,))],
)
def test_invalid_params(family, params):
    with pytest.raises(PlaneGraphError):
        generate(family, params)


@given(st.sampled_from(sorted(FAMILIES)), st.integers(0, 10**6))
def test_round_trip_and_determinism(family, seed):
    arity = FAMILIES[family][1]
    params = {0: (), 1: (6,), 2: (3, 4)}[arity]
    g = generate(family, params, seed)
    assert parse_plane_graph(format_plane_graph(g)) == g
    assert generate(family, params, seed) == g
    assert g.n - g.m + g.faces.count == 2
