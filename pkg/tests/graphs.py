"""Hypothesis strategies over the generator families."""

from hypothesis import assume
from hypothesis import strategies as st

from planefire.generators import generate


def _family_graph(draw):
    family = draw(st.sampled_from(["grid", "cycle", "path", "star", "k2n", "wheel", "hex", "apollonian", "subdivide"]))
    if family == "grid":
        return generate("grid", (draw(st.integers(1, 6)), draw(st.integers(1, 6))))
    if family == "cycle":
        return generate("cycle", (draw(st.integers(3, 14)),))
    if family == "path":
        return generate("path", (draw(st.integers(1, 14)),))
    if family in ("star", "k2n"):
        return generate(family, (draw(st.integers(1, 7)),))
    if family == "wheel":
        return generate("wheel", (draw(st.integers(3, 10)),))
    if family == "hex":
        return generate("hex_patch", (draw(st.integers(1, 2)),))
    if family == "apollonian":
        return generate("apollonian", (draw(st.integers(0, 12)),), draw(st.integers(0, 10**6)))
    base = draw(st.sampled_from(["grid:3,3", "apollonian:5", "cycle:5", "hex_patch:1", "k4:"]))
    return generate("subdivide", (draw(st.integers(0, 6)),), draw(st.integers(0, 10**6)), base)


@st.composite
def plane_graphs(draw, min_n=1):
    g = _family_graph(draw)
    assume(g.n >= min_n)
    return g


@st.composite
def graph_and_root(draw, min_n=1):
    g = draw(plane_graphs(min_n=min_n))
    return g, draw(st.integers(0, g.n - 1))
