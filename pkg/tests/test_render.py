import re
import xml.etree.ElementTree as ET

import numpy as np

from planefire.embedding import bfs_tree
from planefire.engine import BudgetSchedule, new_game, step
from planefire.generators import cycle, grid
from planefire.render import render_svg, tutte_layout
from planefire.separator import find_balanced_curve

NS = "{http://www.w3.org/2000/svg}"


def _classes(svg, tag):
    root = ET.fromstring(svg)
    return [el.get("class") for el in root.iter(NS + tag)]


def test_cycle4_square():
    g = cycle(4)
    svg = render_svg(g)
    assert len(_classes(svg, "circle")) == 4 and len(_classes(svg, "line")) == 4
    pos = tutte_layout(g)
    sides = [np.linalg.norm(pos[i] - pos[(i + 1) % 4]) for i in range(4)]
    assert np.allclose(sides, sides[0])


def test_grid_curve_styles():
    g = grid(3, 3)
    t = bfs_tree(g, 4)
    bc = find_balanced_curve(g, t)
    svg = render_svg(g, tree=t, curve=bc.curve)
    lines = set(_classes(svg, "line"))
    assert "curve" in lines and "tree" in lines
    assert _classes(svg, "path") == ["arc"]
    assert re.search(r"\.curve \{[^}]*stroke-width: 3", svg)
    assert re.search(r"\.arc \{[^}]*dasharray", svg)


def test_terminal_state_colours():
    g = cycle(5)
    s = step(new_game(g, 0, BudgetSchedule.constant(2)), {1, 4})
    assert s.terminal and s.saved == 4
    cls = _classes(render_svg(g, state=s), "circle")
    assert cls.count("burned") == 1 and cls.count("protected") == 2


def test_render_is_deterministic():
    g = grid(4, 3)
    assert render_svg(g) == render_svg(grid(4, 3))
