from __future__ import annotations

import pytest

from arclink.graph_core import PlumbingGraph, Vertex, parse_plumbing


def chain_graph(bs, prefix: str = "v") -> PlumbingGraph:
    vs = tuple(Vertex(f"{prefix}{i}", -b, 0) for i, b in enumerate(bs))
    es = tuple((f"{prefix}{i}", f"{prefix}{i+1}") for i in range(len(bs) - 1))
    return PlumbingGraph(vs, es, (), "chain")


def cycle_graph(bs, prefix: str = "v") -> PlumbingGraph:
    k = len(bs)
    vs = tuple(Vertex(f"{prefix}{i}", -b, 0) for i, b in enumerate(bs))
    if k == 1:
        es = ((f"{prefix}0", f"{prefix}0"),)
    elif k == 2:
        es = ((f"{prefix}0", f"{prefix}1"), (f"{prefix}0", f"{prefix}1"))
    else:
        es = tuple((f"{prefix}{i}", f"{prefix}{(i+1) % k}") for i in range(k))
    return PlumbingGraph(vs, es, (), "cycle")


def star_graph(center_euler: int, legs, genus: int = 0) -> PlumbingGraph:
    """legs: list of b-term lists, each read center-outward."""
    vs = [Vertex("c", center_euler, genus)]
    es = []
    for i, leg in enumerate(legs):
        prev = "c"
        for j, b in enumerate(leg):
            vid = f"l{i}_{j}"
            vs.append(Vertex(vid, -b, 0))
            es.append((prev, vid))
            prev = vid
    return PlumbingGraph(tuple(vs), tuple(es), (), "star")


E8_TEXT = """
graph e8
vertex c euler=-2 genus=0
vertex a1 euler=-2 genus=0
vertex b1 euler=-2 genus=0
vertex b2 euler=-2 genus=0
vertex d1 euler=-2 genus=0
vertex d2 euler=-2 genus=0
vertex d3 euler=-2 genus=0
vertex d4 euler=-2 genus=0
edge c a1
edge c b1
edge b1 b2
edge c d1
edge d1 d2
edge d2 d3
edge d3 d4
"""

SIGMA_237_TEXT = """
graph sigma237
vertex c euler=-1 genus=0
vertex p euler=-2 genus=0
vertex q euler=-3 genus=0
vertex r euler=-7 genus=0
edge c p
edge c q
edge c r
"""


@pytest.fixture
def e8() -> PlumbingGraph:
    return parse_plumbing(E8_TEXT)


@pytest.fixture
def sigma237() -> PlumbingGraph:
    return parse_plumbing(SIGMA_237_TEXT)


@pytest.fixture
def cusp333() -> PlumbingGraph:
    return cycle_graph([3, 3, 3])
