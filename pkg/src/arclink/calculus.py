"""Plumbing calculus: minimal log resolution, tail contraction, dlt models.

The rewriting steps follow the usual surface rules: a genus-0 vertex with
Euler number -1 meeting the rest of the configuration in at most two
points gets blown down, its neighbors gaining +1 per incidence (and a
loop when both incidences hit the same neighbor).  Tails of rational
chains are then contracted into orbifold points (m, omega) read off the
chain via minus continued fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .graph_core import (
    GraphError,
    PlumbingGraph,
    Shape,
    classify_shape,
    intersection_matrix,
    is_negative_definite,
    star_legs,
)
from .hjcf import hj_pair


class WholeChainError(GraphError):
    """The whole graph is a chain: callers must branch to CyclicQuotient."""


class SelfDltError(ValueError):
    """Operation needs a genuine dlt model, not a quotient singularity."""


class SingKind(Enum):
    CYCLIC_QUOTIENT = "cyclic_quotient"
    NONCYCLIC_QUOTIENT = "noncyclic_quotient"
    CUSP = "cusp"
    GENERAL = "general"


@dataclass(frozen=True, slots=True)
class SingClass:
    kind: SingKind
    m: int | None = None
    q: int | None = None
    alphas: tuple[int, int, int] | None = None
    b_sequence: tuple[int, ...] | None = None

    def is_quotient(self) -> bool:
        return self.kind in (SingKind.CYCLIC_QUOTIENT, SingKind.NONCYCLIC_QUOTIENT)

    def describe(self) -> str:
        if self.kind is SingKind.CYCLIC_QUOTIENT:
            if self.m == 1:
                return "smooth"
            return f"cyclic quotient 1/{self.m}({self.q},1)"
        if self.kind is SingKind.NONCYCLIC_QUOTIENT:
            return "noncyclic quotient ({},{},{})".format(*self.alphas)
        if self.kind is SingKind.CUSP:
            return "cusp " + ",".join(str(b) for b in self.b_sequence)
        return "general"


class DltKind(Enum):
    SELF_DLT = "self_dlt"
    MODEL = "model"


@dataclass(frozen=True, slots=True)
class OrbifoldPoint:
    """Cyclic quotient point of order m on a surviving curve.

    ``tail_ids`` lists the contracted tail read from the surviving curve
    outward, matching ``terms``; ``leg`` is the tail vertex that met the
    survivor.
    """

    host: str
    m: int
    omega: int
    leg: str
    terms: tuple[int, ...]
    tail_ids: tuple[str, ...]

    def __post_init__(self) -> None:
        if not (0 < self.omega < self.m) or gcd(self.m, self.omega) != 1:
            raise ValueError(f"invalid orbifold data ({self.m}, {self.omega})")


@dataclass(frozen=True, slots=True)
class DltModel:
    kind: DltKind
    residual: PlumbingGraph
    orbifold_points: tuple[OrbifoldPoint, ...]
    sing_class: SingClass
    source: PlumbingGraph

    def orbifold_points_at(self, vid: str) -> tuple[OrbifoldPoint, ...]:
        return tuple(p for p in self.orbifold_points if p.host == vid)


# -- minimal log resolution ---------------------------------------------


def _contractible(g: PlumbingGraph, vid: str) -> bool:
    v = g.vertex(vid)
    return (
        v.euler == -1
        and v.genus == 0
        and g.loops_at(vid) == 0
        and g.arrow_count(vid) == 0
        and g.degree(vid) <= 2
    )


def blow_down(g: PlumbingGraph, vid: str) -> PlumbingGraph:
    """Contract one -1 vertex meeting the rest in at most two points."""
    if not _contractible(g, vid):
        raise GraphError(f"vertex {vid!r} is not contractible")
    incident = [e for e in g.edges if vid in e]
    ends = []
    for u, w in incident:
        ends.append(w if u == vid else u)
    out = g
    for u in ends:
        out = out.with_euler(u, out.vertex(u).euler + 1)
    if len(ends) == 2:
        out = out.without_vertex(vid, new_edges=[(ends[0], ends[1])])
    else:
        out = out.without_vertex(vid)
    return out


def minimal_log_resolution(g: PlumbingGraph) -> PlumbingGraph:
    """Blow down -1 curves until none with <= 2 intersection points remain."""
    if not g.is_connected():
        raise GraphError("graph must be connected")
    if not is_negative_definite(intersection_matrix(g)):
        raise GraphError("graph is not negative definite")
    while True:
        for vid in sorted(g.vertex_ids()):
            if _contractible(g, vid):
                g = blow_down(g, vid)
                break
        else:
            return g


# -- rational chain tails ------------------------------------------------


def _chain_member(g: PlumbingGraph, vid: str) -> bool:
    v = g.vertex(vid)
    return (
        v.genus == 0
        and g.loops_at(vid) == 0
        and g.arrow_count(vid) == 0
        and g.degree(vid) <= 2
        and all(g.edge_multiplicity(vid, w) == 1 for w in g.neighbors(vid))
    )


def rational_chain_tails(g: PlumbingGraph) -> list[list[str]]:
    """Maximal rational chains meeting the rest of the graph at one point.

    Each tail is returned free end first, attachment end last.  A graph
    that is entirely a chain raises WholeChainError so the caller can
    branch to the cyclic quotient case.
    """
    shape = classify_shape(g)
    if shape.kind is Shape.CHAIN:
        raise WholeChainError("the whole graph is a rational chain")
    if shape.kind is Shape.CYCLE:
        return []
    tails = []
    for v in sorted(g.vertex_ids()):
        if g.degree(v) == 1 and _chain_member(g, v):
            tail = [v]
            prev, cur = None, v
            while True:
                nxt = [w for w in g.neighbors(cur) if w != prev]
                if len(nxt) != 1:
                    break
                step = nxt[0]
                if not _chain_member(g, step):
                    break
                tail.append(step)
                prev, cur = cur, step
            tails.append(tail)
    return tails


# -- singularity class ----------------------------------------------------


def _chain_order(g: PlumbingGraph) -> list[str]:
    """Vertex ids of a chain graph in path order (deterministic end)."""
    if len(g.vertices) == 1:
        return [g.vertices[0].id]
    ends = sorted(v.id for v in g.vertices if g.degree(v.id) == 1)
    start = ends[0]
    order = [start]
    prev, cur = None, start
    while len(order) < len(g.vertices):
        nxt = [w for w in g.neighbors(cur) if w != prev]
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def cycle_order(g: PlumbingGraph) -> list[str]:
    """Vertex ids of a cycle graph in traversal order, canonical start."""
    ids = sorted(g.vertex_ids())
    start = ids[0]
    if len(ids) == 1:
        return ids
    if len(ids) == 2:
        return ids
    first = g.neighbors(start)[0]
    order = [start, first]
    prev, cur = start, first
    while len(order) < len(ids):
        nxt = [w for w in g.neighbors(cur) if w != prev]
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def _canonical_cycle_sequence(bs: list[int]) -> tuple[int, ...]:
    """Lexicographically minimal representative over rotations/reflections."""
    candidates = []
    for seq in (bs, bs[::-1]):
        for i in range(len(seq)):
            candidates.append(tuple(seq[i:] + seq[:i]))
    return min(candidates)


def singularity_class(g: PlumbingGraph) -> SingClass:
    """Classify a minimal log resolution graph.

    Chains give cyclic quotients, genus-0 cycles give cusps, three-legged
    genus-0 stars with 1/a1 + 1/a2 + 1/a3 > 1 give the finite noncyclic
    quotients; everything else has infinite, non-cusp fundamental group.
    """
    if not g.vertices:
        return SingClass(SingKind.CYCLIC_QUOTIENT, m=1, q=0)
    if not g.is_connected():
        raise GraphError("graph must be connected")
    if not is_negative_definite(intersection_matrix(g)):
        raise GraphError("graph is not negative definite")
    shape = classify_shape(g)
    if shape.kind is Shape.CHAIN:
        order = _chain_order(g)
        bs = [-g.vertex(v).euler for v in order]
        if any(b < 2 for b in bs):
            raise GraphError("chain is not a minimal log resolution (some b < 2)")
        m_f, q_f = hj_pair(bs)
        m_b, q_b = hj_pair(bs[::-1])
        assert m_f == m_b
        return SingClass(SingKind.CYCLIC_QUOTIENT, m=m_f, q=min(q_f, q_b))
    if shape.kind is Shape.CYCLE:
        order = cycle_order(g)
        bs = [-g.vertex(v).euler for v in order]
        if any(b < 2 for b in bs):
            raise GraphError("cycle is not a minimal log resolution (some b < 2)")
        return SingClass(SingKind.CUSP, b_sequence=_canonical_cycle_sequence(bs))
    if shape.kind is Shape.STAR:
        center = shape.center
        cv = g.vertex(center)
        legs = star_legs(g, center)
        if cv.genus == 0 and len(legs) == 3:
            alphas = []
            for leg in legs:
                bs = [-g.vertex(v).euler for v in leg]
                alphas.append(hj_pair(bs)[0])
            if sum(Fraction(1, a) for a in alphas) > 1:
                return SingClass(SingKind.NONCYCLIC_QUOTIENT, alphas=tuple(sorted(alphas)))
    return SingClass(SingKind.GENERAL)


# -- minimal dlt model -----------------------------------------------------


def minimal_dlt_model(g: PlumbingGraph) -> DltModel:
    """Contract maximal rational chain tails of a minimal log resolution.

    Quotient singularities are their own minimal dlt modification and come
    back as SelfDlt with an empty residual graph.
    """
    cls = singularity_class(g)
    if cls.is_quotient():
        empty = PlumbingGraph((), (), (), g.name)
        return DltModel(DltKind.SELF_DLT, empty, (), cls, g)
    if cls.kind is SingKind.CUSP:
        return DltModel(DltKind.MODEL, g, (), cls, g)
    tails = rational_chain_tails(g)
    points = []
    removed: set[str] = set()
    for tail in tails:
        attach = tail[-1]
        hosts = [w for w in g.neighbors(attach) if w not in tail]
        assert len(hosts) == 1
        host = hosts[0]
        outward = tail[::-1]  # host-adjacent first, free end last
        terms = tuple(-g.vertex(v).euler for v in outward)
        m, omega = hj_pair(terms)
        points.append(OrbifoldPoint(host, m, omega, leg=attach, terms=terms, tail_ids=tuple(outward)))
        removed.update(tail)
    residual = g.restricted_to(set(g.vertex_ids()) - removed)
    points.sort(key=lambda p: (p.host, p.leg))
    return DltModel(DltKind.MODEL, residual, tuple(points), cls, g)
