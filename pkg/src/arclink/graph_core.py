"""Plumbing graphs: data model, text format, intersection matrix, shapes.

A plumbing graph is a weighted multigraph: each vertex carries an Euler
number e_v and a genus g_v; loops and parallel edges are allowed, and
arrowhead attachments mark boundary components of cut-open pieces.

Vertex ids are free-form tokens so that calculus steps can delete
vertices without renumbering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Malformed graph text or violated structural invariant."""


@dataclass(frozen=True, slots=True)
class Vertex:
    id: str
    euler: int
    genus: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise GraphError(f"vertex {self.id}: genus must be nonnegative")


def _norm_edge(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class PlumbingGraph:
    """Immutable weighted multigraph with optional arrowheads."""

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...] = ()
    arrows: tuple[str, ...] = ()
    name: str = "graph"
    _by_id: dict = field(init=False, repr=False, compare=False, hash=False, default=None)

    def __post_init__(self) -> None:
        by_id = {}
        for v in self.vertices:
            if v.id in by_id:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            by_id[v.id] = v
        for u, v in self.edges:
            for end in (u, v):
                if end not in by_id:
                    raise GraphError(f"edge ({u}, {v}) references unknown vertex {end!r}")
        for a in self.arrows:
            if a not in by_id:
                raise GraphError(f"arrow references unknown vertex {a!r}")
        object.__setattr__(self, "edges", tuple(sorted(_norm_edge(u, v) for u, v in self.edges)))
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))
        object.__setattr__(self, "_by_id", by_id)

    # -- basic queries -------------------------------------------------

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._by_id[vid]
        except KeyError:
            raise GraphError(f"no vertex {vid!r}") from None

    def has_vertex(self, vid: str) -> bool:
        return vid in self._by_id

    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def loops_at(self, vid: str) -> int:
        return sum(1 for u, v in self.edges if u == v == vid)

    def degree(self, vid: str) -> int:
        """Number of incident edge-ends; a loop counts twice."""
        d = 0
        for u, v in self.edges:
            if u == vid:
                d += 1
            if v == vid:
                d += 1
        return d

    def arrow_count(self, vid: str) -> int:
        return sum(1 for a in self.arrows if a == vid)

    def neighbors(self, vid: str) -> list[str]:
        """Distinct neighbors, loops excluded, sorted."""
        out = set()
        for u, v in self.edges:
            if u == vid and v != vid:
                out.add(v)
            elif v == vid and u != vid:
                out.add(u)
        return sorted(out)

    def edge_multiplicity(self, u: str, v: str) -> int:
        e = _norm_edge(u, v)
        return sum(1 for f in self.edges if f == e)

    def edge_instances(self) -> list[tuple[str, str, int]]:
        """Edges with a copy index distinguishing parallel edges."""
        seen: dict[tuple[str, str], int] = {}
        out = []
        for e in self.edges:
            k = seen.get(e, 0)
            out.append((e[0], e[1], k))
            seen[e] = k + 1
        return out

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[str, set[str]] = {v.id: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        stack = [self.vertices[0].id]
        seen = set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x] - seen)
        return len(seen) == len(self.vertices)

    # -- rewriting helpers (return new graphs) -------------------------

    def with_euler(self, vid: str, euler: int) -> "PlumbingGraph":
        vs = tuple(Vertex(v.id, euler, v.genus) if v.id == vid else v for v in self.vertices)
        return PlumbingGraph(vs, self.edges, self.arrows, self.name)

    def without_vertex(self, vid: str, new_edges: Iterable[tuple[str, str]] = ()) -> "PlumbingGraph":
        vs = tuple(v for v in self.vertices if v.id != vid)
        es = [e for e in self.edges if vid not in e]
        es.extend(new_edges)
        arrows = tuple(a for a in self.arrows if a != vid)
        return PlumbingGraph(vs, tuple(es), arrows, self.name)

    def restricted_to(self, keep: set[str]) -> "PlumbingGraph":
        vs = tuple(v for v in self.vertices if v.id in keep)
        es = tuple(e for e in self.edges if e[0] in keep and e[1] in keep)
        arrows = tuple(a for a in self.arrows if a in keep)
        return PlumbingGraph(vs, es, arrows, self.name)


# -- text format -------------------------------------------------------


def parse_plumbing(text: str) -> PlumbingGraph:
    """Parse the line-oriented graph format.

    Directives: ``graph <name>``, ``vertex <id> euler=<int> genus=<uint>``,
    ``edge <id> <id>``, ``arrow <id>``.  '#' starts a comment; repeated
    edge lines create parallel edges and ``edge a a`` creates a loop.
    """
    name = "graph"
    vertices: list[Vertex] = []
    ids = set()
    edges: list[tuple[str, str]] = []
    arrows: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]

        def fail(msg: str) -> GraphError:
            return GraphError(f"line {lineno}: {msg}")

        if kind == "graph":
            if len(tokens) != 2:
                raise fail("expected 'graph <name>'")
            name = tokens[1]
        elif kind == "vertex":
            if len(tokens) != 4:
                raise fail("expected 'vertex <id> euler=<int> genus=<uint>'")
            vid = tokens[1]
            if vid in ids:
                raise fail(f"duplicate vertex id {vid!r}")
            props = {}
            for tok in tokens[2:]:
                if "=" not in tok:
                    raise fail(f"expected key=value, got {tok!r}")
                key, _, val = tok.partition("=")
                try:
                    props[key] = int(val)
                except ValueError:
                    raise fail(f"non-integer value in {tok!r}") from None
            if set(props) != {"euler", "genus"}:
                raise fail("vertex needs exactly euler=<int> and genus=<uint>")
            if props["genus"] < 0:
                raise fail("genus must be nonnegative")
            vertices.append(Vertex(vid, props["euler"], props["genus"]))
            ids.add(vid)
        elif kind == "edge":
            if len(tokens) != 3:
                raise fail("expected 'edge <id> <id>'")
            for end in tokens[1:]:
                if end not in ids:
                    raise fail(f"edge endpoint {end!r} is not a declared vertex")
            edges.append((tokens[1], tokens[2]))
        elif kind == "arrow":
            if len(tokens) != 2:
                raise fail("expected 'arrow <id>'")
            if tokens[1] not in ids:
                raise fail(f"arrow target {tokens[1]!r} is not a declared vertex")
            arrows.append(tokens[1])
        else:
            raise fail(f"unknown directive {kind!r}")
    return PlumbingGraph(tuple(vertices), tuple(edges), tuple(arrows), name)


def serialize_plumbing(g: PlumbingGraph) -> str:
    """Canonical text form: sorted vertices, edges and arrows."""
    lines = [f"graph {g.name}"]
    for v in sorted(g.vertices, key=lambda v: v.id):
        lines.append(f"vertex {v.id} euler={v.euler} genus={v.genus}")
    for u, v in g.edges:
        lines.append(f"edge {u} {v}")
    for a in g.arrows:
        lines.append(f"arrow {a}")
    return "\n".join(lines) + "\n"


# -- intersection matrix and definiteness ------------------------------


def intersection_matrix(g: PlumbingGraph) -> list[list[int]]:
    """A_vv = e_v + 2*(#loops at v); A_uv = #edges between u and v.

    Rows follow the graph's vertex order; arrows do not contribute.
    """
    ids = g.vertex_ids()
    index = {vid: i for i, vid in enumerate(ids)}
    n = len(ids)
    mat = [[0] * n for _ in range(n)]
    for v in g.vertices:
        mat[index[v.id]][index[v.id]] = v.euler
    for u, v in g.edges:
        if u == v:
            mat[index[u]][index[u]] += 2
        else:
            mat[index[u]][index[v]] += 1
            mat[index[v]][index[u]] += 1
    return mat


def leading_principal_minors(mat: Sequence[Sequence[int]]) -> list[int]:
    """Exact leading principal minors det(A_k), k = 1..n."""
    return [_det_bareiss([row[:k] for row in mat[:k]]) for k in range(1, len(mat) + 1)]


def _det_bareiss(mat: Sequence[Sequence[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    # Bareiss with column pivoting; exact over the integers.
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(mat: Sequence[Sequence[int]]) -> int:
    return _det_bareiss(mat)


def is_negative_definite(mat: Sequence[Sequence[int]]) -> bool:
    """True iff the leading principal minors alternate, starting negative."""
    n = len(mat)
    for row in mat:
        if len(row) != n:
            raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(n):
            if mat[i][j] != mat[j][i]:
                raise ValueError("matrix must be symmetric")
    for k in range(1, n + 1):
        minor = _det_bareiss([row[:k] for row in mat[:k]])
        if (-1) ** k * minor <= 0:
            return False
    return True


def negative_definite_cholesky(mat: Sequence[Sequence[int]]) -> bool:
    """Independent oracle: rational LDL^T on -A, all pivots positive."""
    n = len(mat)
    a = [[Fraction(-mat[i][j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


# -- shape classification ----------------------------------------------


class Shape(Enum):
    CHAIN = "chain"
    STAR = "star"
    CYCLE = "cycle"
    GENERAL = "general"


@dataclass(frozen=True, slots=True)
class ShapeClass:
    kind: Shape
    center: str | None = None
    nodes: tuple[str, ...] = ()


def graph_nodes(g: PlumbingGraph) -> list[str]:
    """Vertices with genus > 0 or valency >= 3 (loops count twice)."""
    return sorted(v.id for v in g.vertices if v.genus > 0 or g.degree(v.id) >= 3)


def classify_shape(g: PlumbingGraph) -> ShapeClass:
    """Chain / Cycle / Star / General for a connected arrowless graph."""
    if g.arrows:
        raise GraphError("classify_shape expects a graph without arrows")
    if not g.vertices:
        return ShapeClass(Shape.CHAIN)
    if not g.is_connected():
        raise GraphError("classify_shape expects a connected graph")
    nodes = graph_nodes(g)
    n_vertices = len(g.vertices)
    n_edges = len(g.edges)
    if not nodes:
        # Every vertex has genus 0 and valency <= 2: a path or one cycle.
        if n_edges == n_vertices and all(g.degree(v.id) == 2 for v in g.vertices):
            return ShapeClass(Shape.CYCLE)
        return ShapeClass(Shape.CHAIN)
    if len(nodes) == 1 and n_edges == n_vertices - 1:
        center = nodes[0]
        if _legs_are_chains(g, center):
            return ShapeClass(Shape.STAR, center=center)
    return ShapeClass(Shape.GENERAL, nodes=tuple(nodes))


def _legs_are_chains(g: PlumbingGraph, center: str) -> bool:
    """Each component of g - center is a path joined to center at one end."""
    rest = set(g.vertex_ids()) - {center}
    for vid in rest:
        deg = g.degree(vid)
        if deg > 2 or g.loops_at(vid):
            return False
        if g.edge_multiplicity(center, vid) > 1:
            return False
    # Tree with all non-center valencies <= 2 and single attachment edges:
    # every component of the complement is then automatically a chain
    # hanging off the center at one end.
    return True


def star_legs(g: PlumbingGraph, center: str) -> list[list[str]]:
    """Legs of a star, each listed from the center outward."""
    legs = []
    for first in g.neighbors(center):
        for _ in range(g.edge_multiplicity(center, first)):
            leg = [first]
            prev, cur = center, first
            while True:
                nxt = [w for w in g.neighbors(cur) if w != prev]
                if not nxt:
                    break
                (cur, prev) = (nxt[0], cur)
                leg.append(cur)
            legs.append(leg)
    return sorted(legs)
