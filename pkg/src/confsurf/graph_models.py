"""Graphs as 1-dimensional cube complexes.

Includes edge subdivision and the sufficient-subdivision test that
certifies when the discrete configuration complex of a graph is a
faithful model (enough vertices, essential vertices far apart, no short
cycles).  Lengths are unit-edge counts throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .cube_complex import Cell, CubeComplex


class GraphError(ValueError):
    """Bad graph input."""


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph: `vertices` counts 0..vertices-1, edges are
    unordered pairs.  Loops and parallel edges are permitted."""

    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertices < 1:
            raise GraphError("graph needs at least one vertex")
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for u, v in self.edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise GraphError(f"edge ({u}, {v}) has an endpoint out of range")

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per vertex: list of (neighbor, edge index)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertices)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            if u != v:
                adj[v].append((u, i))
        return adj

    def degree(self, v: int) -> int:
        d = 0
        for u, w in self.edges:
            if u == v:
                d += 1
            if w == v:
                d += 1
        return d

    def is_connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        adj = self.adjacency()
        while queue:
            x = queue.popleft()
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.vertices


def cycle_graph(k: int) -> Graph:
    if k < 1:
        raise GraphError("cycle length must be positive")
    return Graph(k, tuple((i, (i + 1) % k) for i in range(k)))


def path_graph(k: int) -> Graph:
    """Path with k vertices and k-1 edges."""
    if k < 1:
        raise GraphError("path needs at least one vertex")
    return Graph(k, tuple((i, i + 1) for i in range(k - 1)))


def star_graph(leaves: int) -> Graph:
    """Vertex 0 joined to `leaves` outer vertices."""
    if leaves < 0:
        raise GraphError("leaf count must be non-negative")
    return Graph(leaves + 1, tuple((0, i + 1) for i in range(leaves)))


def graph_complex(graph: Graph) -> CubeComplex:
    """The graph as a cube complex: 0-cells then 1-cells, edge boundary
    is head minus tail."""
    for i, (u, v) in enumerate(graph.edges):
        if u == v:
            raise GraphError(
                f"edge {i} is a loop at vertex {u}; a loop is not a unit"
                " cube, subdivide the graph first"
            )
    cells = [Cell(i, 0, (), str(i)) for i in range(graph.vertices)]
    for i, (u, v) in enumerate(graph.edges):
        nid = graph.vertices + i
        faces = tuple(sorted(((u, -1), (v, 1))))
        cells.append(Cell(nid, 1, faces, f"{u}-{v}"))
    cc = CubeComplex(cells, {"kind": "graph"})
    return cc.validate()


def subdivide(graph: Graph, k: int) -> Graph:
    """Replace every edge by a path of k unit edges; original vertex ids
    are preserved and the k-1 interior vertices of edge i come next, in
    edge order."""
    if k < 1:
        raise GraphError("subdivision factor must be at least 1")
    if k == 1:
        return Graph(graph.vertices, graph.edges)
    nv = graph.vertices
    edges: list[tuple[int, int]] = []
    for u, v in graph.edges:
        chain = [u] + list(range(nv, nv + k - 1)) + [v]
        nv += k - 1
        edges.extend((chain[i], chain[i + 1]) for i in range(k))
    return Graph(nv, tuple(edges))


def _bfs_paths(graph: Graph, source: int, skip_edge: int | None = None):
    """Shortest-path tree: returns (dist, parent) arrays; parent[v] is the
    predecessor vertex on one shortest path."""
    dist = [-1] * graph.vertices
    parent = [-1] * graph.vertices
    dist[source] = 0
    queue = deque([source])
    adj = graph.adjacency()
    while queue:
        x = queue.popleft()
        for y, ei in adj[x]:
            if ei == skip_edge or dist[y] >= 0:
                continue
            dist[y] = dist[x] + 1
            parent[y] = x
            queue.append(y)
    return dist, parent


def _path_to(parent: list[int], source: int, target: int) -> tuple[int, ...]:
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    path.reverse()
    return tuple(path)


def essential_vertices(graph: Graph) -> tuple[int, ...]:
    """Vertices of valence at least 3; a loop contributes 2."""
    return tuple(v for v in range(graph.vertices) if graph.degree(v) >= 3)


def shortest_cycle(graph: Graph) -> tuple[int, ...] | None:
    """A shortest cycle as a closed vertex walk, or None for a forest.
    Loops give length 1, parallel edges length 2."""
    best: tuple[int, ...] | None = None
    for u, v in graph.edges:
        if u == v:
            cand = (u, u)
            if best is None or len(cand) < len(best):
                best = cand
    if best is not None:
        return best
    seen_pairs: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(graph.edges):
        key = (min(u, v), max(u, v))
        if key in seen_pairs:
            return (u, v, u)
        seen_pairs[key] = i
    for i, (u, v) in enumerate(graph.edges):
        dist, parent = _bfs_paths(graph, u, skip_edge=i)
        if dist[v] < 0:
            continue
        cand = _path_to(parent, u, v) + (u,)
        if best is None or len(cand) < len(best):
            best = cand
    return best


@dataclass(frozen=True)
class AbramsResult:
    ok: bool
    failed_condition: str | None = None
    witness: tuple[int, ...] | None = None
    length: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def abrams_check(graph: Graph, m: int) -> AbramsResult:
    """Sufficient condition for the m-particle discrete configuration
    complex of the graph to be a faithful model: at least m vertices,
    distinct essential vertices at distance >= m+1, and every cycle of
    length >= m+1.  The witness on failure is the offending path or
    closed walk."""
    if m < 1:
        raise GraphError("particle count must be positive")
    if not graph.is_connected():
        raise GraphError("sufficiency test needs a connected graph")
    if graph.vertices < m:
        return AbramsResult(False, "vertex-count", None, graph.vertices)
    ess = essential_vertices(graph)
    worst: tuple[int, tuple[int, ...]] | None = None
    for a in ess:
        dist, parent = _bfs_paths(graph, a)
        for b in ess:
            if b <= a:
                continue
            if 0 < dist[b] <= m and (worst is None or dist[b] < worst[0]):
                worst = (dist[b], _path_to(parent, a, b))
    if worst is not None:
        return AbramsResult(False, "essential-distance", worst[1], worst[0])
    cyc = shortest_cycle(graph)
    if cyc is not None and len(cyc) - 1 <= m:
        return AbramsResult(False, "girth", cyc, len(cyc) - 1)
    return AbramsResult(True)


def parse_graph_text(text: str) -> Graph:
    """Edge list, one `u v` pair per line; `#` starts a comment.  The
    vertex count is one plus the largest id seen."""
    edges: list[tuple[int, int]] = []
    top = -1
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {ln}: expected `u v`, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {ln}: vertex ids must be integers") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {ln}: vertex ids must be non-negative")
        edges.append((u, v))
        top = max(top, u, v)
    if top < 0:
        raise GraphError("empty edge list")
    return Graph(top + 1, tuple(edges))


def read_graph_file(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())
