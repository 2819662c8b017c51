"""Builders for four square-tiled surface families.

All four live on an integer grid chart of width W = (2g-1)(n+1) and
height H = n+1 (the disk uses a plain n by n grid):

* disk: the n by n square region, no identifications.
* closed: left and right chart edges glued, bottom segment i glued to
  top segment 2g-2-i by translation; the 4g corner points of the glued
  segments all become one vertex p with cone angle (2g-1)*2*pi.
* bounded: the closed surface retiled by unit squares centered at the
  integer lattice, with the 2g-1 squares centered at copies of p
  removed; this realizes the surface with an open unit-ball neighborhood
  of p deleted, entirely combinatorially.
* dual_bounded: the subcomplex of the closed surface spanned by cells
  whose closure avoids p.

Gluings are translations, so every induced identification of cells is
orientation-consistent and the quotient is again a cube complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cube_complex import Cell, CubeComplex


class SurfaceError(ValueError):
    """Bad surface parameters."""


FAMILIES = ("disk", "closed", "bounded", "dual_bounded")


@dataclass(frozen=True)
class SurfaceDescriptor:
    family: str
    g: int
    n: int
    singular_vertex: int | None
    boundary_cells: frozenset[int]
    # dual_bounded only: parent_cells[new_id] = id of the same cell in the
    # closed complex it was carved from
    parent_cells: tuple[int, ...] | None = None
    degenerate: bool = False

    def to_json_dict(self) -> dict:
        out = {
            "family": self.family,
            "g": self.g,
            "n": self.n,
            "singular_vertex": self.singular_vertex,
            "boundary_cells": sorted(self.boundary_cells),
        }
        if self.parent_cells is not None:
            out["parent_cells"] = list(self.parent_cells)
        if self.degenerate:
            out["degenerate"] = True
        return out


def _check_params(g: int, n: int) -> None:
    if g < 1:
        raise SurfaceError("genus must be at least 1")
    if n < 1:
        raise SurfaceError("grid size n must be at least 1")


class GridSurface:
    """The glued grid chart of the closed surface, with the deterministic
    cell ids used by build_closed.  Shared with the metric code."""

    def __init__(self, g: int, n: int):
        _check_params(g, n)
        self.g = g
        self.n = n
        self.W = (2 * g - 1) * (n + 1)
        self.H = n + 1
        self._build()

    # -- chart identifications ------------------------------------------

    def seg_shift(self, x: int) -> int:
        """Horizontal translation glueing bottom segment containing x to
        its top partner.  Valid for 0 <= x < W; constant on each segment
        of length n+1."""
        i = x // (self.n + 1)
        return (2 * self.g - 2 - 2 * i) * (self.n + 1)

    def top_to_bottom(self, x: int) -> int:
        """Column a top-row point (x, H) lands on in the bottom row."""
        return (x + self.seg_shift(x)) % self.W

    def vclass(self, x: int, y: int):
        """Canonical vertex class of lattice point (x, y), 0 <= y <= H."""
        x %= self.W
        if y == self.H:
            return self.vclass(self.top_to_bottom(x), 0)
        if y == 0:
            return ("p",) if x % (self.n + 1) == 0 else ("b", x)
        return ("i", x, y)

    def hedge_coords(self, x: int, y: int) -> tuple[int, int]:
        """Canonical coordinates of the horizontal edge [x,x+1] x {y}."""
        x %= self.W
        if y == self.H:
            return (self.top_to_bottom(x), 0)
        return (x, y)

    # -- cell tables ----------------------------------------------------

    def _build(self) -> None:
        W, H, n = self.W, self.H, self.n
        cells: list[Cell] = []

        def vkey(cls):
            if cls[0] == "p":
                return (0, 0)
            if cls[0] == "b":
                return (0, cls[1])
            return (cls[2], cls[1])

        vclasses = [("p",)]
        vclasses += [("b", x) for x in range(W) if x % (n + 1) != 0]
        vclasses += [("i", x, y) for y in range(1, H) for x in range(W)]
        self.vertex_ids: dict[tuple, int] = {}
        for cls in sorted(vclasses, key=vkey):
            cid = len(cells)
            self.vertex_ids[cls] = cid
            if cls[0] == "p":
                label = "p"
            elif cls[0] == "b":
                label = f"V({cls[1]},0)"
            else:
                label = f"V({cls[1]},{cls[2]})"
            cells.append(Cell(cid, 0, (), label))

        edge_items = [("h", x, y) for y in range(H) for x in range(W)]
        edge_items += [("v", x, y) for y in range(H) for x in range(W)]
        edge_items.sort(key=lambda t: (t[2], t[1], t[0]))
        self.hedge_ids: dict[tuple[int, int], int] = {}
        self.vedge_ids: dict[tuple[int, int], int] = {}
        for kind, x, y in edge_items:
            cid = len(cells)
            if kind == "h":
                self.hedge_ids[(x, y)] = cid
                tail = self.vertex_ids[self.vclass(x, y)]
                head = self.vertex_ids[self.vclass(x + 1, y)]
                label = f"H({x},{y})"
            else:
                self.vedge_ids[(x, y)] = cid
                tail = self.vertex_ids[self.vclass(x, y)]
                head = self.vertex_ids[self.vclass(x, y + 1)]
                label = f"E({x},{y})"
            faces = tuple(sorted(((tail, -1), (head, 1))))
            cells.append(Cell(cid, 1, faces, label))

        self.square_ids: dict[tuple[int, int], int] = {}
        for y in range(H):
            for x in range(W):
                cid = len(cells)
                self.square_ids[(x, y)] = cid
                right = self.vedge_ids[((x + 1) % W, y)]
                left = self.vedge_ids[(x, y)]
                bottom = self.hedge_ids[(x, y)]
                top = self.hedge_ids[self.hedge_coords(x, y + 1)]
                faces = tuple(
                    sorted(((right, 1), (left, -1), (bottom, 1), (top, -1)))
                )
                cells.append(Cell(cid, 2, faces, f"F({x},{y})"))

        self.complex = CubeComplex(
            cells, {"family": "closed", "g": self.g, "n": self.n}
        )
        self.p_id = self.vertex_ids[("p",)]

    def corners_at_p(self) -> int:
        """Number of square corners incident to the singular vertex."""
        count = 0
        for (x, y) in self.square_ids:
            for cx, cy in ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)):
                if self.vclass(cx, cy) == ("p",):
                    count += 1
        return count

    def square_neighbor(
        self, x: int, y: int, side: str
    ) -> tuple[tuple[int, int], tuple[int, int]]:
        """Chart square reached by leaving square (x, y) through `side`
        (one of LRUD), plus the translation (dx, dy) to subtract from a
        point's running chart coordinates to land in the new square."""
        W, H = self.W, self.H
        if side == "R":
            nx = (x + 1) % W
            return (nx, y), (W if x + 1 == W else 0, 0)
        if side == "L":
            nx = (x - 1) % W
            return (nx, y), (-W if x == 0 else 0, 0)
        if side == "U":
            if y + 1 < H:
                return (x, y + 1), (0, 0)
            nx = self.top_to_bottom(x)
            return (nx, 0), (x - nx, H)
        if side == "D":
            if y > 0:
                return (x, y - 1), (0, 0)
            nx = self.top_to_bottom(x)
            return (nx, H - 1), (x - nx, -H)
        raise ValueError(f"unknown side {side!r}")


class ShiftedChart:
    """The bounded surface: unit squares centered at the integer lattice
    of the closed chart, minus the 2g-1 squares centered at p.  Cell
    index (x, y) names the object whose center/anchor sits at chart
    point (x + 1/2, y + 1/2); squares are indexed by their integer
    center (a, b)."""

    def __init__(self, g: int, n: int):
        _check_params(g, n)
        self.base = GridSurface(g, n)
        self.g, self.n = g, n
        W, n1 = self.base.W, n + 1
        self.removed = tuple((a, 0) for a in range(0, W, n1))
        self._build()

    def _build(self) -> None:
        base, n, W = self.base, self.n, self.base.W
        cells: list[Cell] = []

        self.vertex_ids: dict[tuple[int, int], int] = {}
        for y in range(n + 1):
            for x in range(W):
                cid = len(cells)
                self.vertex_ids[(x, y)] = cid
                cells.append(Cell(cid, 0, (), f"V({x}.5,{y}.5)"))

        edge_items = [("h", x, y) for y in range(n + 1) for x in range(W)]
        edge_items += [("v", x, y) for y in range(n + 1) for x in range(W)]
        edge_items.sort(key=lambda t: (t[2], t[1], t[0]))
        self.hedge_ids: dict[tuple[int, int], int] = {}
        self.vedge_ids: dict[tuple[int, int], int] = {}
        for kind, x, y in edge_items:
            cid = len(cells)
            if kind == "h":
                # [x-1/2, x+1/2] x {y+1/2}
                self.hedge_ids[(x, y)] = cid
                tail = self.vertex_ids[((x - 1) % W, y)]
                head = self.vertex_ids[(x, y)]
                label = f"H({x},{y}.5)"
            else:
                # {x+1/2} x [y-1/2, y+1/2]; at y=0 the lower endpoint lies
                # below the seam and glues into the top row
                self.vedge_ids[(x, y)] = cid
                if y > 0:
                    tail = self.vertex_ids[(x, y - 1)]
                else:
                    tail = self.vertex_ids[((x + base.seg_shift(x)) % W, n)]
                head = self.vertex_ids[(x, y)]
                label = f"E({x}.5,{y})"
            faces = tuple(sorted(((tail, -1), (head, 1))))
            cells.append(Cell(cid, 1, faces, label))

        removed = set(self.removed)
        self.square_ids: dict[tuple[int, int], int] = {}
        for b in range(n + 1):
            for a in range(W):
                if (a, b) in removed:
                    continue
                cid = len(cells)
                self.square_ids[(a, b)] = cid
                right = self.vedge_ids[(a, b)]
                left = self.vedge_ids[((a - 1) % W, b)]
                top = self.hedge_ids[(a, b)]
                if b > 0:
                    bottom = self.hedge_ids[(a, b - 1)]
                else:
                    bottom = self.hedge_ids[((a + base.seg_shift(a)) % W, n)]
                faces = tuple(
                    sorted(((right, 1), (left, -1), (bottom, 1), (top, -1)))
                )
                cells.append(Cell(cid, 2, faces, f"F({a},{b})"))

        self.complex = CubeComplex(
            cells, {"family": "bounded", "g": self.g, "n": self.n}
        )
        self.boundary_cells = _rim_cells(self.complex)


def _rim_cells(cc: CubeComplex) -> frozenset[int]:
    """Edges with exactly one incident square, plus their endpoints."""
    incidence: dict[int, int] = {}
    for c in cc.cells:
        if c.dim != 2:
            continue
        for fid, _ in c.faces:
            incidence[fid] = incidence.get(fid, 0) + 1
    rim: set[int] = set()
    for c in cc.cells:
        if c.dim == 1 and incidence.get(c.id, 0) == 1:
            rim.add(c.id)
            for fid, _ in c.faces:
                rim.add(fid)
    return frozenset(rim)


def boundary_cycles(cc: CubeComplex, boundary: frozenset[int]) -> list[int]:
    """Lengths of the cycles formed by the boundary edges.  Raises if the
    boundary is not a disjoint union of cycles."""
    edges = [cc.cells[i] for i in sorted(boundary) if cc.cells[i].dim == 1]
    at_vertex: dict[int, list[int]] = {}
    for e in edges:
        ends = {fid for fid, _ in e.faces}
        if len(ends) != 2:
            raise SurfaceError(f"boundary edge {e.id} is degenerate")
        for v in ends:
            if v not in boundary:
                raise SurfaceError(f"boundary misses endpoint {v} of edge {e.id}")
            at_vertex.setdefault(v, []).append(e.id)
    for v, inc in at_vertex.items():
        if len(inc) != 2:
            raise SurfaceError(f"boundary vertex {v} has {len(inc)} boundary edges")
    lengths = []
    unseen = {e.id for e in edges}
    while unseen:
        start = min(unseen)
        prev_v = None
        cur = start
        length = 0
        while True:
            unseen.discard(cur)
            length += 1
            ends = sorted({fid for fid, _ in cc.cells[cur].faces})
            nxt_v = ends[0] if ends[0] != prev_v else ends[1]
            if prev_v is None:
                nxt_v = ends[1]
            a, b = at_vertex[nxt_v]
            nxt_e = a if a != cur else b
            prev_v = nxt_v
            cur = nxt_e
            if cur == start:
                break
        lengths.append(length)
    return sorted(lengths)


@lru_cache(maxsize=None)
def closed_chart(g: int, n: int) -> GridSurface:
    return GridSurface(g, n)


@lru_cache(maxsize=None)
def shifted_chart(g: int, n: int) -> ShiftedChart:
    return ShiftedChart(g, n)


class DiskChart:
    """The plain n by n grid with its rim."""

    def __init__(self, n: int):
        if n < 1:
            raise SurfaceError("grid size n must be at least 1")
        self.n = n
        cells: list[Cell] = []
        self.vertex_ids: dict[tuple[int, int], int] = {}
        for y in range(n + 1):
            for x in range(n + 1):
                cid = len(cells)
                self.vertex_ids[(x, y)] = cid
                cells.append(Cell(cid, 0, (), f"V({x},{y})"))
        edge_items = [("h", x, y) for y in range(n + 1) for x in range(n)]
        edge_items += [("v", x, y) for y in range(n) for x in range(n + 1)]
        edge_items.sort(key=lambda t: (t[2], t[1], t[0]))
        self.hedge_ids: dict[tuple[int, int], int] = {}
        self.vedge_ids: dict[tuple[int, int], int] = {}
        for kind, x, y in edge_items:
            cid = len(cells)
            if kind == "h":
                self.hedge_ids[(x, y)] = cid
                tail = self.vertex_ids[(x, y)]
                head = self.vertex_ids[(x + 1, y)]
                label = f"H({x},{y})"
            else:
                self.vedge_ids[(x, y)] = cid
                tail = self.vertex_ids[(x, y)]
                head = self.vertex_ids[(x, y + 1)]
                label = f"E({x},{y})"
            faces = tuple(sorted(((tail, -1), (head, 1))))
            cells.append(Cell(cid, 1, faces, label))
        self.square_ids: dict[tuple[int, int], int] = {}
        for y in range(n):
            for x in range(n):
                cid = len(cells)
                self.square_ids[(x, y)] = cid
                faces = tuple(
                    sorted(
                        (
                            (self.vedge_ids[(x + 1, y)], 1),
                            (self.vedge_ids[(x, y)], -1),
                            (self.hedge_ids[(x, y)], 1),
                            (self.hedge_ids[(x, y + 1)], -1),
                        )
                    )
                )
                cells.append(Cell(cid, 2, faces, f"F({x},{y})"))
        self.complex = CubeComplex(cells, {"family": "disk", "n": n})
        rim: set[int] = set()
        for (x, y), vid in self.vertex_ids.items():
            if x in (0, n) or y in (0, n):
                rim.add(vid)
        for (x, y), eid in self.hedge_ids.items():
            if y in (0, n):
                rim.add(eid)
        for (x, y), eid in self.vedge_ids.items():
            if x in (0, n):
                rim.add(eid)
        self.boundary_cells = frozenset(rim)


@lru_cache(maxsize=None)
def disk_chart(n: int) -> DiskChart:
    return DiskChart(n)


class DualChart:
    """The closed complex minus the open star of p, reindexed
    consecutively; parent ids are retained."""

    def __init__(self, g: int, n: int):
        _check_params(g, n)
        self.base = GridSurface(g, n)
        self.g, self.n = g, n
        cc = self.base.complex
        p = self.base.p_id
        keep = [c for c in cc.cells if p not in cc.closure_vertices(c.id)]
        self.parent_of: tuple[int, ...] = tuple(c.id for c in keep)
        self.new_of: dict[int, int] = {old: i for i, old in enumerate(self.parent_of)}
        cells = [
            Cell(
                i,
                c.dim,
                tuple((self.new_of[fid], s) for fid, s in c.faces),
                c.label,
            )
            for i, c in enumerate(keep)
        ]
        self.complex = CubeComplex(
            cells, {"family": "dual_bounded", "g": g, "n": n}
        )
        self.boundary_cells = _rim_cells(self.complex)


@lru_cache(maxsize=None)
def dual_chart(g: int, n: int) -> DualChart:
    return DualChart(g, n)


# -- public builders -----------------------------------------------------


def build_disk(n: int) -> tuple[CubeComplex, SurfaceDescriptor]:
    chart = disk_chart(n)
    desc = SurfaceDescriptor("disk", 0, n, None, chart.boundary_cells)
    return chart.complex, desc


def build_closed(g: int, n: int) -> tuple[CubeComplex, SurfaceDescriptor]:
    chart = closed_chart(g, n)
    desc = SurfaceDescriptor("closed", g, n, chart.p_id, frozenset())
    return chart.complex, desc


def build_bounded(g: int, n: int) -> tuple[CubeComplex, SurfaceDescriptor]:
    chart = shifted_chart(g, n)
    desc = SurfaceDescriptor("bounded", g, n, None, chart.boundary_cells)
    return chart.complex, desc


def build_dual_bounded(g: int, n: int) -> tuple[CubeComplex, SurfaceDescriptor]:
    chart = dual_chart(g, n)
    desc = SurfaceDescriptor(
        "dual_bounded",
        g,
        n,
        None,
        chart.boundary_cells,
        parent_cells=chart.parent_of,
        degenerate=(n == 1),
    )
    return chart.complex, desc


def shortest_essential_cycle_length(cc: CubeComplex, max_len: int) -> int | None:
    """Length of the shortest edge cycle of length <= max_len whose
    rational homology class is nonzero; None when every cycle that short
    bounds.  Cycles visit distinct vertices (multi-edges and one-edge
    loops are handled)."""
    from .homology import RationalColumnSpace

    space = RationalColumnSpace()
    for c in cc.cells:
        if c.dim == 2:
            vec = cc.boundary_coefficients(c.id)
            if vec:
                space.add(vec)
    adj: dict[int, list[tuple[int, int, int]]] = {}
    for c in cc.cells:
        if c.dim != 1:
            continue
        coeffs = cc.boundary_coefficients(c.id)
        if not coeffs:
            v = c.faces[0][0]
            adj.setdefault(v, []).append((v, c.id, 1))
            continue
        tail = next(f for f, s in coeffs.items() if s < 0)
        head = next(f for f, s in coeffs.items() if s > 0)
        adj.setdefault(tail, []).append((head, c.id, 1))
        adj.setdefault(head, []).append((tail, c.id, -1))
    best: int | None = None
    for start in sorted(adj):
        # each cycle is rooted at its least vertex
        stack: list[tuple[int, frozenset[int], tuple[tuple[int, int], ...]]] = [
            (start, frozenset((start,)), ())
        ]
        while stack:
            cur, visited, walk = stack.pop()
            for other, edge, sign in adj.get(cur, ()):
                if walk and edge == walk[-1][0]:
                    continue
                newlen = len(walk) + 1
                if newlen > max_len or (best is not None and newlen >= best):
                    continue
                if other == start:
                    chain: dict[int, int] = {}
                    for e, s in walk + ((edge, sign),):
                        chain[e] = chain.get(e, 0) + s
                    chain = {e: v for e, v in chain.items() if v}
                    if chain and not space.contains(chain):
                        best = newlen
                elif other > start and other not in visited:
                    stack.append(
                        (other, visited | {other}, walk + ((edge, sign),))
                    )
    return best


def build_family(
    family: str, g: int, n: int
) -> tuple[CubeComplex, SurfaceDescriptor]:
    if family == "disk":
        return build_disk(n)
    if family == "closed":
        return build_closed(g, n)
    if family == "bounded":
        return build_bounded(g, n)
    if family == "dual_bounded":
        return build_dual_bounded(g, n)
    raise SurfaceError(f"unknown family {family!r}; expected one of {FAMILIES}")
