"""Finite cube complexes with exact integer incidence data.

A complex is a flat list of cells indexed by id.  A cell of dimension d
carries exactly 2*d facet entries (face id, sign); a quotient that glues
two facets of the same cube together shows up as a repeated face id,
possibly with opposite signs.  The chain boundary is the signed sum of
the entries, so a cancelling pair contributes nothing to homology while
still witnessing the face relation for closure computations.
"""

from __future__ import annotations

from dataclasses import dataclass


class InvalidCellError(ValueError):
    """Incidence data does not describe a cube complex."""


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    faces: tuple[tuple[int, int], ...] = ()
    label: str = ""


class CubeComplex:
    """Cells in face-closed order: every facet id precedes the cell's own id."""

    def __init__(self, cells: list[Cell], metadata: dict | None = None):
        self.cells = list(cells)
        self.metadata = dict(metadata or {})
        self._vertex_sets: list[frozenset[int]] | None = None

    def __len__(self) -> int:
        return len(self.cells)

    def cell(self, cell_id: int) -> Cell:
        return self.cells[cell_id]

    @property
    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cells_of_dim(self, k: int) -> list[Cell]:
        return [c for c in self.cells if c.dim == k]

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.max_dim + 1)
        for c in self.cells:
            counts[c.dim] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * fk for k, fk in enumerate(self.f_vector()))

    def validate(self) -> "CubeComplex":
        """Check ids, facet counts, facet dimensions, signs, and dd = 0."""
        for i, c in enumerate(self.cells):
            if c.id != i:
                raise InvalidCellError(f"cell at position {i} has id {c.id}")
            if c.dim < 0:
                raise InvalidCellError(f"cell {i}: negative dimension")
            if len(c.faces) != 2 * c.dim:
                raise InvalidCellError(
                    f"cell {i}: dimension {c.dim} needs {2 * c.dim} facet"
                    f" entries, got {len(c.faces)}"
                )
            for fid, sign in c.faces:
                if not 0 <= fid < i:
                    raise InvalidCellError(f"cell {i}: facet id {fid} not below {i}")
                if self.cells[fid].dim != c.dim - 1:
                    raise InvalidCellError(
                        f"cell {i}: facet {fid} has dimension"
                        f" {self.cells[fid].dim}, expected {c.dim - 1}"
                    )
                if sign not in (1, -1):
                    raise InvalidCellError(f"cell {i}: facet sign {sign}")
        for c in self.cells:
            if c.dim < 2:
                continue
            acc: dict[int, int] = {}
            for fid, s in c.faces:
                for gid, t in self.cells[fid].faces:
                    acc[gid] = acc.get(gid, 0) + s * t
            bad = sorted(g for g, v in acc.items() if v != 0)
            if bad:
                raise InvalidCellError(
                    f"cell {c.id}: boundary of boundary is non-zero at {bad}"
                )
        return self

    def boundary_coefficients(self, cell_id: int) -> dict[int, int]:
        """Chain boundary of one cell; cancelling facet pairs are dropped."""
        acc: dict[int, int] = {}
        for fid, s in self.cells[cell_id].faces:
            acc[fid] = acc.get(fid, 0) + s
        return {f: v for f, v in acc.items() if v != 0}

    def closure(self, cell_id: int) -> frozenset[int]:
        seen = {cell_id}
        stack = [cell_id]
        while stack:
            for fid, _ in self.cells[stack.pop()].faces:
                if fid not in seen:
                    seen.add(fid)
                    stack.append(fid)
        return frozenset(seen)

    def closure_vertices(self, cell_id: int) -> frozenset[int]:
        if self._vertex_sets is None:
            vs: list[frozenset[int]] = []
            for c in self.cells:
                if c.dim == 0:
                    vs.append(frozenset((c.id,)))
                else:
                    acc: set[int] = set()
                    for fid, _ in c.faces:
                        acc |= vs[fid]
                    vs.append(frozenset(acc))
            self._vertex_sets = vs
        return self._vertex_sets[cell_id]

    def closures_disjoint(self, a: int, b: int) -> bool:
        # Two closures share a cell iff they share a 0-cell: every face
        # chain terminates in a 0-cell, so vertex sets decide disjointness.
        return self.closure_vertices(a).isdisjoint(self.closure_vertices(b))


SCOMPLEX_HEADER = "scomplex 1"


def to_scomplex(complex: CubeComplex) -> str:
    """Serialize; output is byte-stable for a fixed cell list."""
    out = [SCOMPLEX_HEADER]
    for c in complex.cells:
        head = f"c {c.id} {c.dim}"
        out.append(head + " " + c.label if c.label else head)
        for fid, sign in c.faces:
            out.append(f"b {c.id} {fid} {'+1' if sign > 0 else '-1'}")
    out.append("")
    return "\n".join(out)


def from_scomplex(text: str, validate: bool = True) -> CubeComplex:
    lines = text.splitlines()
    if not lines or lines[0].strip() != SCOMPLEX_HEADER:
        raise InvalidCellError("not an scomplex version 1 file")
    acc: list[tuple[int, int, str, list[tuple[int, int]]]] = []
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c "):
            body = line.split(" ", 3)
            if len(body) < 3:
                raise InvalidCellError(f"line {ln}: malformed cell record")
            cid, dim = int(body[1]), int(body[2])
            label = body[3] if len(body) > 3 else ""
            if cid != len(acc):
                raise InvalidCellError(f"line {ln}: cell id {cid}, expected {len(acc)}")
            acc.append((cid, dim, label, []))
        elif line.startswith("b "):
            body = line.split()
            if len(body) != 4:
                raise InvalidCellError(f"line {ln}: malformed incidence record")
            cid, fid, sign = int(body[1]), int(body[2]), int(body[3])
            if not acc or cid != acc[-1][0]:
                raise InvalidCellError(f"line {ln}: incidence for cell {cid} out of order")
            if sign not in (1, -1):
                raise InvalidCellError(f"line {ln}: incidence sign must be +1 or -1")
            acc[-1][3].append((fid, sign))
        else:
            raise InvalidCellError(f"line {ln}: unknown record {line.split()[0]!r}")
    cc = CubeComplex([Cell(i, d, tuple(fs), lab) for i, d, lab, fs in acc])
    if validate:
        cc.validate()
    return cc


def write_scomplex(complex: CubeComplex, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(to_scomplex(complex))


def read_scomplex(path: str, validate: bool = True) -> CubeComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return from_scomplex(fh.read(), validate=validate)
