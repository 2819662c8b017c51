"""Discrete configuration complexes.

The ordered complex on a base cube complex has one m-cell per ordered
m-tuple of base cells with pairwise disjoint closures; its boundary is
the tensor-product boundary with Leibniz signs.  The unordered complex
is the quotient by permuting factors: since disjoint closures force the
factors of a cell to be distinct, the action is free, orbits are keyed
by the sorted factor tuple, and boundary coefficients are transported
with Koszul signs.  Integral homology of the quotient may contain
2-torsion; it is reported as computed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .cube_complex import Cell, CubeComplex


class ConfigError(ValueError):
    pass


class CapExceeded(Exception):
    """Predicted enumeration size exceeds the configured cell cap."""


class ConfigWarning(UserWarning):
    pass


DEFAULT_CELL_CAP = 5_000_000


@dataclass(frozen=True)
class ProductCell:
    id: int
    factors: tuple[int, ...]
    dim: int


class DiscreteConfigComplex:
    def __init__(
        self,
        base: CubeComplex,
        m: int,
        ordered: bool,
        product_cells: tuple[ProductCell, ...],
        complex: CubeComplex,
    ):
        self.base = base
        self.m = m
        self.ordered = ordered
        self.product_cells = product_cells
        self.complex = complex
        self._index = {pc.factors: pc.id for pc in product_cells}

    def __len__(self) -> int:
        return len(self.product_cells)

    def cell_id(self, factors) -> int:
        return self._index[tuple(factors)]

    def f_vector(self) -> tuple[int, ...]:
        return self.complex.f_vector()

    def euler_characteristic(self) -> int:
        return self.complex.euler_characteristic()


def _check_m(base: CubeComplex, m: int, max_cells: int) -> None:
    if m < 1:
        raise ConfigError("particle count must be at least 1")
    if not base.cells:
        raise ConfigError("empty base complex")
    predicted = len(base.cells) ** m
    if predicted > max_cells:
        raise CapExceeded(
            f"enumerating {len(base.cells)}^{m} = {predicted} candidate tuples"
            f" exceeds the cap of {max_cells}"
        )
    n = base.metadata.get("n")
    if base.metadata.get("family") in ("disk", "closed", "bounded", "dual_bounded"):
        if isinstance(n, int) and m > n:
            warnings.warn(
                f"{m} particles on a grid of size n={n}: the discrete complex"
                " is only guaranteed to model the configuration space for"
                " particle counts up to n",
                ConfigWarning,
                stacklevel=3,
            )


def _enumerate_tuples(base: CubeComplex, m: int) -> list[tuple[int, ...]]:
    ncells = len(base.cells)
    masks = []
    for c in range(ncells):
        mask = 0
        for v in base.closure_vertices(c):
            mask |= 1 << v
        masks.append(mask)
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def rec(used: int) -> None:
        if len(prefix) == m:
            out.append(tuple(prefix))
            return
        for c in range(ncells):
            cm = masks[c]
            if cm & used:
                continue
            prefix.append(c)
            rec(used | cm)
            prefix.pop()

    rec(0)
    return out


def _koszul_sort_sign(factors: tuple[int, ...], dims: list[int]) -> int:
    """Sign of sorting the factor tuple: parity of inversions among the
    odd-dimensional factors."""
    odd = [f for f in factors if dims[f] % 2]
    inv = 0
    for i in range(len(odd)):
        for j in range(i + 1, len(odd)):
            if odd[i] > odd[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _build(
    base: CubeComplex, m: int, ordered: bool, max_cells: int
) -> DiscreteConfigComplex:
    _check_m(base, m, max_cells)
    dims = [c.dim for c in base.cells]
    tuples = _enumerate_tuples(base, m)
    if ordered:
        kept = tuples
    else:
        kept = [t for t in tuples if all(t[i] < t[i + 1] for i in range(m - 1))]
    kept.sort(key=lambda t: (sum(dims[f] for f in t), t))
    index = {t: i for i, t in enumerate(kept)}

    def rep_entry(t: tuple[int, ...]) -> tuple[int, int]:
        if ordered:
            return index[t], 1
        return index[tuple(sorted(t))], _koszul_sort_sign(t, dims)

    cells: list[Cell] = []
    pcs: list[ProductCell] = []
    for i, t in enumerate(kept):
        dim = sum(dims[f] for f in t)
        entries: list[tuple[int, int]] = []
        prefix_dim = 0
        for pos, f in enumerate(t):
            leib = -1 if prefix_dim % 2 else 1
            for fid, s in base.cells[f].faces:
                ft = t[:pos] + (fid,) + t[pos + 1 :]
                target, kappa = rep_entry(ft)
                entries.append((target, s * leib * kappa))
            prefix_dim += dims[f]
        label = "(" + ",".join(map(str, t)) + ")"
        cells.append(Cell(i, dim, tuple(sorted(entries)), label))
        pcs.append(ProductCell(i, t, dim))
    cc = CubeComplex(
        cells,
        {
            "kind": "discrete_config",
            "ordered": ordered,
            "m": m,
            "base_family": base.metadata.get("family"),
            "base_cells": len(base.cells),
        },
    )
    cc.validate()
    return DiscreteConfigComplex(base, m, ordered, tuple(pcs), cc)


def build_ordered(
    base: CubeComplex, m: int, max_cells: int = DEFAULT_CELL_CAP
) -> DiscreteConfigComplex:
    """All ordered m-tuples of cells with pairwise disjoint closures."""
    return _build(base, m, True, max_cells)


def build_unordered(
    base: CubeComplex, m: int, max_cells: int = DEFAULT_CELL_CAP
) -> DiscreteConfigComplex:
    """Orbit representatives (sorted factor tuples) with the transported
    signed boundary."""
    return _build(base, m, False, max_cells)


def orbit(dcx: DiscreteConfigComplex, cell: int, perm) -> tuple[int, int]:
    """Image of an ordered cell under a factor permutation, with the
    orientation sign of reshuffling the oriented factors."""
    if not dcx.ordered:
        raise ConfigError("orbit is defined on the ordered complex")
    perm = tuple(perm)
    if sorted(perm) != list(range(dcx.m)):
        raise ConfigError(f"not a permutation of 0..{dcx.m - 1}: {perm!r}")
    t = dcx.product_cells[cell].factors
    dims = [dcx.base.cells[f].dim for f in t]
    nt = tuple(t[perm[i]] for i in range(dcx.m))
    inv = 0
    for i in range(dcx.m):
        for j in range(i + 1, dcx.m):
            if perm[i] > perm[j] and dims[perm[i]] % 2 and dims[perm[j]] % 2:
                inv += 1
    return dcx.cell_id(nt), (-1 if inv % 2 else 1)


def permutation_map(dcx: DiscreteConfigComplex, perm) -> tuple[tuple[int, int], ...]:
    """orbit() applied to every cell id in order."""
    return tuple(orbit(dcx, c, perm) for c in range(len(dcx.product_cells)))
