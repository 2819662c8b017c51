"""Exact integral homology of finite chain complexes.

Everything runs in arbitrary-precision integer (or rational) arithmetic.
Rank computations are fraction-free: unit (+-1) pivots are eliminated
first, chosen by least Markowitz fill, using pure column operations; a
Bareiss pass handles whatever small residual block survives.  Invariant
factors come from a smallest-pivot Smith reduction of the same residual,
so unit pivots contribute factors of 1 without any coefficient growth.

The optional reduction pass shrinks a whole chain complex by the same
unit-pivot eliminations applied compatibly across dimensions.  Killing
the entry (a, b) of d_k only requires column operations inside d_k plus
deletions: after the basis change the b-row of d_{k+1} vanishes
identically (a consequence of dd = 0), so integral homology, torsion
included, is preserved exactly.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class ChainComplexError(ValueError):
    pass


Matrix = dict[int, dict[int, int]]  # column -> row -> coefficient


class ChainComplex:
    """Cell counts per dimension plus sparse boundary matrices; the k-th
    matrix maps k-cells (columns) to (k-1)-cells (rows)."""

    def __init__(self, counts: tuple[int, ...], boundaries: dict[int, Matrix]):
        self.counts = tuple(counts)
        self.boundaries = boundaries

    def total_cells(self) -> int:
        return sum(self.counts)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts))

    def validate(self) -> "ChainComplex":
        for k, mat in self.boundaries.items():
            if not 1 <= k < len(self.counts):
                raise ChainComplexError(f"boundary matrix at impossible dimension {k}")
            for c, col in mat.items():
                if not 0 <= c < self.counts[k]:
                    raise ChainComplexError(f"d_{k}: column {c} out of range")
                for r, v in col.items():
                    if not 0 <= r < self.counts[k - 1]:
                        raise ChainComplexError(f"d_{k}: row {r} out of range")
                    if not isinstance(v, int) or v == 0:
                        raise ChainComplexError(f"d_{k}[{r},{c}] = {v!r}")
        for k, mat in self.boundaries.items():
            low = self.boundaries.get(k - 1)
            if low is None:
                continue
            for c, col in mat.items():
                acc: dict[int, int] = {}
                for r, v in col.items():
                    for r2, v2 in low.get(r, {}).items():
                        acc[r2] = acc.get(r2, 0) + v * v2
                if any(acc.values()):
                    raise ChainComplexError(f"d_{k-1} d_{k} != 0 at column {c}")
        return self


def chain_complex(complex) -> ChainComplex:
    """Signed incidence matrices of a validated cube complex (any object
    with `cells` and `boundary_coefficients`)."""
    top = max((c.dim for c in complex.cells), default=-1)
    counts = [0] * (top + 1)
    local: dict[int, int] = {}
    for c in complex.cells:
        local[c.id] = counts[c.dim]
        counts[c.dim] += 1
    boundaries: dict[int, Matrix] = {k: {} for k in range(1, top + 1)}
    for c in complex.cells:
        if c.dim == 0:
            continue
        coeffs = complex.boundary_coefficients(c.id)
        if coeffs:
            boundaries[c.dim][local[c.id]] = {
                local[f]: v for f, v in coeffs.items()
            }
    return ChainComplex(tuple(counts), {k: m for k, m in boundaries.items() if m})


class _Eliminator:
    """Unit-pivot elimination over a family of sparse matrices indexed by
    dimension.  In chain mode the cross-dimension deletions that keep the
    complex chain-homotopy-equivalent are performed as well."""

    def __init__(self, matrices: dict[int, Matrix], chain_mode: bool):
        self.chain_mode = chain_mode
        self.cols: dict[int, Matrix] = {
            k: {c: dict(col) for c, col in m.items()} for k, m in matrices.items()
        }
        self.rows: dict[int, dict[int, set[int]]] = {}
        for k, m in self.cols.items():
            idx: dict[int, set[int]] = {}
            for c, col in m.items():
                for r in col:
                    idx.setdefault(r, set()).add(c)
            self.rows[k] = idx
        self.pivots: dict[int, list[tuple[int, int]]] = {k: [] for k in self.cols}
        self.heap: list[tuple[int, int, int, int]] = []
        for k in sorted(self.cols):
            for c in sorted(self.cols[k]):
                for r, v in sorted(self.cols[k][c].items()):
                    if v in (1, -1):
                        heapq.heappush(self.heap, (self._fill(k, r, c), k, r, c))

    def _fill(self, k: int, r: int, c: int) -> int:
        return (len(self.rows[k][r]) - 1) * (len(self.cols[k][c]) - 1)

    def run(self) -> None:
        while self.heap:
            fill, k, r, c = heapq.heappop(self.heap)
            col = self.cols.get(k, {}).get(c)
            if col is None:
                continue
            if col.get(r) not in (1, -1):
                continue
            cur = self._fill(k, r, c)
            if cur != fill:
                heapq.heappush(self.heap, (cur, k, r, c))
                continue
            self._eliminate(k, r, c)

    def _eliminate(self, k: int, a: int, b: int) -> None:
        cols_k, rows_k = self.cols[k], self.rows[k]
        colb = cols_k.pop(b)
        for r in colb:
            s = rows_k.get(r)
            if s is not None:
                s.discard(b)
                if not s:
                    del rows_k[r]
        u = colb.pop(a)
        for c in sorted(rows_k.pop(a, ())):
            col = cols_k[c]
            f = col.pop(a) * u  # u is +-1, so v/u == v*u
            for r, w in sorted(colb.items()):
                nv = col.get(r, 0) - f * w
                if nv == 0:
                    if r in col:
                        del col[r]
                        rs = rows_k[r]
                        rs.discard(c)
                        if not rs:
                            del rows_k[r]
                else:
                    if r not in col:
                        rows_k.setdefault(r, set()).add(c)
                    col[r] = nv
                    if nv in (1, -1):
                        heapq.heappush(self.heap, (self._fill(k, r, c), k, r, c))
            if not col:
                del cols_k[c]
        self.pivots[k].append((a, b))
        if not self.chain_mode:
            return
        low = self.cols.get(k - 1)
        if low is not None and a in low:
            cola = low.pop(a)
            rlow = self.rows[k - 1]
            for r in cola:
                rlow[r].discard(a)
                if not rlow[r]:
                    del rlow[r]
        high_rows = self.rows.get(k + 1)
        if high_rows is not None and b in high_rows:
            for w in sorted(high_rows.pop(b)):
                colw = self.cols[k + 1][w]
                del colw[b]
                if not colw:
                    del self.cols[k + 1][w]


def morse_reduce(chain: ChainComplex) -> ChainComplex:
    """Chain-homotopy-equivalent complex with unit-pivot pairs removed;
    integral homology (torsion included) is unchanged."""
    matrices = {k: m for k, m in chain.boundaries.items()}
    elim = _Eliminator(matrices, chain_mode=True)
    elim.run()
    alive: list[set[int]] = [set(range(c)) for c in chain.counts]
    for k, pairs in elim.pivots.items():
        for a, b in pairs:
            alive[k - 1].discard(a)
            alive[k].discard(b)
    remap: list[dict[int, int]] = [
        {old: i for i, old in enumerate(sorted(s))} for s in alive
    ]
    boundaries: dict[int, Matrix] = {}
    for k, m in elim.cols.items():
        if not m:
            continue
        out: Matrix = {}
        for c in sorted(m):
            col = m[c]
            if col:
                out[remap[k][c]] = {remap[k - 1][r]: v for r, v in col.items()}
        if out:
            boundaries[k] = out
    return ChainComplex(tuple(len(s) for s in alive), boundaries)


def _residual_dense(cols: Matrix) -> list[list[int]]:
    row_ids = sorted({r for col in cols.values() for r in col})
    rpos = {r: i for i, r in enumerate(row_ids)}
    dense = []
    for c in sorted(cols):
        vec = [0] * len(row_ids)
        for r, v in cols[c].items():
            vec[rpos[r]] = v
        dense.append(vec)
    # transpose: rows of the dense matrix are matrix rows
    return [list(t) for t in zip(*dense)] if dense else []


def _bareiss_rank(M: list[list[int]]) -> int:
    if not M or not M[0]:
        return 0
    M = [row[:] for row in M]
    R, C = len(M), len(M[0])
    rank = 0
    prev = 1
    for c in range(C):
        piv = next((i for i in range(rank, R) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for i in range(rank + 1, R):
            if M[i][c] or any(M[i][c + 1 :]):
                mic = M[i][c]
                for j in range(c + 1, C):
                    M[i][j] = (M[i][j] * p - mic * M[rank][j]) // prev
                M[i][c] = 0
        prev = p
        rank += 1
        if rank == R:
            break
    return rank


def matrix_rank(matrix) -> int:
    """Exact rank over the rationals of a sparse or dense integer matrix."""
    cols = _as_columns(matrix)
    elim = _Eliminator({0: cols}, chain_mode=False)
    elim.run()
    return len(elim.pivots[0]) + _bareiss_rank(_residual_dense(elim.cols[0]))


def _as_columns(matrix) -> Matrix:
    if isinstance(matrix, dict):
        return {c: {r: int(v) for r, v in col.items() if v} for c, col in matrix.items()}
    cols: Matrix = {}
    for i, row in enumerate(matrix):
        for j, v in enumerate(row):
            if v:
                cols.setdefault(j, {})[i] = int(v)
    return cols


def _dense_snf(M: list[list[int]]) -> list[int]:
    """Invariant factors of a small dense integer matrix; smallest-
    magnitude pivoting with nonzero-count tie-break."""
    if not M or not M[0]:
        return []
    M = [row[:] for row in M]
    R, C = len(M), len(M[0])
    factors: list[int] = []
    t = 0
    while t < min(R, C):
        best = None
        for i in range(t, R):
            for j in range(t, C):
                v = M[i][j]
                if not v:
                    continue
                nnz = sum(1 for x in M[i][t:] if x) + sum(
                    1 for q in range(t, R) if M[q][j]
                )
                key = (abs(v), nnz, i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _, bi, bj = best
        M[t], M[bi] = M[bi], M[t]
        for row in M:
            row[t], row[bj] = row[bj], row[t]
        while True:
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, R):
                if M[i][t]:
                    q = M[i][t] // piv
                    for j in range(t, C):
                        M[i][j] -= q * M[t][j]
                    if M[i][t]:
                        M[t], M[i] = M[i], M[t]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, C):
                if M[t][j]:
                    q = M[t][j] // piv
                    for i in range(t, R):
                        M[i][j] -= q * M[i][t]
                    if M[t][j]:
                        for row in M:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if dirty:
                continue
            off = None
            for i in range(t + 1, R):
                for j in range(t + 1, C):
                    if M[i][j] % piv:
                        off = i
                        break
                if off is not None:
                    break
            if off is None:
                break
            for j in range(t, C):
                M[t][j] += M[off][j]
        factors.append(abs(M[t][t]))
        t += 1
    return factors


def smith_normal_form(matrix) -> tuple[tuple[int, ...], int]:
    """Invariant factors d_1 | d_2 | ... | d_r and the rank r."""
    cols = _as_columns(matrix)
    elim = _Eliminator({0: cols}, chain_mode=False)
    elim.run()
    units = len(elim.pivots[0])
    rest = _dense_snf(_residual_dense(elim.cols[0]))
    # unit pivots contribute factors of 1, which divide everything
    factors = [1] * units + rest
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            a, b = factors[i], factors[j]
            g = gcd(a, b)
            factors[i], factors[j] = g, a * b // g
    return tuple(factors), len(factors)


def rank_mod_p(matrix, p: int) -> int:
    """Rank over the field with p elements (cross-check arithmetic)."""
    if p < 2:
        raise ValueError("modulus must be at least 2")
    cols = _as_columns(matrix)
    basis: dict[int, dict[int, int]] = {}
    for c in sorted(cols):
        vec = {r: v % p for r, v in cols[c].items() if v % p}
        while vec:
            lead = min(vec)
            if lead not in basis:
                basis[lead] = vec
                break
            b = basis[lead]
            f = (vec[lead] * pow(b[lead], -1, p)) % p
            nxt: dict[int, int] = {}
            for r in set(vec) | set(b):
                v = (vec.get(r, 0) - f * b.get(r, 0)) % p
                if v:
                    nxt[r] = v
            vec = nxt
    return len(basis)


class RationalColumnSpace:
    """Incremental column space over the rationals; used for membership
    tests of cycles in boundary images."""

    def __init__(self):
        self._basis: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._basis)

    def _reduce(self, vec: dict) -> dict[int, Fraction]:
        v = {r: Fraction(x) for r, x in vec.items() if x}
        while v:
            lead = min(v)
            b = self._basis.get(lead)
            if b is None:
                return v
            f = v[lead] / b[lead]
            nxt: dict[int, Fraction] = {}
            for r in set(v) | set(b):
                val = v.get(r, 0) - f * b.get(r, 0)
                if val:
                    nxt[r] = val
            v = nxt
        return v

    def add(self, vec: dict) -> bool:
        res = self._reduce(vec)
        if res:
            self._basis[min(res)] = res
            return True
        return False

    def contains(self, vec: dict) -> bool:
        return not self._reduce(vec)


@dataclass(frozen=True)
class HomologyResult:
    f_vector: tuple[int, ...]
    euler: int
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    reduced_cells: tuple[int, ...]
    betti_mod: dict[int, tuple[int, ...]] | None = None

    def to_json_dict(self) -> dict:
        out = {
            "f_vector": list(self.f_vector),
            "euler": self.euler,
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "reduced_cells": list(self.reduced_cells),
        }
        if self.betti_mod is not None:
            out["betti_mod"] = {
                str(p): list(b) for p, b in sorted(self.betti_mod.items())
            }
        return out


def homology_of_chain(
    chain: ChainComplex,
    reduce: bool = True,
    mod_primes: tuple[int, ...] = (),
    f_vector: tuple[int, ...] | None = None,
) -> HomologyResult:
    work = morse_reduce(chain) if reduce else chain
    top = len(work.counts) - 1
    ranks = [0] * (top + 2)
    torsion: list[tuple[int, ...]] = [()] * (top + 1)
    for k in range(1, top + 1):
        mat = work.boundaries.get(k)
        if not mat:
            continue
        factors, rank = smith_normal_form(mat)
        ranks[k] = rank
        tors = tuple(f for f in factors if f > 1)
        if tors:
            torsion[k - 1] = tors
    betti = tuple(
        work.counts[k] - ranks[k] - ranks[k + 1] for k in range(top + 1)
    )
    betti_mod = None
    if mod_primes:
        betti_mod = {}
        for p in mod_primes:
            pranks = [0] * (top + 2)
            for k in range(1, top + 1):
                mat = work.boundaries.get(k)
                if mat:
                    pranks[k] = rank_mod_p(mat, p)
            betti_mod[p] = tuple(
                work.counts[k] - pranks[k] - pranks[k + 1] for k in range(top + 1)
            )
    fv = f_vector if f_vector is not None else chain.counts
    euler = sum((-1) ** k * c for k, c in enumerate(fv))
    return HomologyResult(
        f_vector=tuple(fv),
        euler=euler,
        betti=betti,
        torsion=tuple(torsion),
        reduced_cells=work.counts,
        betti_mod=betti_mod,
    )


def betti_numbers(
    complex, reduce: bool = True, mod_primes: tuple[int, ...] = ()
) -> HomologyResult:
    """Exact integral homology of a validated cube complex."""
    complex.validate()
    chain = chain_complex(complex)
    return homology_of_chain(
        chain, reduce=reduce, mod_primes=mod_primes, f_vector=complex.f_vector()
    )
