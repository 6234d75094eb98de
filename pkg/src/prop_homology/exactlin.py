"""Exact sparse linear algebra over the rationals.

Rank via fraction-free (Bareiss) elimination on big integers, reduced
column bases for projector images, and Betti numbers of based cochain
complexes.  A ``ComplexWindow`` holds consecutive degrees [p0, p1] with
differentials d_p : degree p -> p+1; complexes that are unbounded in p
are verified on windows, and a Betti number is reported as complete only
where both adjacent differentials are known (inside the window, or
guaranteed zero by a closed end).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = dict[int, Fraction]  # sparse column: row index -> value


class SparseMatrix:
    """Immutable sparse matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], Fraction | int] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Fraction] = {}
        for (r, c), v in dict(entries).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError("entry (%d, %d) out of range" % (r, c))
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Vector]) -> "SparseMatrix":
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    entries[(r, c)] = Fraction(v)
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def column(self, c: int) -> Vector:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self) -> list[Vector]:
        cols: list[Vector] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def scale(self, a: Fraction | int) -> "SparseMatrix":
        a = Fraction(a)
        return SparseMatrix(self.rows, self.cols,
                            {rc: v * a for rc, v in self.entries.items()} if a else {})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        entries = dict(self.entries)
        for rc, v in other.entries.items():
            w = entries.get(rc, ZERO) + v
            if w:
                entries[rc] = w
            else:
                entries.pop(rc, None)
        return SparseMatrix(self.rows, self.cols, entries)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def __mul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product: %dx%d by %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in self.entries.items():
            by_row.setdefault(r, []).append((c, v))
        by_col: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other.entries.items():
            by_col.setdefault(c, []).append((r, v))
        # accumulate via the middle index for sparsity
        mid: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in self.entries.items():
            mid.setdefault(c, []).append((r, v))
        entries: dict[tuple[int, int], Fraction] = {}
        for c, rights in by_col.items():
            acc: Vector = {}
            for k, v in rights:
                for r, w in mid.get(k, ()):
                    x = acc.get(r, ZERO) + w * v
                    if x:
                        acc[r] = x
                    else:
                        acc.pop(r, None)
            for r, x in acc.items():
                entries[(r, c)] = x
        return SparseMatrix(self.rows, other.cols, entries)

    def matvec(self, col: Vector) -> Vector:
        out: Vector = {}
        by_col: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        for c, x in col.items():
            for r, v in by_col.get(c, ()):
                y = out.get(r, ZERO) + v * x
                if y:
                    out[r] = y
                else:
                    out.pop(r, None)
        return out

    def dump_text(self) -> str:
        """Plain-text dump: 'rows cols nnz' header then 'row col num/den' lines."""
        lines = ["%d %d %d" % (self.rows, self.cols, len(self.entries))]
        for (r, c) in sorted(self.entries):
            v = self.entries[(r, c)]
            lines.append("%d %d %d/%d" % (r, c, v.numerator, v.denominator))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse_text(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        rows, cols, nnz = (int(x) for x in lines[0].split())
        entries = {}
        for ln in lines[1:]:
            r, c, v = ln.split()
            entries[(int(r), int(c))] = Fraction(v)
        if len(entries) != nnz:
            raise ValueError("nnz header does not match entry count")
        return cls(rows, cols, entries)

    def __repr__(self):
        return "SparseMatrix(%dx%d, nnz=%d)" % (self.rows, self.cols, len(self.entries))


def rank(m: SparseMatrix) -> int:
    """Exact rank over Q, fraction-free Bareiss elimination with big integers.

    Rows are first scaled integral (rank-preserving); pivots are chosen by
    sparsity (shortest row, then least-used column).  One-step Bareiss keeps
    every intermediate entry an integer minor, so divisions are exact.
    """
    rows: list[dict[int, int]] = []
    for r in range(m.rows):
        row: dict[int, Fraction] = {}
        for (rr, c), v in m.entries.items():
            if rr == r:
                row[c] = v
        if row:
            den = lcm(*(v.denominator for v in row.values()))
            rows.append({c: int(v * den) for c, v in row.items()})
    rnk = 0
    prev = 1
    while rows:
        pivot_row = min(rows, key=len)
        col_use: dict[int, int] = {}
        for row in rows:
            for c in row:
                col_use[c] = col_use.get(c, 0) + 1
        pc = min(pivot_row, key=lambda c: (col_use[c], c))
        rows.remove(pivot_row)
        p = pivot_row[pc]
        rnk += 1
        nxt: list[dict[int, int]] = []
        for row in rows:
            f = row.pop(pc, 0)
            new: dict[int, int] = {}
            keys = set(row) | (set(pivot_row) - {pc} if f else set())
            for c in keys:
                num = p * row.get(c, 0) - f * pivot_row.get(c, 0)
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division not exact"
                if q:
                    new[c] = q
            if new:
                nxt.append(new)
        rows = nxt
        prev = p
    return rnk


class ReducedBasis:
    """Reduced column basis of a subspace of Q^rows, with pivot bookkeeping.

    Basis vectors are in reduced column echelon form: each has a pivot row
    with value 1 where all other basis vectors vanish, so coordinates of a
    member vector are read off at the pivots.
    """

    def __init__(self, nrows: int):
        self.nrows = nrows
        self.vectors: list[Vector] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def _reduce(self, vec: Vector) -> tuple[Vector, list[Fraction]]:
        v = dict(vec)
        coords = []
        for piv, basis_vec in zip(self.pivots, self.vectors):
            c = v.get(piv, ZERO)
            coords.append(c)
            if c:
                for r, w in basis_vec.items():
                    x = v.get(r, ZERO) - c * w
                    if x:
                        v[r] = x
                    else:
                        v.pop(r, None)
        return v, coords

    def insert(self, vec: Vector) -> bool:
        """Add a vector to the span; returns True if it enlarged the basis."""
        v, _ = self._reduce(vec)
        v = {r: x for r, x in v.items() if x}
        if not v:
            return False
        piv = min(v)
        scale = v[piv]
        v = {r: x / scale for r, x in v.items()}
        # back-substitute to keep earlier vectors reduced against the new pivot
        for i, basis_vec in enumerate(self.vectors):
            c = basis_vec.get(piv, ZERO)
            if c:
                upd = dict(basis_vec)
                for r, w in v.items():
                    x = upd.get(r, ZERO) - c * w
                    if x:
                        upd[r] = x
                    else:
                        upd.pop(r, None)
                self.vectors[i] = upd
        self.vectors.append(v)
        self.pivots.append(piv)
        return True

    def coordinates(self, vec: Vector) -> list[Fraction] | None:
        """Coordinates of vec in this basis, or None if not in the span."""
        v, coords = self._reduce(vec)
        if any(x for x in v.values()):
            return None
        return coords

    def sort_canonical(self) -> None:
        """Order basis vectors by pivot row (deterministic presentation)."""
        order = sorted(range(self.dim), key=lambda i: self.pivots[i])
        self.vectors = [self.vectors[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]


def column_space_basis(nrows: int, columns: Iterable[Vector]) -> ReducedBasis:
    """Reduced basis of the span of the given sparse columns."""
    basis = ReducedBasis(nrows)
    for col in columns:
        basis.insert(col)
    basis.sort_canonical()
    return basis


# ---------------------------------------------------------------------------
# Complex windows and homology


class ComplexWindow:
    """Consecutive cochain degrees [p0, p1] with differentials d_p : p -> p+1.

    ``closed_below`` / ``closed_above`` declare that the complex is zero
    outside the corresponding end of the window, making the end degrees
    complete for homology purposes.
    """

    def __init__(self, p0: int, p1: int,
                 labels: Mapping[int, Sequence],
                 maps: Mapping[int, SparseMatrix],
                 closed_below: bool = True, closed_above: bool = False):
        if p1 < p0:
            raise ValueError("empty degree window")
        self.p0 = p0
        self.p1 = p1
        self.labels = {p: list(labels[p]) for p in range(p0, p1 + 1)}
        self.maps = dict(maps)
        self.closed_below = closed_below
        self.closed_above = closed_above
        for p in range(p0, p1):
            d = self.maps.get(p)
            if d is None:
                raise ValueError("missing differential at degree %d" % p)
            if d.cols != self.dim(p) or d.rows != self.dim(p + 1):
                raise ValueError("differential at degree %d has shape %dx%d, expected %dx%d"
                                 % (p, d.rows, d.cols, self.dim(p + 1), self.dim(p)))

    def dim(self, p: int) -> int:
        return len(self.labels.get(p, ()))

    def degrees(self) -> range:
        return range(self.p0, self.p1 + 1)

    def differential(self, p: int) -> SparseMatrix:
        return self.maps[p]

    def check_complex(self) -> None:
        """Verify d . d = 0 exactly; raises with the offending degree."""
        for p in range(self.p0, self.p1 - 1):
            if not (self.maps[p + 1] * self.maps[p]).is_zero():
                raise ValueError("not a complex: d.d != 0 at degree %d" % p)

    def dump_text(self) -> str:
        """All bases and matrices in the plain-text matrix format."""
        out = []
        for p in self.degrees():
            out.append("degree %d dim %d" % (p, self.dim(p)))
            for i, lab in enumerate(self.labels[p]):
                out.append("  basis %d %s" % (i, lab))
        for p in range(self.p0, self.p1):
            out.append("differential %d -> %d" % (p, p + 1))
            out.append(self.maps[p].dump_text().rstrip("\n"))
        return "\n".join(out) + "\n"


@dataclass
class HomologyProfile:
    """Exact Betti numbers per degree; incomplete degrees carry no number."""

    dims: dict[int, int] = field(default_factory=dict)
    rank_in: dict[int, int | None] = field(default_factory=dict)
    rank_out: dict[int, int | None] = field(default_factory=dict)
    betti: dict[int, int | None] = field(default_factory=dict)
    complete: dict[int, bool] = field(default_factory=dict)

    def complete_betti(self) -> dict[int, int]:
        return {p: b for p, b in self.betti.items() if self.complete[p]}

    def is_acyclic_interior(self) -> bool:
        return all(b == 0 for b in self.complete_betti().values())


def homology(w: ComplexWindow) -> HomologyProfile:
    """Betti numbers of a verified complex window (d.d = 0 is re-checked)."""
    w.check_complex()
    ranks: dict[int, int] = {p: rank(w.maps[p]) for p in range(w.p0, w.p1)}
    prof = HomologyProfile()
    for p in w.degrees():
        r_out = ranks.get(p)
        if r_out is None and w.closed_above and p == w.p1:
            r_out = 0
        r_in = ranks.get(p - 1)
        if r_in is None and w.closed_below and p == w.p0:
            r_in = 0
        prof.dims[p] = w.dim(p)
        prof.rank_in[p] = r_in
        prof.rank_out[p] = r_out
        if r_in is not None and r_out is not None:
            prof.betti[p] = w.dim(p) - r_in - r_out
            prof.complete[p] = True
        else:
            prof.betti[p] = None
            prof.complete[p] = False
    return prof


def check_chain_map(f: Mapping[int, SparseMatrix],
                    w1: ComplexWindow, w2: ComplexWindow) -> bool:
    """True iff f . d = d . f exactly at every degree where both sides exist."""
    checked = False
    for p in f:
        if p < w1.p0 or p > w1.p1 or p < w2.p0 or p > w2.p1:
            continue
        if f[p].cols != w1.dim(p) or f[p].rows != w2.dim(p):
            raise ValueError("chain map at degree %d has shape %dx%d, expected %dx%d"
                             % (p, f[p].rows, f[p].cols, w2.dim(p), w1.dim(p)))
        if p + 1 in f and p < w1.p1 and p < w2.p1:
            checked = True
            if f[p + 1] * w1.maps[p] != w2.maps[p] * f[p]:
                return False
    if not checked:
        raise ValueError("chain map check covers no degree")
    return True
