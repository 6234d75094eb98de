"""Symmetric-group combinatorics.

Permutations with signs, shuffle enumeration, set partitions, the
antisymmetrizer Alt (signed sum over permutations, no 1/n! factor),
sign-isotypic (antiinvariant) bases via exact projectors, and integer
character tables via the Murnaghan-Nakayama recursion with isotypic
multiplicities by character inner product.

Integer partitions are plain weakly-decreasing tuples; they appear only
as labels for irreducibles and cycle types (the Schur-category induction
multiplicities are deliberately not implemented here).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .exactlin import ReducedBasis, SparseMatrix, column_space_basis

IntPartition = tuple[int, ...]
SetPartitionOrdered = tuple[tuple[int, ...], ...]

_DEFAULT_CHAR_TABLE_MAX_N = 8


class Permutation:
    """Permutation of [1, n]; images[i-1] = sigma(i)."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("not a permutation of [1, n]: %r" % (self.images,))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("permutation sizes differ")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def sign(self) -> int:
        return perm_sign(self.images)

    def cycle_type(self) -> IntPartition:
        seen = [False] * self.n
        lens = []
        for i in range(1, self.n + 1):
            if seen[i - 1]:
                continue
            ln, j = 0, i
            while not seen[j - 1]:
                seen[j - 1] = True
                j = self.images[j - 1]
                ln += 1
            lens.append(ln)
        return tuple(sorted(lens, reverse=True))

    def mapping_on(self, letters: Sequence[int]) -> dict[int, int]:
        """Letter relabelling l_i -> l_sigma(i) for the given ordered letters."""
        if len(letters) != self.n:
            raise ValueError("letter count does not match permutation size")
        return {letters[i - 1]: letters[self.images[i - 1] - 1] for i in range(1, self.n + 1)}

    def __repr__(self):
        return "Permutation(%r)" % (self.images,)


def perm_sign(images: Sequence[int]) -> int:
    """Sign of a permutation given in one-line form (any distinct values)."""
    n = len(images)
    inv = 0
    for i in range(n):
        for j in range(i + 1, n):
            if images[i] > images[j]:
                inv += 1
    return -1 if inv % 2 else 1


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def shuffles(*parts: int) -> list[Permutation]:
    """Permutations of [1, sum(parts)] preserving each consecutive block's order.

    Count is the multinomial coefficient; a block of size 0 contributes
    nothing.  The permutation sends the i-th position of block a to the
    i-th smallest target position assigned to block a.
    """
    if any(p < 0 for p in parts):
        raise ValueError("block sizes must be nonnegative")
    n = sum(parts)
    out = []
    for assignment in _block_assignments(n, [p for p in parts]):
        images = [0] * n
        pos = 0
        for targets in assignment:
            for t in targets:
                images[pos] = t
                pos += 1
        out.append(Permutation(images))
    return out


def _block_assignments(n: int, parts: list[int]):
    """Yield tuples of increasing target-position tuples, one per block."""
    if not parts:
        if n == 0:
            yield ()
        return
    slots = list(range(1, n + 1))

    def rec(remaining: tuple[int, ...], sizes: list[int]):
        if not sizes:
            yield ()
            return
        k = sizes[0]
        for chosen in itertools.combinations(remaining, k):
            rest = tuple(x for x in remaining if x not in chosen)
            for tail in rec(rest, sizes[1:]):
                yield (chosen,) + tail

    yield from rec(tuple(slots), parts)


def antisymmetrize(obj, letters: Iterable[int]):
    """Alt over the given letters: sum of sign(sigma) * relabelled copies.

    No 1/n! normalisation.  Works on any value with .relabel/.support and
    linear operations (AssocPoly, LiePoly, SymLiePoly, TensorLiePoly).
    """
    letters = sorted(letters)
    if not set(letters) <= set(obj.support):
        raise ValueError("letters not contained in the support")
    identity = {l: l for l in obj.support}
    total = None
    for images in itertools.permutations(range(len(letters))):
        mapping = dict(identity)
        for i, j in enumerate(images):
            mapping[letters[i]] = letters[j]
        term = obj.relabel(mapping).scale(perm_sign(images))
        total = term if total is None else total + term
    return total if total is not None else obj


def antiinvariant_basis(dim: int, action: Mapping[Permutation, SparseMatrix]) -> ReducedBasis:
    """Reduced basis of the sign-isotypic subspace of a based S_p-space.

    ``action`` maps every element of S_p to its matrix.  The basis spans the
    image of the projector (1/p!) sum of sign(sigma) * rho(sigma), obtained
    by exact column elimination.  A sampled check of rho(sigma)rho(tau) =
    rho(sigma tau) guards against non-representation input.
    """
    perms = sorted(action, key=lambda s: s.images)
    if not perms:
        raise ValueError("empty action")
    n = perms[0].n
    if len(perms) != factorial(n):
        raise ValueError("action must cover all of S_%d" % n)
    _check_representation(action, perms)
    cols_by_perm = {s: action[s].columns() for s in perms}
    norm = Fraction(1, factorial(n))
    projected = []
    for j in range(dim):
        acc: dict[int, Fraction] = {}
        for s in perms:
            sgn = s.sign()
            for r, v in cols_by_perm[s][j].items():
                x = acc.get(r, 0) + v * sgn
                if x:
                    acc[r] = x
                else:
                    acc.pop(r, None)
        projected.append({r: v * norm for r, v in acc.items()})
    return column_space_basis(dim, projected)


def _check_representation(action: Mapping[Permutation, SparseMatrix],
                          perms: Sequence[Permutation]) -> None:
    m = len(perms)
    pairs = {(0, 0), (m - 1, m - 1), (0, m - 1)}
    for i in range(min(m, 6)):
        pairs.add((i, (3 * i + 1) % m))
    for i, j in sorted(pairs):
        s, t = perms[i], perms[j]
        if action[s] * action[t] != action[s * t]:
            raise ValueError("not a representation: rho(s)rho(t) != rho(st)")


# ---------------------------------------------------------------------------
# Integer partitions, set partitions, compositions


def partitions(n: int) -> list[IntPartition]:
    """All partitions of n as weakly decreasing tuples, lexicographic order."""
    result: list[IntPartition] = []

    def rec(remaining: int, maxpart: int, acc: tuple[int, ...]):
        if remaining == 0:
            result.append(acc)
            return
        for part in range(1, min(maxpart, remaining) + 1):
            rec(remaining - part, part, (part,) + acc)

    rec(n, n, ())
    # acc built smallest-first then prepended, so each tuple is decreasing;
    # sort rows lexicographically for a deterministic table layout
    return sorted(tuple(sorted(p, reverse=True)) for p in result)


def class_size(cycle_type: IntPartition) -> int:
    """Size of the conjugacy class of S_n with the given cycle type."""
    n = sum(cycle_type)
    z = 1
    for k in set(cycle_type):
        m = cycle_type.count(k)
        z *= k ** m * factorial(m)
    return factorial(n) // z


def set_partitions_k(items: Sequence[int], k: int) -> list[SetPartitionOrdered]:
    """Unordered partitions into k nonempty blocks, blocks sorted by minimum."""
    items = tuple(sorted(items))
    if k < 0:
        raise ValueError("negative block count")
    out: list[SetPartitionOrdered] = []

    def rec(rest: tuple[int, ...], blocks: tuple[tuple[int, ...], ...], slots: int):
        if not rest:
            if slots == 0:
                out.append(blocks)
            return
        if slots == 0 or slots > len(rest):
            return
        head, tail = rest[0], rest[1:]
        # head starts a new block together with any subset of the tail
        for extra in _subsets(tail):
            remaining = tuple(x for x in tail if x not in extra)
            rec(remaining, blocks + ((head,) + extra,), slots - 1)

    rec(items, (), k)
    return out


def _subsets(items: tuple[int, ...]):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def ordered_set_partitions(items: Sequence[int], k: int,
                           allow_empty: bool = False) -> list[SetPartitionOrdered]:
    """Ordered k-tuples of disjoint blocks with union = items."""
    items = tuple(sorted(items))
    out: list[SetPartitionOrdered] = []
    for assignment in itertools.product(range(k), repeat=len(items)):
        if not allow_empty and len(set(assignment)) != k:
            continue
        blocks = tuple(tuple(x for x, b in zip(items, assignment) if b == i) for i in range(k))
        out.append(blocks)
    return out


def compositions(n: int, k: int) -> list[tuple[int, ...]]:
    """Weak compositions of n into k nonnegative parts (stars and bars)."""
    if k == 0:
        return [()] if n == 0 else []
    out = []
    for cuts in itertools.combinations(range(n + k - 1), k - 1):
        prev, parts = -1, []
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(n + k - 2 - prev)
        out.append(tuple(parts))
    return out


# ---------------------------------------------------------------------------
# Character tables (Murnaghan-Nakayama) and multiplicities


@dataclass(frozen=True)
class CharacterTable:
    """Integer character table of S_n.

    Rows are irreducibles labelled by partitions, columns are cycle types;
    both in lexicographic order.  The column at (1,...,1) is the dimension
    column.
    """

    n: int
    row_labels: tuple[IntPartition, ...]
    col_labels: tuple[IntPartition, ...]
    values: dict[tuple[IntPartition, IntPartition], int]

    def chi(self, irrep: IntPartition, cycle_type: IntPartition) -> int:
        return self.values[(tuple(irrep), tuple(cycle_type))]

    def dimension(self, irrep: IntPartition) -> int:
        return self.chi(irrep, (1,) * self.n)

    def check_orthogonality(self) -> None:
        """Row orthonormality under the class-size-weighted inner product."""
        order = factorial(self.n)
        for a in self.row_labels:
            for b in self.row_labels:
                s = sum(class_size(mu) * self.chi(a, mu) * self.chi(b, mu)
                        for mu in self.col_labels)
                if s != (order if a == b else 0):
                    raise AssertionError("character rows %r, %r not orthonormal" % (a, b))

    def to_csv(self) -> str:
        head = ["partition"] + ["|".join(map(str, mu)) for mu in self.col_labels]
        lines = [",".join(head)]
        for lam in self.row_labels:
            row = ["|".join(map(str, lam))] + [str(self.chi(lam, mu)) for mu in self.col_labels]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


_TABLE_CACHE: dict[int, CharacterTable] = {}


def character_table(n: int, max_n: int | None = None) -> CharacterTable:
    """Full character table of S_n; capped (default n <= 8) to stay desk-scale."""
    cap = _DEFAULT_CHAR_TABLE_MAX_N if max_n is None else max_n
    if n > cap:
        raise ValueError("table too large: n=%d exceeds cap %d" % (n, cap))
    if n < 1:
        raise ValueError("n must be >= 1")
    cached = _TABLE_CACHE.get(n)
    if cached is not None:
        return cached
    labels = tuple(partitions(n))
    values = {(lam, mu): _mn_character(lam, mu) for lam in labels for mu in labels}
    table = CharacterTable(n, labels, labels, values)
    _TABLE_CACHE[n] = table
    return table


def _beta_set(lam: IntPartition, m: int) -> tuple[int, ...]:
    padded = list(lam) + [0] * (m - len(lam))
    return tuple(padded[i] + (m - 1 - i) for i in range(m))


def _partition_from_beta(beta: Sequence[int]) -> IntPartition:
    b = sorted(beta, reverse=True)
    m = len(b)
    parts = [b[i] - (m - 1 - i) for i in range(m)]
    return tuple(p for p in parts if p > 0)


def _mn_character(lam: IntPartition, mu: IntPartition) -> int:
    """Murnaghan-Nakayama: recurse on border-strip removals via beta-numbers."""
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    m = max(len(lam), 1)
    beta = set(_beta_set(lam, m))
    total = 0
    for b in sorted(beta):
        if b >= k and (b - k) not in beta:
            height = sum(1 for x in beta if b - k < x < b)
            new_beta = (beta - {b}) | {b - k}
            total += (-1) ** height * _mn_character(_partition_from_beta(sorted(new_beta)), rest)
    return total


def multiplicities(traces: Mapping[IntPartition, Fraction | int], n: int,
                   max_n: int | None = None) -> dict[IntPartition, int]:
    """Isotypic multiplicities <chi_M, chi_lambda> from class-wise traces.

    ``traces`` must assign a value to every cycle type of S_n.  Raises
    "input not a character" if any inner product is not a nonnegative
    integer.
    """
    table = character_table(n, max_n=max_n)
    missing = [mu for mu in table.col_labels if tuple(mu) not in {tuple(m) for m in traces}]
    if missing:
        raise ValueError("traces missing for cycle types %r" % (missing,))
    order = factorial(n)
    out: dict[IntPartition, int] = {}
    for lam in table.row_labels:
        s = sum(Fraction(traces[mu]) * class_size(mu) * table.chi(lam, mu)
                for mu in table.col_labels)
        val = s / order
        if val.denominator != 1 or val < 0:
            raise ValueError("input not a character: <M, %r> = %s" % (lam, val))
        out[lam] = int(val)
    return out
