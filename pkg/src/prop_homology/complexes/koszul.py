"""Multilinear slice of the Koszul complex S(V) (x) wedge(V).

For n letters the slice at total multidegree (1,...,1) has spaces
S^(n-k) (x) wedge^k with one basis vector per k-subset T of [1, n] (the
symmetric part is the squarefree monomial on the complement), and the
contraction differential moves one wedge letter into the symmetric part:

    T |-> sum_i (-1)^(i+1) (T minus its i-th smallest element).

Stored cochain-style with degree p = n - k, so homological degree k = n - p
and the acyclicity claim reads: Betti = 0 at every degree p < n.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..exactlin import ComplexWindow, SparseMatrix


def build_koszul_multilinear(n: int) -> ComplexWindow:
    if n < 1:
        raise ValueError("n must be >= 1")
    letters = tuple(range(1, n + 1))
    bases = {n - k: list(itertools.combinations(letters, k)) for k in range(n + 1)}
    index = {p: {t: i for i, t in enumerate(b)} for p, b in bases.items()}
    maps = {}
    for p in range(0, n):
        entries: dict[tuple[int, int], Fraction] = {}
        for col, subset in enumerate(bases[p]):
            for i, t in enumerate(subset):
                target = subset[:i] + subset[i + 1:]
                entries[(index[p + 1][target], col)] = Fraction((-1) ** i)
        maps[p] = SparseMatrix(len(bases[p + 1]), len(bases[p]), entries)
    labels = {
        p: ["S(%s)^(%s)" % (",".join(str(l) for l in letters if l not in t),
                            ",".join(map(str, t)))
            for t in b]
        for p, b in bases.items()
    }
    return ComplexWindow(0, n, labels, maps, closed_below=True, closed_above=True)
