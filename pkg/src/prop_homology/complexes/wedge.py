"""Wedge-of-free-Lie complexes and the strip/lift comparison between them.

Two finite complexes on z multilinear letters:

  * the Lie-side complex with spaces (wedge^k L)_[1,z], k = z..1, and
    differential  b_1 ^ ... ^ b_k  |->  sum_{i<j} (-1)^j
    (b_1 ^ ... ^ [b_i,b_j]_at_i ^ ... ^ without b_j ^ ...);
  * the associative-side complex with spaces (A (x) wedge^m L)_[2,z],
    m = z-1..0, whose differential multiplies a wedge block into the word
    part or brackets two wedge blocks in place.

Both are stored cochain-style (maps raise the degree) by reversing the
wedge grading: cochain degree p = z-k, resp. p = z-1-m, so degree 0 is the
top wedge and the complexes end at degree z-1.  The word w |-> [[x_1,w_1],
w_2,...] lift identifies them basis-by-basis; ``wedge_compare`` checks that
this is a chain isomorphism and that the Betti profiles agree.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..exactlin import ComplexWindow, SparseMatrix, check_chain_map, homology, rank
from ..freealg import (LieBasisWord, LiePoly, ONE, expand_lie_to_assoc,
                       lie_bracket, lie_multilinear_basis)
from ..symgrp import set_partitions_k

WedgeTerm = tuple[LieBasisWord, ...]  # blocks sorted by anchor


def wedge_basis(letters: tuple[int, ...], k: int) -> list[WedgeTerm]:
    """Canonical representatives of (wedge^k L)_letters, sorted by minimum."""
    out: list[WedgeTerm] = []
    for blocks in set_partitions_k(letters, k):
        pools = [lie_multilinear_basis(b) for b in blocks]
        for combo in itertools.product(*pools):
            out.append(tuple(combo))
    return sorted(out)


def _block_poly(b: LieBasisWord) -> LiePoly:
    return LiePoly._raw(b.support, {b: ONE})


def wedge_differential_terms(term: WedgeTerm):
    """Yield (coefficient, target WedgeTerm) pairs for one wedge basis element."""
    k = len(term)
    for i in range(k):
        for j in range(i + 1, k):
            br = lie_bracket(_block_poly(term[i]), _block_poly(term[j]))
            sign = (-1) ** (j + 1)  # 1-based position j
            rest = term[:i] + term[i + 1:j] + term[j + 1:]
            for nb, c in br.terms.items():
                # new block keeps position i: anchors stay sorted
                target = tuple(sorted(rest + (nb,), key=lambda b: b.anchor))
                yield c * sign, target


def build_chevalley_wedge(z: int) -> ComplexWindow:
    """The Lie-side wedge complex on letters [1, z], cochain degree p = z-k."""
    if z < 1:
        raise ValueError("z must be >= 1")
    letters = tuple(range(1, z + 1))
    bases = {z - k: wedge_basis(letters, k) for k in range(1, z + 1)}
    index = {p: {t: i for i, t in enumerate(b)} for p, b in bases.items()}
    maps = {}
    for p in range(0, z - 1):
        k = z - p
        entries: dict[tuple[int, int], Fraction] = {}
        for col, term in enumerate(bases[p]):
            for coeff, target in wedge_differential_terms(term):
                row = index[p + 1][target]
                c = entries.get((row, col), Fraction(0)) + coeff
                if c:
                    entries[(row, col)] = c
                else:
                    entries.pop((row, col), None)
        maps[p] = SparseMatrix(len(bases[p + 1]), len(bases[p]), entries)
    labels = {p: [_wedge_text(t) for t in b] for p, b in bases.items()}
    return ComplexWindow(0, z - 1, labels, maps, closed_below=True, closed_above=True)


def _wedge_text(term: WedgeTerm) -> str:
    return "".join("(%s)" % b.text() for b in term) if term else "()"


# ---------------------------------------------------------------------------
# Associative side: (A (x) wedge^m L)_[2,z]

AssocWedgeBasis = tuple[tuple[int, ...], WedgeTerm]  # (word part, wedge part)


def assoc_wedge_basis(z: int, m: int) -> list[AssocWedgeBasis]:
    letters = tuple(range(2, z + 1))
    out: list[AssocWedgeBasis] = []
    for r in range(len(letters) + 1):
        for wset in itertools.combinations(letters, r):
            rest = tuple(l for l in letters if l not in wset)
            wedges = wedge_basis(rest, m) if m else ([()] if not rest else [])
            for word in itertools.permutations(wset):
                for wt in wedges:
                    out.append((word, wt))
    return sorted(out)


def build_assoc_wedge(z: int) -> ComplexWindow:
    """The associative-side complex on letters [2, z], cochain degree p = z-1-m."""
    if z < 1:
        raise ValueError("z must be >= 1")
    bases = {z - 1 - m: assoc_wedge_basis(z, m) for m in range(0, z)}
    index = {p: {t: i for i, t in enumerate(b)} for p, b in bases.items()}
    maps = {}
    for p in range(0, z - 1):
        m = z - 1 - p
        entries: dict[tuple[int, int], Fraction] = {}

        def add(row, col, c):
            x = entries.get((row, col), Fraction(0)) + c
            if x:
                entries[(row, col)] = x
            else:
                entries.pop((row, col), None)

        for col, (word, wedge) in enumerate(bases[p]):
            # product term: word gains the expansion of one wedge block
            for i in range(m):
                sign = (-1) ** i  # (-1)^(i+1) with 1-based i
                rest = wedge[:i] + wedge[i + 1:]
                exp = expand_lie_to_assoc(_block_poly(wedge[i]))
                for mono, c in exp.terms.items():
                    add(index[p + 1][(word + mono, rest)], col, c * sign)
            # bracket term: two wedge blocks merge in place
            for i in range(m):
                for j in range(i + 1, m):
                    br = lie_bracket(_block_poly(wedge[i]), _block_poly(wedge[j]))
                    sign = (-1) ** j  # (-1)^(j+1), 1-based
                    rest = wedge[:i] + wedge[i + 1:j] + wedge[j + 1:]
                    for nb, c in br.terms.items():
                        target = tuple(sorted(rest + (nb,), key=lambda b: b.anchor))
                        add(index[p + 1][(word, target)], col, c * sign)
        maps[p] = SparseMatrix(len(bases[p + 1]), len(bases[p]), entries)
    labels = {p: ["%s:%s" % ("".join(map(str, w)) or "1", _wedge_text(t)) for w, t in b]
              for p, b in bases.items()}
    return ComplexWindow(0, z - 1, labels, maps, closed_below=True, closed_above=True)


def lift_word_to_wedge(word: tuple[int, ...], wedge: WedgeTerm) -> WedgeTerm:
    """Dynkin lift: word (i1,...,is) over [2,z] becomes the block [[x_1,x_i1],...]."""
    lifted = LieBasisWord(1, word)
    return tuple(sorted(wedge + (lifted,), key=lambda b: b.anchor))


def wedge_compare(z: int) -> dict:
    """Check that strip/lift is a chain isomorphism and Betti profiles match."""
    lw = build_chevalley_wedge(z)
    aw = build_assoc_wedge(z)
    a_bases = {z - 1 - m: assoc_wedge_basis(z, m) for m in range(0, z)}
    l_bases = {z - k: wedge_basis(tuple(range(1, z + 1)), k) for k in range(1, z + 1)}
    l_index = {p: {t: i for i, t in enumerate(b)} for p, b in l_bases.items()}
    f = {}
    for p in range(0, z):
        entries = {}
        for col, (word, wedge) in enumerate(a_bases[p]):
            entries[(l_index[p][lift_word_to_wedge(word, wedge)], col)] = Fraction(1)
        f[p] = SparseMatrix(len(l_bases[p]), len(a_bases[p]), entries)
    if z == 1:
        chain_ok = True  # single degree, nothing to intertwine
    else:
        chain_ok = check_chain_map(f, aw, lw)
    bijective = all(
        f[p].rows == f[p].cols and rank(f[p]) == f[p].rows for p in f)
    hl, ha = homology(lw), homology(aw)
    betti_equal = hl.complete_betti() == ha.complete_betti()
    return {
        "chain_map": chain_ok,
        "bijective": bijective,
        "betti_equal": betti_equal,
        "betti": hl.complete_betti(),
        "ok": chain_ok and bijective and betti_equal,
    }
