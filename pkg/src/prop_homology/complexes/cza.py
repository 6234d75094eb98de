"""The paper-core cochain complexes on letters a_1..a_{z+N}, x_1..x_{p'}.

Letter encoding: a_i = i for i in [1, z+N], x_t = z+N+t.

The Lie-side complex C has degree-p' space: the sign-isotypic part, under
x-relabelling, of the multilinear component of the q-th tensor power of
the free Lie algebra on all letters.  Its differential inserts a bracket
[x_i, x_j] into the first x-slot or brackets an x onto one of a_1..a_z.

The associative-side complex A (q = 1 only, letter a_1 removed) has
degree-p' space: the sign-isotypic part of the multilinear words on
a_2..a_{z+N}, x_1..x_{p'}; the a_1-slot of the differential becomes right
multiplication by x_i.  Its sign-isotypic bases are signed orbits of words
with the x letters in increasing order ("standardized" representatives).

``dynkin_compare`` checks that a |-> ad(a)(a_1) is a degreewise bijective
chain map A -> C; ``sigma_split`` decomposes A by the appearance order of
the a letters; ``epsilon_sequence`` attaches the 0/1 sequence that labels
each order block by elementary complexes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..exactlin import (ComplexWindow, ReducedBasis, SparseMatrix,
                        check_chain_map, rank)
from ..freealg import (AssocPoly, LieBasisWord, LiePoly, ONE, TensorLiePoly,
                       lie_bracket, lie_multilinear_basis)
from ..symgrp import (Permutation, all_permutations, antiinvariant_basis,
                      ordered_set_partitions, perm_sign)

Word = tuple[int, ...]
TensorTerm = tuple[LieBasisWord, ...]


def _gen(letter: int) -> LiePoly:
    return LiePoly.generator(letter)


def _x_complement(p_new: int, removed: tuple[int, ...]) -> list[int]:
    return [t for t in range(1, p_new + 1) if t not in removed]


# ---------------------------------------------------------------------------
# Associative side


def a_basis_words(z: int, N: int, p: int) -> list[Word]:
    """Standardized words: x letters appear in increasing order."""
    L = z + N
    a_letters = tuple(range(2, L + 1))
    total = len(a_letters) + p
    out = []
    for aperm in itertools.permutations(a_letters):
        for xpos in itertools.combinations(range(total), p):
            word = []
            ai = iter(aperm)
            xi = iter(range(L + 1, L + p + 1))
            for pos in range(total):
                word.append(next(xi) if pos in xpos else next(ai))
            out.append(tuple(word))
    return sorted(out)


def standardize_word(word: Word, L: int) -> tuple[int, Word]:
    """Sign and standardized form under x-relabelling (letters > L are x's)."""
    xs = [l for l in word if l > L]
    sign = perm_sign(xs)
    std = []
    nxt = L + 1
    for l in word:
        if l > L:
            std.append(nxt)
            nxt += 1
        else:
            std.append(l)
    return sign, tuple(std)


def a_orbit_vector(rep: Word, L: int, p: int) -> AssocPoly:
    """Signed orbit sum over the x-relabelling action of S_p."""
    support = frozenset(rep)
    terms: dict[Word, Fraction] = {}
    for images in itertools.permutations(range(1, p + 1)):
        mapping = {L + t: L + images[t - 1] for t in range(1, p + 1)}
        word = tuple(mapping.get(l, l) for l in rep)
        terms[word] = Fraction(perm_sign(images))
    return AssocPoly._raw(support, terms)


def _apply_assoc_diff(poly: AssocPoly, z: int, L: int, p: int) -> AssocPoly:
    """One application of the associative differential at degree p."""
    target_support = frozenset(range(2, L + 1)) | frozenset(L + t for t in range(1, p + 2))
    out = AssocPoly.zero(target_support)
    if poly.is_zero():
        return out
    a_identity = {l: l for l in range(2, L + 1)}
    scratch = L + p + 2
    # bracket insertion among the x letters
    for i in range(1, p + 2):
        for j in range(i + 1, p + 2):
            comp = _x_complement(p + 1, (i, j))
            mapping = dict(a_identity)
            mapping[L + 1] = scratch
            for t in range(2, p + 1):
                mapping[L + t] = L + comp[t - 2]
            bracket = AssocPoly(
                (L + i, L + j),
                {(L + i, L + j): 1, (L + j, L + i): -1},
            )
            term = poly.relabel(mapping).substitute(scratch, bracket)
            out = out + term.scale((-1) ** (i + j + 1))
    # right multiplication by x_i and brackets onto a_2..a_z
    for i in range(1, p + 2):
        comp = _x_complement(p + 1, (i,))
        mapping = dict(a_identity)
        for t in range(1, p + 1):
            mapping[L + t] = L + comp[t - 1]
        shifted = poly.relabel(mapping)
        sign = (-1) ** (i + 1)
        out = out + (shifted * AssocPoly.word((L + i,))).scale(sign)
        for zp in range(2, z + 1):
            bracket = AssocPoly(
                (L + i, zp),
                {(L + i, zp): 1, (zp, L + i): -1},
            )
            out = out + shifted.substitute(zp, bracket).scale(sign)
    return out


def _antiinvariant_coordinates(poly: AssocPoly, L: int,
                               index: dict[Word, int]) -> dict[int, Fraction]:
    """Orbit-basis coordinates of an antiinvariant word polynomial.

    Also verifies antiinvariance coefficient-by-coefficient; a violation
    would mean the differential left the sign-isotypic subspace.
    """
    coords: dict[int, Fraction] = {}
    for word, coeff in poly.terms.items():
        sign, std = standardize_word(word, L)
        expected = poly.terms.get(std, Fraction(0)) * sign
        if coeff != expected:
            raise ValueError("image is not antiinvariant at word %r" % (word,))
        if word == std:
            coords[index[std]] = coeff
    return coords


@dataclass
class BuiltA:
    z: int
    N: int
    window: ComplexWindow
    reps: dict[int, list[Word]]


def build_A(z: int, N: int, pmax: int, pmin: int = 0) -> BuiltA:
    """The associative-side window on degrees [pmin, pmax]."""
    if z < 1 or N < 0:
        raise ValueError("need z >= 1, N >= 0")
    L = z + N
    reps = {p: a_basis_words(z, N, p) for p in range(pmin, pmax + 1)}
    index = {p: {w: i for i, w in enumerate(r)} for p, r in reps.items()}
    maps = {}
    for p in range(pmin, pmax):
        entries: dict[tuple[int, int], Fraction] = {}
        for col, rep in enumerate(reps[p]):
            image = _apply_assoc_diff(a_orbit_vector(rep, L, p), z, L, p)
            for row, c in _antiinvariant_coordinates(image, L, index[p + 1]).items():
                entries[(row, col)] = c
        maps[p] = SparseMatrix(len(reps[p + 1]), len(reps[p]), entries)
    labels = {p: [_word_label(w, L) for w in r] for p, r in reps.items()}
    window = ComplexWindow(pmin, pmax, labels, maps,
                           closed_below=(pmin == 0), closed_above=False)
    return BuiltA(z, N, window, reps)


def _word_label(word: Word, L: int) -> str:
    return ".".join(("a%d" % l) if l <= L else ("x%d" % (l - L)) for l in word) or "1"


def a_order(word: Word, L: int) -> Word:
    """The a letters of a word in order of appearance (the sigma label)."""
    return tuple(l for l in word if l <= L)


def sigma_split(built: BuiltA) -> dict[Word, ComplexWindow]:
    """Decompose the A window by the appearance order of the a letters.

    The differential never reorders a letters, so each block is a
    subcomplex; a cross-block matrix entry raises.
    """
    L = built.z + built.N
    window = built.window
    orders = sorted(itertools.permutations(range(2, L + 1)))
    positions = {
        p: {o: [i for i, w in enumerate(reps) if a_order(w, L) == o] for o in orders}
        for p, reps in built.reps.items()
    }
    out: dict[Word, ComplexWindow] = {}
    for o in orders:
        labels = {p: [window.labels[p][i] for i in positions[p][o]]
                  for p in window.degrees()}
        maps = {}
        for p in range(window.p0, window.p1):
            cols = positions[p][o]
            rows = positions[p + 1][o]
            row_of = {r: k for k, r in enumerate(rows)}
            col_of = {c: k for k, c in enumerate(cols)}
            entries = {}
            col_set = set(cols)
            for (r, c), v in window.maps[p].entries.items():
                if c in col_set:
                    if r not in row_of:
                        raise ValueError("differential does not respect the "
                                         "a-order decomposition at degree %d" % p)
                    entries[(row_of[r], col_of[c])] = v
            maps[p] = SparseMatrix(len(rows), len(cols), entries)
        out[o] = ComplexWindow(window.p0, window.p1, labels, maps,
                               closed_below=window.closed_below, closed_above=False)
    return out


def epsilon_sequence(sigma_order: Word, z: int, N: int) -> tuple[int, ...]:
    """Bits (eps_1, ..., eps_{z+N+1}): eps_1 = 0, eps_{z+N+1} = 1, and
    eps_alpha = 1 iff sigma(alpha) lies in [2, z]."""
    L = z + N
    if tuple(sorted(sigma_order)) != tuple(range(2, L + 1)):
        raise ValueError("sigma must be a permutation of [2, z+N]")
    eps = [0]
    for alpha in range(2, L + 1):
        eps.append(1 if 2 <= sigma_order[alpha - 2] <= z else 0)
    eps.append(1)
    return tuple(eps)


# ---------------------------------------------------------------------------
# Lie side


def c_full_basis(z: int, N: int, q: int, p: int) -> list[TensorTerm]:
    """Multilinear basis of the q-th tensor power on all letters."""
    L = z + N
    ambient = tuple(range(1, L + p + 1))
    if q == 1:
        return [(b,) for b in lie_multilinear_basis(ambient)] if ambient else []
    out: list[TensorTerm] = []
    for blocks in ordered_set_partitions(ambient, q, allow_empty=False):
        pools = [lie_multilinear_basis(b) for b in blocks]
        for combo in itertools.product(*pools):
            out.append(tuple(combo))
    return sorted(out)


def _tensor_term_poly(term: TensorTerm, ambient: frozenset[int], q: int) -> TensorLiePoly:
    return TensorLiePoly._raw(ambient, q, {term: ONE})


def _relabel_matrix(basis: list[TensorTerm], index: dict[TensorTerm, int],
                    ambient: frozenset[int], q: int,
                    mapping: dict[int, int]) -> SparseMatrix:
    entries: dict[tuple[int, int], Fraction] = {}
    for col, term in enumerate(basis):
        image = _tensor_term_poly(term, ambient, q).relabel(mapping)
        for t, c in image.terms.items():
            entries[(index[t], col)] = c
    return SparseMatrix(len(basis), len(basis), entries)


@dataclass
class BuiltC:
    z: int
    N: int
    q: int
    window: ComplexWindow
    full: dict[int, list[TensorTerm]]
    index: dict[int, dict[TensorTerm, int]]
    reduced: dict[int, ReducedBasis]

    def vector_of(self, p: int, tlp: TensorLiePoly) -> dict[int, Fraction]:
        idx = self.index[p]
        return {idx[t]: c for t, c in tlp.terms.items()}

    def coordinates(self, p: int, tlp: TensorLiePoly) -> list[Fraction]:
        coords = self.reduced[p].coordinates(self.vector_of(p, tlp))
        if coords is None:
            raise ValueError("vector does not lie in the antiinvariant "
                             "subspace at degree %d" % p)
        return coords


def build_C(z: int, N: int, q: int, pmax: int, pmin: int = 0) -> BuiltC:
    """The Lie-side window on degrees [pmin, pmax] (z = 0 allowed: inert)."""
    if z < 0 or N < 0 or q < 1:
        raise ValueError("need z >= 0, N >= 0, q >= 1")
    L = z + N
    full = {p: c_full_basis(z, N, q, p) for p in range(pmin, pmax + 1)}
    index = {p: {t: i for i, t in enumerate(b)} for p, b in full.items()}
    reduced: dict[int, ReducedBasis] = {}
    for p in range(pmin, pmax + 1):
        ambient = frozenset(range(1, L + p + 1))
        basis = full[p]
        action = {}
        for sigma in all_permutations(p):
            mapping = {l: l for l in range(1, L + 1)}
            for t in range(1, p + 1):
                mapping[L + t] = L + sigma(t)
            action[sigma] = _relabel_matrix(basis, index[p], ambient, q, mapping)
        if p == 0:
            action = {Permutation(()): SparseMatrix.identity(len(basis))}
        reduced[p] = antiinvariant_basis(len(basis), action)
    maps = {}
    for p in range(pmin, pmax):
        cols = []
        for vec in reduced[p].vectors:
            ambient = frozenset(range(1, L + p + 1))
            tlp = TensorLiePoly._raw(ambient, q,
                                     {full[p][i]: c for i, c in vec.items()})
            image = _apply_lie_diff(tlp, z, L, p, q)
            built_coords = reduced[p + 1].coordinates(
                {index[p + 1][t]: c for t, c in image.terms.items()})
            if built_coords is None:
                raise ValueError("differential image leaves the antiinvariant "
                                 "subspace at degree %d" % p)
            cols.append({r: c for r, c in enumerate(built_coords) if c})
        maps[p] = SparseMatrix.from_columns(reduced[p + 1].dim, cols)
    labels = {}
    for p in range(pmin, pmax + 1):
        labs = []
        for piv in reduced[p].pivots:
            term = full[p][piv]
            labs.append("@".join("(%s)" % b.text() for b in term))
        labels[p] = labs
    window = ComplexWindow(pmin, pmax, labels, maps,
                           closed_below=(pmin == 0), closed_above=False)
    return BuiltC(z, N, q, window, full, index, reduced)


def _apply_lie_diff(tlp: TensorLiePoly, z: int, L: int, p: int, q: int) -> TensorLiePoly:
    """One application of the Lie-side differential at degree p."""
    target_ambient = frozenset(range(1, L + p + 2))
    out = TensorLiePoly.zero(target_ambient, q)
    if tlp.is_zero():
        return out
    identity = {l: l for l in range(1, L + 1)}
    scratch = L + p + 2
    for i in range(1, p + 2):
        for j in range(i + 1, p + 2):
            comp = _x_complement(p + 1, (i, j))
            mapping = dict(identity)
            mapping[L + 1] = scratch
            for t in range(2, p + 1):
                mapping[L + t] = L + comp[t - 2]
            bracket = lie_bracket(_gen(L + i), _gen(L + j))
            term = tlp.relabel(mapping).substitute(scratch, bracket)
            out = out + term.scale((-1) ** (i + j + 1))
    for i in range(1, p + 2):
        comp = _x_complement(p + 1, (i,))
        mapping = dict(identity)
        for t in range(1, p + 1):
            mapping[L + t] = L + comp[t - 1]
        shifted = tlp.relabel(mapping)
        sign = (-1) ** (i + 1)
        for zp in range(1, z + 1):
            bracket = lie_bracket(_gen(L + i), _gen(zp))
            out = out + shifted.substitute(zp, bracket).scale(sign)
    return out


# ---------------------------------------------------------------------------
# Dynkin comparison


def _ad_word(word: Word) -> LiePoly:
    """ad(u_1)...ad(u_s)(a_1) as a Lie polynomial anchored at letter 1."""
    result = _gen(1)
    for u in reversed(word):
        result = lie_bracket(_gen(u), result)
    return result


def dynkin_map_matrix(built_a: BuiltA, built_c: BuiltC, p: int) -> SparseMatrix:
    L = built_a.z + built_a.N
    cols = []
    for rep in built_a.reps[p]:
        vec = a_orbit_vector(rep, L, p)
        total: dict[int, Fraction] = {}
        idx = built_c.index[p]
        for word, coeff in vec.terms.items():
            for b, c in _ad_word(word).terms.items():
                key = idx[(b,)]
                x = total.get(key, Fraction(0)) + c * coeff
                if x:
                    total[key] = x
                else:
                    total.pop(key, None)
        coords = built_c.reduced[p].coordinates(total)
        if coords is None:
            raise ValueError("Dynkin image is not antiinvariant at degree %d" % p)
        cols.append({r: c for r, c in enumerate(coords) if c})
    return SparseMatrix.from_columns(built_c.reduced[p].dim, cols)


def dynkin_compare(z: int, N: int, pmax: int) -> dict:
    """Check that a |-> ad(a)(a_1) is a bijective chain map A -> C."""
    built_a = build_A(z, N, pmax)
    built_c = build_C(z, N, 1, pmax)
    f = {p: dynkin_map_matrix(built_a, built_c, p) for p in range(0, pmax + 1)}
    chain_ok = (pmax == 0) or check_chain_map(f, built_a.window, built_c.window)
    bijective = all(f[p].rows == f[p].cols and rank(f[p]) == f[p].rows for p in f)
    return {
        "chain_map": chain_ok,
        "bijective": bijective,
        "dims_a": {p: built_a.window.dim(p) for p in built_a.window.degrees()},
        "dims_c": {p: built_c.window.dim(p) for p in built_c.window.degrees()},
        "ok": chain_ok and bijective,
    }
