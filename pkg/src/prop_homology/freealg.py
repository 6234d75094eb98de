"""Exact multilinear arithmetic in free Lie / associative / Poisson algebras.

Everything is multilinear: an object carries a finite support of positive
integer letters and every monomial uses each support letter exactly once.
Coefficients are exact rationals (``fractions.Fraction``); there is no
floating point anywhere in this package.

The canonical basis of the multilinear free Lie algebra on a letter set S
consists of left-normed brackets anchored at min(S):

    [[...[x_m, x_{t1}], x_{t2}], ..., x_{tk}],   m = min(S),

encoded as ``LieBasisWord(anchor=m, tail=(t1, ..., tk))``.  There are
(|S|-1)! of them.  The mutually inverse maps between this basis and
associative words (``expand_lie_to_assoc`` / ``strip_to_lie``) are the
workhorses of the module: bracketing, relabelling and substitution are all
routed through the associative side, where they are plain word surgery.

Text format (golden tests / debugging): letters print in decimal;
a word prints its letters concatenated, or '.'-separated when the support
contains a letter > 9; a LieBasisWord prints as "anchor|tail" (e.g. "1|23");
a polynomial prints its terms sorted by basis key as "coeff*basis" joined
by "+" (e.g. "1*12+-1*21"); zero prints as "0".  Sym terms wrap each block
in parentheses ("(1|2)(3|)"), tensor terms join blocks with "@".
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

Word = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class LieBasisWord(NamedTuple):
    """Left-normed bracket [[...[x_anchor, x_t1], ...], x_tk], anchor minimal."""

    anchor: int
    tail: Word

    @property
    def support(self) -> frozenset[int]:
        return frozenset((self.anchor,) + self.tail)

    def text(self) -> str:
        return "%d|%s" % (self.anchor, _word_text(self.tail, (self.anchor,) + self.tail))


def _word_text(word: Word, support: Iterable[int]) -> str:
    sep = "." if any(l > 9 for l in support) else ""
    return sep.join(str(l) for l in word)


def _check_letters(support: Iterable[int]) -> frozenset[int]:
    s = frozenset(support)
    if any(l < 1 for l in s):
        raise ValueError("letters must be positive integers")
    return s


def _add_term(terms: dict, key, coeff: Fraction) -> None:
    c = terms.get(key, ZERO) + coeff
    if c:
        terms[key] = c
    else:
        terms.pop(key, None)


def _terms_text(terms: Mapping, key_text) -> str:
    if not terms:
        return "0"
    items = sorted(terms.items(), key=lambda kv: key_text(kv[0]))
    return "+".join("%s*%s" % (c, key_text(k)) for k, c in items)


# ---------------------------------------------------------------------------
# Associative polynomials


class AssocPoly:
    """Rational linear combination of multilinear words on a fixed support."""

    __slots__ = ("support", "terms")

    def __init__(self, support: Iterable[int], terms: Mapping[Word, Fraction | int]):
        self.support = _check_letters(support)
        clean: dict[Word, Fraction] = {}
        for word, coeff in terms.items():
            word = tuple(word)
            if len(word) != len(self.support) or set(word) != self.support:
                raise ValueError("word %r does not match support %r" % (word, sorted(self.support)))
            _add_term(clean, word, Fraction(coeff))
        self.terms = clean

    @classmethod
    def _raw(cls, support: frozenset[int], terms: dict[Word, Fraction]) -> "AssocPoly":
        p = object.__new__(cls)
        p.support = support
        p.terms = terms
        return p

    @classmethod
    def zero(cls, support: Iterable[int] = ()) -> "AssocPoly":
        return cls._raw(_check_letters(support), {})

    @classmethod
    def unit(cls) -> "AssocPoly":
        return cls._raw(frozenset(), {(): ONE})

    @classmethod
    def word(cls, letters: Sequence[int], coeff: Fraction | int = 1) -> "AssocPoly":
        return cls(letters, {tuple(letters): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word) -> Fraction:
        return self.terms.get(tuple(word), ZERO)

    def __eq__(self, other) -> bool:
        return isinstance(other, AssocPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "AssocPoly":
        return self.scale(-1)

    def scale(self, c: Fraction | int) -> "AssocPoly":
        c = Fraction(c)
        if not c:
            return AssocPoly.zero(self.support)
        return AssocPoly._raw(self.support, {w: v * c for w, v in self.terms.items()})

    def __add__(self, other: "AssocPoly") -> "AssocPoly":
        if self.terms and other.terms and self.support != other.support:
            raise ValueError("cannot add polynomials with different supports")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _add_term(terms, w, c)
        return AssocPoly._raw(self.support | other.support, terms)

    def __sub__(self, other: "AssocPoly") -> "AssocPoly":
        return self + (-other)

    def __mul__(self, other: "AssocPoly") -> "AssocPoly":
        return assoc_mul(self, other)

    def relabel(self, mapping: Mapping[int, int]) -> "AssocPoly":
        """Apply a letter bijection; a monomial action on words."""
        _check_bijection(mapping, self.support)
        terms: dict[Word, Fraction] = {}
        for w, c in self.terms.items():
            _add_term(terms, tuple(mapping[l] for l in w), c)
        return AssocPoly._raw(frozenset(mapping[l] for l in self.support), terms)

    def substitute(self, letter: int, replacement: "AssocPoly") -> "AssocPoly":
        """Replace one letter by a polynomial with fresh support (splice)."""
        if letter not in self.support:
            raise ValueError("letter %d not in support" % letter)
        rest = self.support - {letter}
        if replacement.support & rest:
            raise ValueError("non-multilinear product")
        support = rest | replacement.support
        terms: dict[Word, Fraction] = {}
        for w, c in self.terms.items():
            i = w.index(letter)
            for r, d in replacement.terms.items():
                _add_term(terms, w[:i] + r + w[i + 1:], c * d)
        return AssocPoly._raw(support, terms)

    def text(self) -> str:
        return _terms_text(self.terms, lambda w: _word_text(w, self.support))

    def __repr__(self):
        return "AssocPoly(%s)" % self.text()


def _check_bijection(mapping: Mapping[int, int], support: frozenset[int]) -> None:
    if not support <= set(mapping):
        raise ValueError("relabelling not defined on all of the support")
    image = {mapping[l] for l in support}
    if len(image) != len(support):
        raise ValueError("relabelling is not a bijection on the support")


def assoc_mul(p: AssocPoly, q: AssocPoly) -> AssocPoly:
    """Concatenation product; supports must be disjoint (multilinearity)."""
    if p.support & q.support:
        raise ValueError("non-multilinear product")
    terms: dict[Word, Fraction] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            _add_term(terms, w1 + w2, c1 * c2)
    return AssocPoly._raw(p.support | q.support, terms)


# ---------------------------------------------------------------------------
# Lie polynomials

# expansion of a basis word into signed associative words, memoized
_EXPAND_MEMO: dict[LieBasisWord, tuple[tuple[Word, int], ...]] = {}


def _expand_basis_word(b: LieBasisWord) -> tuple[tuple[Word, int], ...]:
    cached = _EXPAND_MEMO.get(b)
    if cached is not None:
        return cached
    terms: dict[Word, int] = {(b.anchor,): 1}
    for t in b.tail:
        nxt: dict[Word, int] = {}
        for w, s in terms.items():
            nxt[w + (t,)] = nxt.get(w + (t,), 0) + s
            nxt[(t,) + w] = nxt.get((t,) + w, 0) - s
        terms = {w: s for w, s in nxt.items() if s}
    out = tuple(terms.items())
    _EXPAND_MEMO[b] = out
    return out


class LiePoly:
    """Rational combination of left-normed basis words on a fixed support."""

    __slots__ = ("support", "terms")

    def __init__(self, support: Iterable[int], terms: Mapping[LieBasisWord, Fraction | int]):
        self.support = _check_letters(support)
        clean: dict[LieBasisWord, Fraction] = {}
        for b, coeff in terms.items():
            b = LieBasisWord(b[0], tuple(b[1]))
            if b.support != self.support:
                raise ValueError("basis word %s does not match support %r" % (b.text(), sorted(self.support)))
            if self.support and b.anchor != min(self.support):
                raise ValueError("basis word %s is not anchored at the minimal letter" % b.text())
            _add_term(clean, b, Fraction(coeff))
        self.terms = clean

    @classmethod
    def _raw(cls, support: frozenset[int], terms: dict[LieBasisWord, Fraction]) -> "LiePoly":
        p = object.__new__(cls)
        p.support = support
        p.terms = terms
        return p

    @classmethod
    def zero(cls, support: Iterable[int] = ()) -> "LiePoly":
        return cls._raw(_check_letters(support), {})

    @classmethod
    def generator(cls, letter: int) -> "LiePoly":
        return cls._raw(frozenset((letter,)), {LieBasisWord(letter, ()): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, b: LieBasisWord) -> Fraction:
        return self.terms.get(b, ZERO)

    def __eq__(self, other) -> bool:
        return isinstance(other, LiePoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "LiePoly":
        return self.scale(-1)

    def scale(self, c: Fraction | int) -> "LiePoly":
        c = Fraction(c)
        if not c:
            return LiePoly.zero(self.support)
        return LiePoly._raw(self.support, {b: v * c for b, v in self.terms.items()})

    def __add__(self, other: "LiePoly") -> "LiePoly":
        if self.terms and other.terms and self.support != other.support:
            raise ValueError("cannot add polynomials with different supports")
        terms = dict(self.terms)
        for b, c in other.terms.items():
            _add_term(terms, b, c)
        return LiePoly._raw(self.support | other.support, terms)

    def __sub__(self, other: "LiePoly") -> "LiePoly":
        return self + (-other)

    def expand(self) -> AssocPoly:
        return expand_lie_to_assoc(self)

    def relabel(self, mapping: Mapping[int, int]) -> "LiePoly":
        return relabel_lie(self, mapping)

    def substitute(self, letter: int, replacement: "LiePoly") -> "LiePoly":
        """Plug a Lie polynomial (fresh support) into one letter slot.

        Computed on the associative side: substitution by a Lie element is
        an algebra endomorphism of the free associative algebra that
        preserves the Lie subalgebra, so expand / splice / strip is exact.
        """
        if letter not in self.support:
            raise ValueError("letter %d not in support" % letter)
        if replacement.support & (self.support - {letter}):
            raise ValueError("non-multilinear product")
        if replacement.is_zero() or self.is_zero():
            return LiePoly.zero((self.support - {letter}) | replacement.support)
        return strip_to_lie(self.expand().substitute(letter, replacement.expand()))

    def text(self) -> str:
        return _terms_text(self.terms, lambda b: b.text())

    def __repr__(self):
        return "LiePoly(%s)" % self.text()


def lie_multilinear_basis(support: Iterable[int]) -> list[LieBasisWord]:
    """All (|S|-1)! left-normed basis words on a nonempty letter set."""
    s = sorted(_check_letters(support))
    if not s:
        return []
    return [LieBasisWord(s[0], tail) for tail in itertools.permutations(s[1:])]


def expand_lie_to_assoc(p: LiePoly) -> AssocPoly:
    """Canonical embedding of the free Lie algebra into the free associative one."""
    terms: dict[Word, Fraction] = {}
    for b, c in p.terms.items():
        for w, s in _expand_basis_word(b):
            _add_term(terms, w, c * s)
    return AssocPoly._raw(p.support, terms)


def strip_to_lie(p: AssocPoly, anchor: int | None = None) -> LiePoly:
    """Read Lie basis coefficients off the words starting with the minimal letter.

    Left inverse of ``expand_lie_to_assoc``: a monomial not starting with the
    anchor contributes nothing, a monomial ``anchor, t1, ..., tk`` contributes
    its coefficient to the basis word with tail ``(t1, ..., tk)``.  Only
    meaningful when ``p`` lies in the image of the Lie embedding, which the
    callers guarantee (and the round-trip property test exercises).
    """
    if not p.support:
        if p.terms:
            raise ValueError("empty-support word is not a Lie element")
        return LiePoly.zero()
    m = min(p.support)
    if anchor is not None and anchor != m:
        raise ValueError("anchor %d is not the minimal letter %d" % (anchor, m))
    terms: dict[LieBasisWord, Fraction] = {}
    for w, c in p.terms.items():
        if w[0] == m:
            terms[LieBasisWord(m, w[1:])] = c
    return LiePoly._raw(p.support, terms)


def lie_bracket(a: LiePoly, b: LiePoly) -> LiePoly:
    """Lie bracket in the canonical basis, via associative commutator."""
    if a.support & b.support:
        raise ValueError("non-multilinear product")
    if a.is_zero() or b.is_zero():
        return LiePoly.zero(a.support | b.support)
    ea, eb = a.expand(), b.expand()
    return strip_to_lie(ea * eb - eb * ea)


def relabel_lie(p: LiePoly, mapping: Mapping[int, int]) -> LiePoly:
    """Letter bijection acting on Lie polynomials.

    Monomial fast path when the anchor stays minimal (then basis words map
    to basis words); otherwise re-strip the relabelled expansion.
    """
    _check_bijection(mapping, p.support)
    new_support = frozenset(mapping[l] for l in p.support)
    if not p.terms:
        return LiePoly.zero(new_support)
    if mapping[min(p.support)] == min(new_support):
        terms = {
            LieBasisWord(mapping[b.anchor], tuple(mapping[t] for t in b.tail)): c
            for b, c in p.terms.items()
        }
        return LiePoly._raw(new_support, terms)
    return strip_to_lie(p.expand().relabel(mapping))


# ---------------------------------------------------------------------------
# Free Poisson algebra S(L): products of Lie blocks with disjoint supports

SymLieTerm = tuple[LieBasisWord, ...]  # blocks sorted by anchor


def _sort_blocks(blocks: Iterable[LieBasisWord]) -> SymLieTerm:
    return tuple(sorted(blocks, key=lambda b: b.anchor))


class SymLiePoly:
    """Element of the multilinear free Poisson algebra on a fixed support."""

    __slots__ = ("support", "terms")

    def __init__(self, support: Iterable[int], terms: Mapping[SymLieTerm, Fraction | int]):
        self.support = _check_letters(support)
        clean: dict[SymLieTerm, Fraction] = {}
        for blocks, coeff in terms.items():
            blocks = _sort_blocks(LieBasisWord(b[0], tuple(b[1])) for b in blocks)
            seen: set[int] = set()
            for b in blocks:
                bs = b.support
                if seen & bs:
                    raise ValueError("blocks of %r overlap" % (blocks,))
                seen |= bs
            if frozenset(seen) != self.support:
                raise ValueError("blocks do not partition the support")
            _add_term(clean, blocks, Fraction(coeff))
        self.terms = clean

    @classmethod
    def _raw(cls, support: frozenset[int], terms: dict[SymLieTerm, Fraction]) -> "SymLiePoly":
        p = object.__new__(cls)
        p.support = support
        p.terms = terms
        return p

    @classmethod
    def zero(cls, support: Iterable[int] = ()) -> "SymLiePoly":
        return cls._raw(_check_letters(support), {})

    @classmethod
    def unit(cls) -> "SymLiePoly":
        return cls._raw(frozenset(), {(): ONE})

    @classmethod
    def generator(cls, letter: int) -> "SymLiePoly":
        return cls._raw(frozenset((letter,)), {(LieBasisWord(letter, ()),): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, SymLiePoly) and self.terms == other.terms

    def __neg__(self) -> "SymLiePoly":
        return self.scale(-1)

    def scale(self, c: Fraction | int) -> "SymLiePoly":
        c = Fraction(c)
        if not c:
            return SymLiePoly.zero(self.support)
        return SymLiePoly._raw(self.support, {t: v * c for t, v in self.terms.items()})

    def __add__(self, other: "SymLiePoly") -> "SymLiePoly":
        if self.terms and other.terms and self.support != other.support:
            raise ValueError("cannot add polynomials with different supports")
        terms = dict(self.terms)
        for t, c in other.terms.items():
            _add_term(terms, t, c)
        return SymLiePoly._raw(self.support | other.support, terms)

    def __sub__(self, other: "SymLiePoly") -> "SymLiePoly":
        return self + (-other)

    def relabel(self, mapping: Mapping[int, int]) -> "SymLiePoly":
        _check_bijection(mapping, self.support)
        new_support = frozenset(mapping[l] for l in self.support)
        terms: dict[SymLieTerm, Fraction] = {}
        for blocks, c in self.terms.items():
            # each block relabels to a LiePoly; distribute the product
            factors = [relabel_lie(LiePoly._raw(b.support, {b: ONE}), mapping) for b in blocks]
            for combo, coeff in _distribute(factors, c):
                _add_term(terms, _sort_blocks(combo), coeff)
        return SymLiePoly._raw(new_support, terms)

    def substitute(self, letter: int, replacement: LiePoly) -> "SymLiePoly":
        """Plug a Lie polynomial into the block containing the letter."""
        if letter not in self.support:
            raise ValueError("letter %d not in support" % letter)
        if replacement.support & (self.support - {letter}):
            raise ValueError("non-multilinear product")
        new_support = (self.support - {letter}) | replacement.support
        terms: dict[SymLieTerm, Fraction] = {}
        for blocks, c in self.terms.items():
            i = next(k for k, b in enumerate(blocks) if letter in b.support)
            target = LiePoly._raw(blocks[i].support, {blocks[i]: ONE}).substitute(letter, replacement)
            rest = blocks[:i] + blocks[i + 1:]
            for nb, d in target.terms.items():
                _add_term(terms, _sort_blocks(rest + (nb,)), c * d)
        return SymLiePoly._raw(new_support, terms)

    def text(self) -> str:
        return _terms_text(self.terms, lambda t: "".join("(%s)" % b.text() for b in t))

    def __repr__(self):
        return "SymLiePoly(%s)" % self.text()


def _distribute(factors: Sequence[LiePoly], coeff: Fraction):
    """Expand a product of LiePoly factors into (blocks, coefficient) pairs."""
    combos = [((), coeff)]
    for f in factors:
        combos = [
            (blocks + (b,), c * d)
            for blocks, c in combos
            for b, d in f.terms.items()
        ]
    return combos


def poisson_mul(f: SymLiePoly, g: SymLiePoly) -> SymLiePoly:
    """Commutative product: disjoint union of block sets."""
    if f.support & g.support:
        raise ValueError("non-multilinear product")
    terms: dict[SymLieTerm, Fraction] = {}
    for s, c in f.terms.items():
        for t, d in g.terms.items():
            _add_term(terms, _sort_blocks(s + t), c * d)
    return SymLiePoly._raw(f.support | g.support, terms)


def poisson_bracket(f: SymLiePoly, g: SymLiePoly) -> SymLiePoly:
    """Leibniz extension of the Lie bracket on blocks."""
    if f.support & g.support:
        raise ValueError("non-multilinear product")
    support = f.support | g.support
    terms: dict[SymLieTerm, Fraction] = {}
    for s, c in f.terms.items():
        for t, d in g.terms.items():
            for i, b1 in enumerate(s):
                for j, b2 in enumerate(t):
                    br = lie_bracket(
                        LiePoly._raw(b1.support, {b1: ONE}),
                        LiePoly._raw(b2.support, {b2: ONE}),
                    )
                    rest = s[:i] + s[i + 1:] + t[:j] + t[j + 1:]
                    for nb, e in br.terms.items():
                        _add_term(terms, _sort_blocks(rest + (nb,)), c * d * e)
    return SymLiePoly._raw(support, terms)


# ---------------------------------------------------------------------------
# PBW straightening

def pbw_decompose(p: AssocPoly) -> dict[int, SymLiePoly]:
    """Rewrite in the PBW basis; returns {degree u: degree-u component}.

    PBW monomials are products of canonical Lie blocks ordered by minimal
    letter.  Straightening swaps out-of-order adjacent blocks via
    x*y -> y*x + [x,y]; the degree-u component collects the u-block terms.
    All anchors are distinct (disjoint supports), so the order is strict.
    """
    pending: dict[tuple[LieBasisWord, ...], Fraction] = {}
    for w, c in p.terms.items():
        _add_term(pending, tuple(LieBasisWord(l, ()) for l in w), c)
    sorted_terms: dict[SymLieTerm, Fraction] = {}
    while pending:
        key, coeff = pending.popitem()
        i = _first_inversion(key)
        if i is None:
            _add_term(sorted_terms, key, coeff)
            continue
        swapped = key[:i] + (key[i + 1], key[i]) + key[i + 2:]
        _add_term(pending, swapped, coeff)
        br = lie_bracket(
            LiePoly._raw(key[i].support, {key[i]: ONE}),
            LiePoly._raw(key[i + 1].support, {key[i + 1]: ONE}),
        )
        for nb, d in br.terms.items():
            _add_term(pending, key[:i] + (nb,) + key[i + 2:], coeff * d)
    by_degree: dict[int, dict[SymLieTerm, Fraction]] = {}
    for key, coeff in sorted_terms.items():
        by_degree.setdefault(len(key), {})[key] = coeff
    return {u: SymLiePoly._raw(p.support, terms) for u, terms in sorted(by_degree.items())}


def _first_inversion(key: Sequence[LieBasisWord]) -> int | None:
    for i in range(len(key) - 1):
        if key[i].anchor > key[i + 1].anchor:
            return i
    return None


def pbw_degree(p: AssocPoly) -> int:
    """Largest occupied PBW degree; -1 for the zero polynomial."""
    comps = pbw_decompose(p)
    return max(comps) if comps else -1


def pbw_symbol(p: AssocPoly) -> SymLiePoly:
    """Top PBW component (the image in the associated graded algebra)."""
    comps = pbw_decompose(p)
    if not comps:
        return SymLiePoly.zero(p.support)
    return comps[max(comps)]


# ---------------------------------------------------------------------------
# Tensor powers of the free Lie algebra

TensorTerm = tuple[LieBasisWord, ...]  # ordered, one block per tensor factor


class TensorLiePoly:
    """q-fold tensors of Lie blocks whose supports partition the ambient set."""

    __slots__ = ("support", "arity", "terms")

    def __init__(self, support: Iterable[int], arity: int,
                 terms: Mapping[TensorTerm, Fraction | int]):
        self.support = _check_letters(support)
        self.arity = arity
        clean: dict[TensorTerm, Fraction] = {}
        for blocks, coeff in terms.items():
            blocks = tuple(LieBasisWord(b[0], tuple(b[1])) for b in blocks)
            if len(blocks) != arity:
                raise ValueError("expected %d tensor factors, got %d" % (arity, len(blocks)))
            seen: set[int] = set()
            for b in blocks:
                bs = b.support
                if not bs or (seen & bs):
                    raise ValueError("tensor blocks must be nonempty and disjoint")
                seen |= bs
            if frozenset(seen) != self.support:
                raise ValueError("tensor blocks do not partition the support")
            _add_term(clean, blocks, Fraction(coeff))
        self.terms = clean

    @classmethod
    def _raw(cls, support: frozenset[int], arity: int,
             terms: dict[TensorTerm, Fraction]) -> "TensorLiePoly":
        p = object.__new__(cls)
        p.support = support
        p.arity = arity
        p.terms = terms
        return p

    @classmethod
    def zero(cls, support: Iterable[int], arity: int) -> "TensorLiePoly":
        return cls._raw(_check_letters(support), arity, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, TensorLiePoly) and self.arity == other.arity
                and self.terms == other.terms)

    def __neg__(self) -> "TensorLiePoly":
        return self.scale(-1)

    def scale(self, c: Fraction | int) -> "TensorLiePoly":
        c = Fraction(c)
        if not c:
            return TensorLiePoly.zero(self.support, self.arity)
        return TensorLiePoly._raw(self.support, self.arity,
                                  {t: v * c for t, v in self.terms.items()})

    def __add__(self, other: "TensorLiePoly") -> "TensorLiePoly":
        if self.arity != other.arity:
            raise ValueError("tensor arities differ")
        if self.terms and other.terms and self.support != other.support:
            raise ValueError("cannot add polynomials with different supports")
        terms = dict(self.terms)
        for t, c in other.terms.items():
            _add_term(terms, t, c)
        return TensorLiePoly._raw(self.support | other.support, self.arity, terms)

    def __sub__(self, other: "TensorLiePoly") -> "TensorLiePoly":
        return self + (-other)

    def relabel(self, mapping: Mapping[int, int]) -> "TensorLiePoly":
        _check_bijection(mapping, self.support)
        new_support = frozenset(mapping[l] for l in self.support)
        terms: dict[TensorTerm, Fraction] = {}
        for blocks, c in self.terms.items():
            factors = [relabel_lie(LiePoly._raw(b.support, {b: ONE}), mapping) for b in blocks]
            for combo, coeff in _distribute(factors, c):
                _add_term(terms, combo, coeff)
        return TensorLiePoly._raw(new_support, self.arity, terms)

    def substitute(self, letter: int, replacement: LiePoly) -> "TensorLiePoly":
        """Plug a Lie polynomial into the tensor factor containing the letter."""
        if letter not in self.support:
            raise ValueError("letter %d not in support" % letter)
        if replacement.support & (self.support - {letter}):
            raise ValueError("non-multilinear product")
        new_support = (self.support - {letter}) | replacement.support
        terms: dict[TensorTerm, Fraction] = {}
        for blocks, c in self.terms.items():
            i = next(k for k, b in enumerate(blocks) if letter in b.support)
            target = LiePoly._raw(blocks[i].support, {blocks[i]: ONE}).substitute(letter, replacement)
            for nb, d in target.terms.items():
                _add_term(terms, blocks[:i] + (nb,) + blocks[i + 1:], c * d)
        return TensorLiePoly._raw(new_support, self.arity, terms)

    def text(self) -> str:
        return _terms_text(self.terms, lambda t: "@".join("(%s)" % b.text() for b in t))

    def __repr__(self):
        return "TensorLiePoly(%s)" % self.text()
