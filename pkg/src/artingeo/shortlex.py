"""
Shortlex normal forms for Artin groups of large type.

The engine keeps every prefix in shortlex-minimal form while consuming a
word letter by letter.  Appending a letter to a minimal word either cancels
freely, stays minimal, admits one rightward length-reducing sequence (the
word was not geodesic), or admits one leftward lex-reducing sequence (the
word was geodesic but not lex-least).  The chain searches of
:mod:`artingeo.critical` realise both repairs; every applied repair strictly
decreases the shortlex key and preserves the group element, so iteration
terminates on the normal form.  Correctness of the search is certified
against the brute-force oracle over exhaustive word sets in the test suite.

Group elements are identified with their normal-form words, so element
equality is word equality and all higher layers (divisors, factorisation
counting, merging, harmonic analysis) reduce to word bookkeeping plus the
append cache, which doubles as the Cayley automaton of the group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .critical import (
    LabelFn,
    leftward_lex_reduction,
    pair_label_fn,
    rightward_length_reduction,
    tau_closure,
)
from .presentation import CoxeterPresentation
from .words import Word, format_word, inverse_word, parse_word

LetterOrder = tuple[int, ...]


def default_order(n: int) -> LetterOrder:
    """x1 < x1^-1 < x2 < x2^-1 < ... on the 2n letters."""
    out: list[int] = []
    for g in range(1, n + 1):
        out.extend((g, -g))
    return tuple(out)


def pair_first_order(n: int, i: int, j: int) -> LetterOrder:
    """Letter order placing the letters of names i and j first."""
    head = (i, -i, j, -j)
    tail = tuple(a for a in default_order(n) if abs(a) not in (i, j))
    return head + tail


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element certified by its shortlex normal form under a fixed order."""

    engine: "ShortlexEngine"
    word: Word

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.engine is other.engine
            and self.word == other.word
        )

    def __hash__(self) -> int:
        return hash(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.engine.multiply(self, other)

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inv()
        out = self.engine.identity
        for _ in range(abs(k)):
            out = out * base
        return out

    def inv(self) -> "GroupElement":
        return self.engine.invert(self)

    @property
    def sign(self) -> str:
        from .words import sign_class

        return sign_class(self.word)

    def __repr__(self) -> str:
        return f"<{format_word(self.word) or '1'}>"


class ShortlexEngine:
    """Normal forms, lengths and element arithmetic for one presentation."""

    def __init__(self, pres: CoxeterPresentation, order: LetterOrder | None = None):
        if not pres.is_large():
            raise ValueError("engine requires a presentation of large type")
        self.pres = pres
        self.order: LetterOrder = tuple(order) if order else default_order(pres.n)
        if sorted(self.order) != sorted(default_order(pres.n)):
            raise ValueError("order must be a permutation of the 2n letters")
        self._rank = {a: r for r, a in enumerate(self.order)}
        self.label: LabelFn = pair_label_fn(pres)
        self._append: dict[tuple[Word, int], Word] = {}
        self._inv: dict[Word, Word] = {}
        self._geo: dict[Word, frozenset[Word]] = {}
        self._reordered: dict[tuple[int, int], "ShortlexEngine"] = {}
        self.identity = GroupElement(self, ())

    # -- words ----------------------------------------------------------

    def lex_key(self, w: Word):
        return tuple(self._rank[a] for a in w)

    def shortlex_key(self, w: Word):
        return (len(w), self.lex_key(w))

    def append(self, z: Word, a: int) -> Word:
        """Normal form of z*a for z already in normal form."""
        key = (z, a)
        hit = self._append.get(key)
        if hit is not None:
            return hit
        if a == 0 or abs(a) > self.pres.n:
            raise ValueError(f"generator index out of range: letter {a}")
        if z and z[-1] == -a:
            res = z[:-1]
        else:
            res = self._repair(z + (a,))
        self._append[key] = res
        return res

    def _repair(self, w: Word) -> Word:
        red = rightward_length_reduction(w, self.label)
        if red is not None:
            return self.nf(red)
        cur = w
        while True:
            better = leftward_lex_reduction(cur, self.label, self.lex_key)
            if better is None:
                return cur
            if len(better) < len(cur):
                return self.nf(better)
            cur = better

    def nf(self, word: Iterable[int] | str) -> Word:
        """Shortlex normal form of an arbitrary word."""
        if isinstance(word, str):
            word = parse_word(word)
        z: Word = ()
        for a in word:
            z = self.append(z, a)
        return z

    def is_geodesic(self, word: Iterable[int] | str) -> bool:
        w = parse_word(word) if isinstance(word, str) else tuple(word)
        return len(self.nf(w)) == len(w)

    # -- elements ---------------------------------------------------------

    def element(self, word: Iterable[int] | str) -> GroupElement:
        return GroupElement(self, self.nf(word))

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        z = g.word
        for a in h.word:
            z = self.append(z, a)
        return GroupElement(self, z)

    def invert(self, g: GroupElement) -> GroupElement:
        hit = self._inv.get(g.word)
        if hit is None:
            hit = self.nf(inverse_word(g.word))
            self._inv[g.word] = hit
            self._inv[hit] = g.word
        return GroupElement(self, hit)

    def length(self, g: GroupElement) -> int:
        return len(g.word)

    def letters(self) -> list[int]:
        return [a for g in range(1, self.pres.n + 1) for a in (g, -g)]

    def gen(self, i: int, sign: int = 1) -> GroupElement:
        return GroupElement(self, (i * sign,))

    # -- geodesic representatives ------------------------------------------

    def geodesic_words(self, g: GroupElement) -> frozenset[Word]:
        """All geodesic spellings of g (tau-move closure of the normal form)."""
        hit = self._geo.get(g.word)
        if hit is None:
            hit = tau_closure(g.word, self.label)
            self._geo[g.word] = hit
        return hit

    def final_letters(self, g: GroupElement) -> set[int]:
        """Last letters over all geodesic spellings, via length queries."""
        if not g.word:
            raise ValueError("the identity has no final letters")
        L = len(g.word)
        return {a for a in self.letters() if len(self.append(g.word, -a)) == L - 1}

    def initial_letters(self, g: GroupElement) -> set[int]:
        return {-a for a in self.final_letters(self.invert(g))}

    # -- reordered engines ---------------------------------------------------

    def reordered(self, i: int, j: int) -> "ShortlexEngine":
        """Sibling engine whose shortlex order lists names i, j first."""
        key = (i, j)
        eng = self._reordered.get(key)
        if eng is None:
            eng = ShortlexEngine(self.pres, pair_first_order(self.pres.n, i, j))
            self._reordered[key] = eng
        return eng


class ElementBall:
    """
    Breadth-first enumeration of the ball of a given radius, with the
    right-multiplication adjacency table (the Cayley automaton restricted to
    the ball).  Products u * v with |u| + |v| <= radius can be evaluated by
    table walks without leaving the ball.
    """

    def __init__(self, engine: ShortlexEngine, radius: int):
        self.engine = engine
        self.radius = radius
        self.words: list[Word] = [()]
        self.index: dict[Word, int] = {(): 0}
        letters = engine.letters()
        self.letters = letters
        self._letter_col = {a: c for c, a in enumerate(letters)}
        adj: list[list[int]] = []
        frontier = [()]
        while frontier:
            nxt: list[Word] = []
            for w in frontier:
                row = []
                for a in letters:
                    res = engine.append(w, a)
                    if len(res) > radius:
                        row.append(-1)
                        continue
                    idx = self.index.get(res)
                    if idx is None:
                        idx = len(self.words)
                        self.words.append(res)
                        self.index[res] = idx
                        nxt.append(res)
                    row.append(idx)
                adj.append(row)
            frontier = nxt
        # rows were appended in BFS order, which matches self.words order
        self.adj = adj
        self.length = [len(w) for w in self.words]
        self._spheres: dict[int, list[int]] = {}
        for idx, L in enumerate(self.length):
            self._spheres.setdefault(L, []).append(idx)

    def __len__(self) -> int:
        return len(self.words)

    def sphere(self, k: int) -> list[int]:
        return self._spheres.get(k, [])

    def sphere_sizes(self) -> dict[int, int]:
        return {k: len(v) for k, v in sorted(self._spheres.items())}

    def step(self, idx: int, a: int) -> int:
        return self.adj[idx][self._letter_col[a]]

    def walk(self, idx: int, word: Word) -> int:
        """Right-multiply element idx by word; -1 if the walk leaves the ball."""
        for a in word:
            idx = self.adj[idx][self._letter_col[a]]
            if idx < 0:
                return -1
        return idx

    def element(self, idx: int) -> GroupElement:
        return GroupElement(self.engine, self.words[idx])
