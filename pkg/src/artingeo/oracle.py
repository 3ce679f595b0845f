"""
Brute-force ground truth, independent of the shortlex engine.

Equality of bounded words is decided by a fixed-point closure: starting from
a word, apply free reduction and tau-moves on all critical subwords until no
new word appears.  No move ever lengthens a word, a non-geodesic word always
reaches a shorter one (length-reducing moves are tau-moves followed by free
cancellation), and geodesic spellings of one element are connected by
tau-moves, so the closure of a word contains the full geodesic set of its
element.  The canonical representative is the shortlex-least word of the
closure, under the same letter order as the engine so that normal forms are
directly comparable.

The closure reasoning is itself spot-checked at small scale against a pure
relator-substitution procedure (replace one side of a defining relation by
the other, free cancellation, bounded free insertion) which does not go
through the tau-calculus at all.

Ball enumeration, geodesic-word enumeration and factorisation counting are
all driven by the canonical form, never by the engine; engine results are
compared against this module in the test suite.
"""

from __future__ import annotations

import hashlib
import json

from .critical import LabelFn, apply_tau_at, critical_spans, pair_label_fn
from .presentation import INF, CoxeterPresentation, format_presentation
from .shortlex import LetterOrder, default_order
from .words import Word, free_reduce, inverse_word, parse_word


class Oracle:
    """Closure-based word problem for one presentation.

    Words longer than max_len (after free reduction) are refused: the
    closure is exponential in the worst case and this is a bounded-length
    decision procedure by design.
    """

    def __init__(
        self,
        pres: CoxeterPresentation,
        order: LetterOrder | None = None,
        max_len: int = 64,
    ):
        self.pres = pres
        self.order = tuple(order) if order else default_order(pres.n)
        self.max_len = max_len
        self._rank = {a: r for r, a in enumerate(self.order)}
        self.label: LabelFn = pair_label_fn(pres)
        self._canon: dict[Word, Word] = {(): ()}

    def shortlex_key(self, w: Word):
        return (len(w), tuple(self._rank[a] for a in w))

    def canon(self, word) -> Word:
        """Shortlex-least word in the closure of `word`."""
        w = free_reduce(parse_word(word) if isinstance(word, str) else tuple(word))
        if len(w) > self.max_len:
            raise ValueError(f"word of length {len(w)} exceeds the oracle bound {self.max_len}")
        if any(a == 0 or abs(a) > self.pres.n for a in w):
            raise ValueError("generator index out of range")
        hit = self._canon.get(w)
        if hit is not None:
            return hit
        seen: set[Word] = {w}
        frontier: list[Word] = [w]
        found: Word | None = None
        while frontier:
            cur = frontier.pop()
            for s, e, c in critical_spans(cur, self.label):
                nxt = free_reduce(apply_tau_at(cur, s, e, c))
                if nxt in seen:
                    continue
                hit = self._canon.get(nxt)
                if hit is not None:
                    found = hit
                    frontier = []
                    break
                seen.add(nxt)
                frontier.append(nxt)
        if found is None:
            found = min(seen, key=self.shortlex_key)
        for s in seen:
            self._canon[s] = found
        return found

    def equal(self, w1, w2) -> bool:
        return self.canon(w1) == self.canon(w2)

    def geodesic_length(self, word) -> int:
        return len(self.canon(word))

    def is_geodesic(self, word) -> bool:
        w = parse_word(word) if isinstance(word, str) else tuple(word)
        return len(self.canon(w)) == len(w)


class BallBudgetError(RuntimeError):
    """Raised when enumeration exceeds its element budget; carries the
    largest fully enumerated radius and its ball."""

    def __init__(self, partial: "Ball", complete_radius: int):
        super().__init__(
            f"ball budget exceeded; complete up to radius {complete_radius}"
        )
        self.partial = partial
        self.complete_radius = complete_radius


class Ball:
    """
    The radius-R ball of the Cayley graph, enumerated by breadth-first
    search over canonical representatives, with the right-multiplication
    adjacency table.  Closed under inversion and usable for geodesic-word
    enumeration and factorisation counting without touching the engine.
    """

    VERSION = 1

    def __init__(self, oracle: Oracle, radius: int, max_elements=None, _load=None):
        self.oracle = oracle
        self.radius = radius
        letters = [a for g in range(1, oracle.pres.n + 1) for a in (g, -g)]
        self.letters = letters
        self._letter_col = {a: c for c, a in enumerate(letters)}
        if _load is not None:
            self.words, self.adj = _load
            self.index = {w: i for i, w in enumerate(self.words)}
        else:
            self.words = [()]
            self.index = {(): 0}
            adj: list[list[int]] = []
            frontier: list[Word] = [()]
            depth = 0
            while frontier:
                nxt: list[Word] = []
                for w in frontier:
                    row = []
                    for a in letters:
                        res = oracle.canon(w + (a,))
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
                if max_elements is not None and len(self.words) > max_elements:
                    partial = Ball(oracle, depth, _load=None)
                    raise BallBudgetError(partial, depth)
                frontier = nxt
                depth += 1
            self.adj = adj
        self.length = [len(w) for w in self.words]
        self._spheres: dict[int, list[int]] = {}
        for i, L in enumerate(self.length):
            self._spheres.setdefault(L, []).append(i)
        self._geodesic_words: dict[int, tuple[Word, ...]] = {}
        self._fact: dict[tuple[int, int], dict[int, list[tuple[int, int]]]] = {}

    def __len__(self) -> int:
        return len(self.words)

    def sphere(self, k: int) -> list[int]:
        return self._spheres.get(k, [])

    def sphere_sizes(self) -> dict[int, int]:
        return {k: len(v) for k, v in sorted(self._spheres.items())}

    def step(self, idx: int, a: int) -> int:
        return self.adj[idx][self._letter_col[a]]

    def walk(self, idx: int, word: Word) -> int:
        for a in word:
            idx = self.adj[idx][self._letter_col[a]]
            if idx < 0:
                return -1
        return idx

    def id_of(self, word) -> int:
        c = self.oracle.canon(word)
        if len(c) > self.radius:
            raise ValueError(f"element of length {len(c)} outside radius {self.radius}")
        return self.index[c]

    def inverse(self, idx: int) -> int:
        return self.index[self.oracle.canon(inverse_word(self.words[idx]))]

    # -- geodesic spellings -------------------------------------------------

    def geodesic_words_of(self, idx: int) -> tuple[Word, ...]:
        """All geodesic spellings of element idx, by backward recursion."""
        hit = self._geodesic_words.get(idx)
        if hit is not None:
            return hit
        if self.length[idx] == 0:
            out: tuple[Word, ...] = ((),)
        else:
            acc: list[Word] = []
            for a in self.letters:
                prev = self.step(idx, -a)
                if prev >= 0 and self.length[prev] == self.length[idx] - 1:
                    acc.extend(w + (a,) for w in self.geodesic_words_of(prev))
            out = tuple(sorted(acc))
        self._geodesic_words[idx] = out
        return out

    def final_letters_of(self, idx: int) -> set[int]:
        return {w[-1] for w in self.geodesic_words_of(idx)}

    # -- divisors and factorisations ----------------------------------------

    def left_divisors(self, idx: int) -> set[int]:
        """All left divisors, as prefix elements of geodesic spellings."""
        out: set[int] = set()
        for w in self.geodesic_words_of(idx):
            cur = 0
            out.add(cur)
            for a in w:
                cur = self.step(cur, a)
                out.add(cur)
        return out

    def right_divisors(self, idx: int) -> set[int]:
        return {self.inverse(d) for d in self.left_divisors(self.inverse(idx))}

    def fact_table(self, k: int, l: int) -> dict[int, list[tuple[int, int]]]:
        """Product buckets: g -> [(u, v)] with u in C_k, v in C_l, uv = g."""
        key = (k, l)
        hit = self._fact.get(key)
        if hit is not None:
            return hit
        if k + l > self.radius:
            raise ValueError("fact_table requires k + l <= radius")
        table: dict[int, list[tuple[int, int]]] = {}
        for u in self.sphere(k):
            for v in self.sphere(l):
                g = self.walk(u, self.words[v])
                table.setdefault(g, []).append((u, v))
        self._fact[key] = table
        return table

    def fact_count(
        self, g_idx: int, k: int, l: int, restricted: bool = False, permissible=None
    ) -> tuple[int, list[tuple[int, int]]]:
        """
        |Fact_{k,l}(g)| and its witness pairs; with restricted=True only
        pairs accepted by the supplied permissibility predicate (called on
        the two canonical words) are counted.
        """
        pairs = self.fact_table(k, l).get(g_idx, [])
        if restricted:
            if permissible is None:
                raise ValueError("restricted counting needs a permissible predicate")
            pairs = [
                (u, v) for u, v in pairs if permissible(self.words[u], self.words[v])
            ]
        return len(pairs), pairs

    # -- persistence ----------------------------------------------------------

    def cache_key(self) -> str:
        return ball_cache_name(self.oracle, self.radius)

    def save(self, path) -> None:
        data = {
            "version": self.VERSION,
            "presentation": format_presentation(self.oracle.pres),
            "order": list(self.oracle.order),
            "radius": self.radius,
            "words": [list(w) for w in self.words],
            "adj": self.adj,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh)

    @staticmethod
    def load(path, oracle: Oracle) -> "Ball":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if data["version"] != Ball.VERSION:
            raise ValueError(f"unsupported ball cache version {data['version']}")
        if data["order"] != list(oracle.order):
            raise ValueError("ball cache was built under a different letter order")
        if data["presentation"] != format_presentation(oracle.pres):
            raise ValueError("ball cache belongs to a different presentation")
        words = [tuple(w) for w in data["words"]]
        return Ball(oracle, data["radius"], _load=(words, data["adj"]))


def ball_cache_name(oracle: Oracle, radius: int) -> str:
    """Stable file stem keyed by presentation, letter order and radius."""
    payload = format_presentation(oracle.pres) + repr(oracle.order)
    digest = hashlib.sha256(payload.encode()).hexdigest()[:16]
    return f"ball_{digest}_r{radius}"


# -- relator-substitution closure (independent spot check) -------------------


def relator_closure(
    pres: CoxeterPresentation, word: Word, slack: int | None = None, max_states: int = 2_000_000
) -> set[Word]:
    """
    All words reachable from `word` by replacing one side of a defining
    relation by the other, cancelling adjacent inverse pairs, or inserting
    an inverse pair, keeping the length at most len(word) + slack.
    """
    if slack is None:
        m = pres.max_finite_label()
        slack = 0 if m is INF else int(m)
    cap = len(word) + slack
    relators: list[tuple[Word, Word]] = []
    for i, j in pres.finite_pairs():
        lhs, rhs = pres.relator_sides(i, j)
        relators.append((lhs, rhs))
        relators.append((rhs, lhs))
        inv = (inverse_word(lhs), inverse_word(rhs))
        relators.append(inv)
        relators.append((inv[1], inv[0]))
    letters = [a for g in range(1, pres.n + 1) for a in (g, -g)]
    seen = {word}
    frontier = [word]
    while frontier:
        cur = frontier.pop()
        neighbours: list[Word] = []
        for i in range(len(cur) - 1):
            if cur[i] == -cur[i + 1]:
                neighbours.append(cur[:i] + cur[i + 2 :])
        if len(cur) + 2 <= cap:
            for i in range(len(cur) + 1):
                for a in letters:
                    neighbours.append(cur[:i] + (a, -a) + cur[i:])
        for lhs, rhs in relators:
            L = len(lhs)
            for i in range(len(cur) - L + 1):
                if cur[i : i + L] == lhs:
                    neighbours.append(cur[:i] + rhs + cur[i + L :])
        for nxt in neighbours:
            if len(nxt) <= cap and nxt not in seen:
                if len(seen) >= max_states:
                    raise RuntimeError("relator closure exceeded the state budget")
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def relator_equal(pres: CoxeterPresentation, w1, w2, slack: int | None = None) -> bool:
    """Bounded relator-substitution equality test (spot-check scale only)."""
    a = parse_word(w1) if isinstance(w1, str) else tuple(w1)
    b = parse_word(w2) if isinstance(w2, str) else tuple(w2)
    return free_reduce(b) in {free_reduce(w) for w in relator_closure(pres, a, slack)}
