"""
Multi-generator machinery for Artin groups of large type.

For a pair of generators i, j write G(i,j) for the subgroup they generate,
a dihedral Artin group on the label m_ij.  Every element g has a unique
longest left divisor LD_ij(g) in G(i,j) and a unique longest right divisor
RD_ij(g); LD is computed by re-reducing under a letter order that lists the
letters of names i and j first and taking the maximal {i,j}-prefix of the
resulting normal form, RD by inverting.

A geodesic factorisation (g1, g2) is *permissible* when the dihedral pair
(RD_ij(g1), LD_ij(g2)) is permissible in G(i,j) for every pair i < j.  The
merging process of the dihedral theory extends to several generators with
one extra rule: while the accumulated middle power Delta_ij^r is nonzero all
moves must take h, h' inside the active G(i,j); when r = 0 cancellation is
unrestricted and a Delta move fixes a new active pair (the lexicographically
least pair admitting one; only finite labels can).

Mergers of all length-(k,l) decompositions of g form the set S(g,k,l); T(k,l)
collects the middle powers.  S splits into S0 (r = 0 with both sides powers
of one generator) and, via the reduction-to-two-generators construction, S1
(the extracted f1'' fhat f2'' factorisation is geodesic) and S2 (it is not,
in which case fhat = a^s b^t and a crossing letter c with balanced powers
c^q / c^-q can be extracted).  The decomposition validates every structural
claim it relies on and reports violations as events instead of hiding them.

Operations marked as requiring the no-(3,3,m)-triangle hypothesis refuse
presentations without it unless the context was built with
allow_counterexample=True, which is how the known failure of the
unique-tail property is reproduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .dihedral import DihedralContext, MergeStep
from .presentation import CoxeterPresentation, INF
from .shortlex import ElementBall, GroupElement, LetterOrder, ShortlexEngine
from .words import Word, names, syllable_count


class HypothesisError(ValueError):
    """The operation needs the no-(3,3,m)-triangle hypothesis."""


class OnetailFailure(ValueError):
    """More than one tail letter arose where a unique one was required."""

    def __init__(self, message, letters, witnesses):
        super().__init__(message)
        self.letters = letters
        self.witnesses = witnesses


@dataclass(frozen=True)
class MergerTriple:
    """(f1, Delta_pair^r, f2) produced by merging (g1, g2)."""

    f1: GroupElement
    pair: Optional[tuple[int, int]]  # meaningful iff r != 0
    r: int
    f2: GroupElement
    h1: GroupElement
    h2: GroupElement
    trace: tuple[MergeStep, ...]

    def key(self):
        pair = self.pair if self.r != 0 else None
        return (self.f1.word, pair, self.r, self.f2.word)


@dataclass
class STResult:
    triples: dict  # key -> (MergerTriple, source pair count)
    middles: set[Word]  # normal forms of the middle elements
    max_r: int
    max_h: int

    @property
    def size(self) -> int:
        return len(self.triples)


@dataclass
class SWitness:
    triple: MergerTriple
    bucket: str  # 'S0' | 'S1' | 'S2'
    pair: Optional[tuple[int, int]] = None
    f1pp: Optional[GroupElement] = None
    fhat: Optional[GroupElement] = None
    f2pp: Optional[GroupElement] = None
    inner: Optional[tuple] = None  # (f1', r, f2') in G(i,j)
    s2_witness: Optional[dict] = None  # {'c': letter, 'q': int, 'e1': .., 'e2': ..}


@dataclass
class SDecomposition:
    s0: list[SWitness] = field(default_factory=list)
    s1: list[SWitness] = field(default_factory=list)
    s2: list[SWitness] = field(default_factory=list)
    events: list[str] = field(default_factory=list)

    def all(self):
        return self.s0 + self.s1 + self.s2


class ArtinGroup:
    """A large-type Artin group with its shortlex engine and divisor calculus."""

    def __init__(
        self,
        pres: CoxeterPresentation,
        order: LetterOrder | None = None,
        allow_counterexample: bool = False,
    ):
        self.pres = pres
        self.engine = ShortlexEngine(pres, order)
        self.allow_counterexample = allow_counterexample
        self._dihedral: dict = {}
        self._balls: dict[int, ElementBall] = {}
        self._perm: dict[tuple[Word, Word], bool] = {}

    # -- delegation -------------------------------------------------------

    @property
    def identity(self) -> GroupElement:
        return self.engine.identity

    def element(self, word) -> GroupElement:
        return self.engine.element(word)

    def nf(self, word) -> Word:
        return self.engine.nf(word)

    def is_geodesic(self, word) -> bool:
        return self.engine.is_geodesic(word)

    def multiply(self, g, h) -> GroupElement:
        return self.engine.multiply(g, h)

    def invert(self, g) -> GroupElement:
        return self.engine.invert(g)

    def length(self, g) -> int:
        return len(g.word)

    def final_letters(self, g) -> set[int]:
        return self.engine.final_letters(g)

    def initial_letters(self, g) -> set[int]:
        return self.engine.initial_letters(g)

    def geodesic_words(self, g) -> frozenset[Word]:
        return self.engine.geodesic_words(g)

    def ball(self, radius: int) -> ElementBall:
        b = self._balls.get(radius)
        if b is None:
            b = ElementBall(self.engine, radius)
            self._balls[radius] = b
        return b

    def require_33m(self, what: str):
        if not self.pres.satisfies_33m() and not self.allow_counterexample:
            raise HypothesisError(
                f"{what} needs the no-(3,3,m)-triangle hypothesis; "
                "pass allow_counterexample=True to run regardless"
            )

    # -- dihedral subgroup plumbing -------------------------------------------

    def dihedral_ctx(self, i: int, j: int) -> DihedralContext:
        """Shared DA(m_ij) context (one per distinct label)."""
        m = self.pres.label(i, j)
        ctx = self._dihedral.get(m)
        if ctx is None:
            ctx = DihedralContext(m)
            self._dihedral[m] = ctx
        return ctx

    def to_dihedral(self, w: Word, i: int, j: int) -> Word:
        """Rename an {i,j}-word into DA coordinates (i -> 1, j -> 2)."""
        out = []
        for a in w:
            g = abs(a)
            if g == i:
                out.append(1 if a > 0 else -1)
            elif g == j:
                out.append(2 if a > 0 else -2)
            else:
                raise ValueError(f"letter {a} is not an {{{i},{j}}}-letter")
        return tuple(out)

    def from_dihedral(self, w: Word, i: int, j: int) -> Word:
        out = []
        for a in w:
            g = i if abs(a) == 1 else j
            out.append(g if a > 0 else -g)
        return tuple(out)

    def delta_ij(self, i: int, j: int, r: int = 1) -> GroupElement:
        ctx = self.dihedral_ctx(i, j)
        return self.element(self.from_dihedral(ctx.delta_power_word(r), i, j))

    # -- divisors ----------------------------------------------------------------

    def ld(self, g: GroupElement, i: int, j: int) -> GroupElement:
        """Longest left divisor of g inside G(i,j)."""
        if i == j:
            raise ValueError("ld needs two distinct generators")
        if i > j:
            i, j = j, i
        reord = self.engine.reordered(i, j)
        w = reord.nf(g.word)
        cut = 0
        while cut < len(w) and abs(w[cut]) in (i, j):
            cut += 1
        return self.element(w[:cut])

    def rd(self, g: GroupElement, i: int, j: int) -> GroupElement:
        return self.ld(g.inv(), i, j).inv()

    def in_parabolic(self, g: GroupElement, i: int, j: int) -> bool:
        return self.ld(g, i, j) == g

    def ld_prime(self, g: GroupElement, i: int, j: int):
        """
        (LD', case, tail letter): in case 1 every geodesic spelling of g has
        a prefix spelling LD_ij(g) and LD' = LD; in case 2 the maximal
        {i,j}-prefixes that fall short of LD all extend to it by powers of a
        single letter a, and LD' = LD a^{-s} with a^s the top power of a
        dividing LD on the right.
        """
        self.require_33m("the unique-tail divisor LD'")
        if i > j:
            i, j = j, i
        ld = self.ld(g, i, j)
        L = len(ld)
        reps = self.geodesic_words(g)
        if all(self.nf(w[:L]) == ld.word for w in reps):
            return ld, 1, None
        letters: set[int] = set()
        witnesses: dict[int, Word] = {}
        for w in reps:
            cut = 0
            while cut < len(w) and abs(w[cut]) in (i, j):
                cut += 1
            u = self.element(w[:cut])
            rest = u.inv() * ld
            if len(rest) == 0:
                continue
            a = rest.word[0]
            if any(x != a for x in rest.word):
                raise OnetailFailure(
                    "prefix does not extend to LD by a letter power",
                    set(),
                    {0: w},
                )
            letters.add(a)
            witnesses.setdefault(a, w)
        if len(letters) != 1:
            raise OnetailFailure(
                f"expected one tail letter, found {sorted(letters)}",
                letters,
                witnesses,
            )
        (a,) = letters
        s = 0
        cur = ld
        while True:
            nxt = cur * self.element((-a,))
            if len(nxt) != len(cur) - 1:
                break
            cur = nxt
            s += 1
        return cur, 2, a

    # -- permissibility ------------------------------------------------------------

    def permissible(self, g1: GroupElement, g2: GroupElement) -> bool:
        """(g1, g2) is geodesic and dihedrally permissible on every pair."""
        key = (g1.word, g2.word)
        hit = self._perm.get(key)
        if hit is not None:
            return hit
        res = self._permissible(g1, g2)
        self._perm[key] = res
        return res

    def _permissible(self, g1, g2) -> bool:
        if len(g1 * g2) != len(g1) + len(g2):
            return False
        for i, j in self.pres.pairs():
            if self.pres.label(i, j) is INF:
                continue  # free pair: geodesic factorisations are all allowed
            s = self.rd(g1, i, j)
            t = self.ld(g2, i, j)
            ctx = self.dihedral_ctx(i, j)
            sd = ctx.element(self.to_dihedral(s.word, i, j))
            td = ctx.element(self.to_dihedral(t.word, i, j))
            if not ctx.permissible(sd, td)[0]:
                return False
        return True

    def left_divisor_permissible(self, g, f) -> bool:
        return self.permissible(f, f.inv() * g)

    def right_divisor_permissible(self, g, f) -> bool:
        return self.permissible(g * f.inv(), f)

    # -- merging ----------------------------------------------------------------------

    def _pair_preference(self) -> list[tuple[int, int]]:
        return list(self.pres.finite_pairs())

    def _right_divisors_in_pair(self, f: GroupElement, i: int, j: int, length: int):
        """Length-`length` right divisors of f lying in G(i,j), shortlex order."""
        rdmax = self.rd(f, i, j)
        if len(rdmax) < length:
            return []
        ctx = self.dihedral_ctx(i, j)
        rd_da = ctx.element(self.to_dihedral(rdmax.word, i, j))
        return [
            self.element(self.from_dihedral(w, i, j))
            for w in ctx.right_divisor_words(rd_da, length)
        ]

    def _right_divisors(self, f: GroupElement, length: int):
        seen = {self.nf(w[len(w) - length :]) for w in self.geodesic_words(f)}
        return [
            GroupElement(self.engine, w)
            for w in sorted(seen, key=self.engine.lex_key)
        ]

    def _strip_ok(self, g1, g2, f1, f2, h, hp):
        fn = f1 * h.inv()
        if len(fn) != len(f1) - len(h):
            return False
        if not self.left_divisor_permissible(g1, fn):
            return False
        gn = hp.inv() * f2
        if len(gn) != len(f2) - len(hp):
            return False
        if not self.right_divisor_permissible(g2, gn):
            return False
        return True

    def _delta_conj_in_pair(self, x: GroupElement, i: int, j: int, power: int):
        if power % 2 == 0:
            return x
        ctx = self.dihedral_ctx(i, j)
        wd = ctx.delta_word(self.to_dihedral(x.word, i, j), power)
        return self.element(self.from_dihedral(wd, i, j))

    def _find_merge_move(self, g1, g2, f1, f2, r, pair):
        # (i) cancellation
        for j_len in range(min(len(f1), len(f2)), 0, -1):
            if r != 0:
                cands = self._right_divisors_in_pair(f1, pair[0], pair[1], j_len)
            else:
                cands = self._right_divisors(f1, j_len)
            for h in cands:
                if r != 0:
                    hp = self._delta_conj_in_pair(h.inv(), pair[0], pair[1], r)
                else:
                    hp = h.inv()
                if self._strip_ok(g1, g2, f1, f2, h, hp):
                    return ("cancel", h, hp, r, pair)
        # (ii) double Delta, both sides signed
        if f1.sign != "unsigned" and f2.sign != "unsigned":
            pairs = [pair] if r != 0 else self._pair_preference()
            for i, j in pairs:
                for eps in (1, -1):
                    h = self.delta_ij(i, j, eps)
                    if self._strip_ok(g1, g2, f1, f2, h, h):
                        return ("double-delta", h, h, r + 2 * eps, (i, j))
        # (iii) Delta extraction
        pairs = [pair] if r != 0 else self._pair_preference()
        for i, j in pairs:
            for j_len in range(len(f1), 0, -1):
                cands = self._right_divisors_in_pair(f1, i, j, j_len)
                for h in cands:
                    for eps in (1, -1):
                        hp = h.inv() * self.delta_ij(i, j, eps)
                        hp = self._delta_conj_in_pair(hp, i, j, r)
                        if len(hp) == 0:
                            continue
                        if self._strip_ok(g1, g2, f1, f2, h, hp):
                            return ("delta-extract", h, hp, r + eps, (i, j))
        return None

    def merge(self, g1: GroupElement, g2: GroupElement) -> MergerTriple:
        """Merge the pair (g1, g2); the active dihedral pair may change while r = 0."""
        self.require_33m("merging")
        f1, f2, r, pair = g1, g2, 0, None
        trace: list[MergeStep] = []
        while True:
            mv = self._find_merge_move(g1, g2, f1, f2, r, pair)
            if mv is None:
                break
            kind, h, hp, r, pair = mv
            f1 = f1 * h.inv()
            f2 = hp.inv() * f2
            if r == 0:
                pair = None
            trace.append(MergeStep(kind, h.word, hp.word, r))
        h1 = f1.inv() * g1
        h2 = g2 * f2.inv()
        return MergerTriple(f1, pair, r, f2, h1, h2, tuple(trace))

    def middle_of(self, t: MergerTriple) -> GroupElement:
        if t.r == 0:
            return self.identity
        return self.delta_ij(t.pair[0], t.pair[1], t.r)

    # -- S(g, k, l) and T(k, l) ---------------------------------------------------------

    def sphere_elements(self, k: int) -> list[GroupElement]:
        for r in sorted(self._balls):
            if r >= k:
                b = self._balls[r]
                return [b.element(i) for i in b.sphere(k)]
        b = self.ball(k)
        return [b.element(i) for i in b.sphere(k)]

    def decompositions(self, g: GroupElement, k: int, l: int):
        """All (g1, g2) with g = g1 g2, |g1| = k, |g2| = l."""
        out = []
        for g1 in self.sphere_elements(k):
            g2 = g1.inv() * g
            if len(g2) == l:
                out.append((g1, g2))
        return out

    def build_s_t(self, g: GroupElement, k: int, l: int, pairs=None) -> STResult:
        """Mergers over all length-(k,l) decompositions of g, with the bounds."""
        self.require_33m("the S(g,k,l) sweep")
        triples: dict = {}
        middles: set[Word] = set()
        max_r = 0
        max_h = 0
        for g1, g2 in pairs if pairs is not None else self.decompositions(g, k, l):
            t = self.merge(g1, g2)
            key = t.key()
            if key in triples:
                triples[key] = (triples[key][0], triples[key][1] + 1)
            else:
                triples[key] = (t, 1)
            middles.add(self.middle_of(t).word)
            max_r = max(max_r, abs(t.r))
            max_h = max(max_h, len(t.h1), len(t.h2))
        return STResult(triples, middles, max_r, max_h)

    # -- the S0 u S1 u S2 decomposition ---------------------------------------------------

    def _in_single_generator(self, g: GroupElement) -> bool:
        return syllable_count(g.word) <= 1

    def _inner_merger_checks(self, ctx, f1p_da, r, f2p_da, g1p_da, g2p_da, events, tag):
        """Validate that (f1', Delta^r, f2') is a completed merger of (g1', g2')."""
        h1p = f1p_da.inv() * g1p_da
        h2p = g2p_da * f2p_da.inv()
        if ctx.m is not INF:
            if (h1p * h2p) != ctx.delta_elem(r):
                events.append(f"{tag}: h1' h2' is not Delta^r")
        elif len(h1p * h2p) != 0:
            events.append(f"{tag}: h1' h2' nontrivial on a free pair")
        if not ctx.permissible(f1p_da, h1p)[0]:
            events.append(f"{tag}: (f1', h1') not permissible")
        if not ctx.permissible(h2p, f2p_da)[0]:
            events.append(f"{tag}: (h2', f2') not permissible")
        if ctx._find_merge_move(g1p_da, g2p_da, f1p_da, f2p_da, r) is not None:
            events.append(f"{tag}: inner triple admits a further move")

    def split_s(self, st: STResult, g: GroupElement, k: int, l: int) -> SDecomposition:
        """Classify every triple of S(g,k,l) into S0, S1 or S2 with witnesses."""
        out = SDecomposition()
        for key in sorted(st.triples, key=repr):
            t, _count = st.triples[key]
            tag = f"triple {key}"
            if (
                t.r == 0
                and self._in_single_generator(t.f1)
                and self._in_single_generator(t.f2)
                and (
                    len(t.f1) == 0
                    or len(t.f2) == 0
                    or abs(t.f1.word[0]) == abs(t.f2.word[0])
                )
            ):
                out.s0.append(SWitness(t, "S0"))
                continue
            w = self._split_one(t, g, out.events, tag)
            if w.bucket == "S1":
                out.s1.append(w)
            else:
                out.s2.append(w)
        return out

    def _choose_pair_r0(self, t: MergerTriple):
        """The r = 0 pair choice: lexicographically least, finite labels first."""
        ordered = list(self.pres.finite_pairs()) + [
            p for p in self.pres.pairs() if self.pres.label(*p) is INF
        ]
        for i, j in ordered:
            f1p = self.rd(t.f1, i, j)
            f2p = self.ld(t.f2, i, j)
            same_cyclic = False
            for c in (i, j):
                if all(abs(a) == c for a in f1p.word) and all(
                    abs(a) == c for a in f2p.word
                ):
                    same_cyclic = True
                    break
            if not same_cyclic:
                return i, j
        return None

    def _split_one(self, t: MergerTriple, g, events, tag) -> SWitness:
        if t.r != 0:
            i, j = t.pair
        else:
            pair = self._choose_pair_r0(t)
            if pair is None:
                events.append(f"{tag}: no usable pair for the r = 0 case")
                return SWitness(t, "S2")
            i, j = pair
        ctx = self.dihedral_ctx(i, j)
        f1p = self.rd(t.f1, i, j)
        f2p = self.ld(t.f2, i, j)
        h1p = self.ld(t.h1, i, j)
        h2p = self.rd(t.h2, i, j)
        f1pp = t.f1 * f1p.inv()
        f2pp = f2p.inv() * t.f2
        fhat = f1p * h1p * h2p * f2p
        # property (1)
        if len(self.rd(f1pp, i, j)) != 0:
            events.append(f"{tag}: f1'' still has a right divisor in G(i,j)")
        if len(self.ld(f2pp, i, j)) != 0:
            events.append(f"{tag}: f2'' still has a left divisor in G(i,j)")
        # property (2)
        if f1pp * fhat * f2pp != g:
            events.append(f"{tag}: g != f1'' fhat f2''")
        # property (3): the inner dihedral merger
        to_da = lambda x: ctx.element(self.to_dihedral(x.word, i, j))
        g1p_da = to_da(f1p * h1p)
        g2p_da = to_da(h2p * f2p)
        self._inner_merger_checks(
            ctx, to_da(f1p), t.r, to_da(f2p), g1p_da, g2p_da, events, tag
        )
        if self._in_single_generator(fhat):
            events.append(f"{tag}: fhat lies in a cyclic subgroup")
        inner = (f1p, t.r, f2p)
        geodesic = len(f1pp) + len(fhat) + len(f2pp) == len(g)
        if geodesic:
            return SWitness(t, "S1", (i, j), f1pp, fhat, f2pp, inner)
        s2w = self._s2_witness(t, g, (i, j), f1pp, fhat, f2pp, events, tag)
        return SWitness(t, "S2", (i, j), f1pp, fhat, f2pp, inner, s2w)

    def _s2_witness(self, t, g, pair, f1pp, fhat, f2pp, events, tag):
        """Extract and validate the crossing-letter witness for an S2 triple."""
        i, j = pair
        if self.pres.label(i, j) is INF:
            events.append(f"{tag}: S2 with an infinite label")
        w = fhat.word
        if syllable_count(w) != 2:
            events.append(f"{tag}: fhat is not a two-syllable element")
            return None
        a = w[0]
        s = 1
        while s < len(w) and w[s] == a:
            s += 1
        b = w[s]
        tpow = len(w) - s
        A = f1pp * self.element((a,) * s)
        B = self.element((b,) * tpow) * f2pp
        best = None
        for c in self.engine.letters():
            if abs(c) in (i, j):
                continue
            qa = 0
            cur = A
            while True:
                nxt = cur * self.element((-c,))
                if len(nxt) != len(cur) - 1:
                    break
                cur, qa = nxt, qa + 1
            if qa == 0:
                continue
            qb = 0
            curb = B
            while True:
                nxt = self.element((c,)) * curb
                if len(nxt) != len(curb) - 1:
                    break
                curb, qb = nxt, qb + 1
            q = min(qa, qb)
            if q == 0:
                continue
            if best is None or q > best[1] or (q == best[1] and c < best[0]):
                e1 = A * self.element((-c,) * q)
                e2 = self.element((c,) * q) * B
                best = (c, q, e1, e2)
        if best is None:
            events.append(f"{tag}: no crossing letter c with q > 0")
            return None
        c, q, e1, e2 = best
        if len(e1 * e2) != len(e1) + len(e2):
            events.append(f"{tag}: e1 e2 is not a geodesic factorisation")
        return {"c": c, "q": q, "e1": e1, "e2": e2}
