"""
The dihedral Artin group DA(m) = <x1, x2 | alt_m(x1,x2) = alt_m(x2,x1)>.

Everything the 2-generator theory provides lives here: the geodesic
criterion p + n <= m, the Garside element Delta and its letter permutation
delta, critical words and tau, reduction to geodesics, Garside powers d(g),
the permissible factorisation set P = P1 u P2, merging of factorisation
pairs into (f1, Delta^r, f2) triples, and the compression of such triples
back into geodesic words.

Permissible factorisations of a signed element g are those (g1, g2) with
|g1| + |g2| = |g| such that either one factor has a geodesic spelling with
at most two syllables (P1), or d(g1) + d(g2) = d(g) (P2, the factorisation
does not lose Garside power).  For unsigned g, and in the free case m = inf,
every geodesic factorisation is permissible.

Merging strips material from the facing ends of a pair (g1, g2), one move
at a time, while both stripped-down sides remain permissible left and right
divisors of the originals:

  (i)   cancellation:      h * delta^r(h') = 1,
  (ii)  double Delta:      h = h' = Delta^e, r increases by 2e,
  (iii) Delta extraction:  h * delta^r(h') = Delta^e, r increases by e,

preferring lower move numbers, then longer h, then shortlex-smaller h.
When no move applies the triple (f1, Delta^r, f2) is a merger: writing
h1 = f1^-1 g1 and h2 = g2 f2^-1 one has h1 h2 = Delta^r, both side
factorisations permissible, |r| <= min(k, l) and |h1|, |h2| <= (m-1) min(k, l).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .critical import (
    CriticalWord,
    classify_critical,
    delta_word,
    find_length_reducing_move,
    locate_overcritical,
    pn_values,
    reduce_2gen,
    tau,
)
from .presentation import CoxeterPresentation, INF
from .shortlex import GroupElement, LetterOrder, ShortlexEngine
from .words import (
    Word,
    alt_starting,
    free_reduce,
    inverse_word,
    is_freely_reduced,
    runs,
    sign_class,
    syllable_count,
)


class CompressionShapeError(ValueError):
    """The triple does not have the shape a completed merger guarantees."""


@dataclass(frozen=True)
class MergeStep:
    kind: str  # 'cancel' | 'double-delta' | 'delta-extract'
    h: Word
    h_prime: Word
    r_after: int


@dataclass(frozen=True)
class MergerTripleD:
    """A merger (f1, Delta^r, f2) of the pair (g1, g2), with its trace."""

    f1: GroupElement
    r: int
    f2: GroupElement
    h1: GroupElement
    h2: GroupElement
    trace: tuple[MergeStep, ...]


@dataclass(frozen=True)
class CompressionResult:
    word: Word  # geodesic spelling u4 delta^{r'-s}(v4) Delta^s of f1 Delta^r f2
    kappa: GroupElement  # the element of u4
    u4: Word
    v4: Word
    r0: int
    r1: int
    r_prime: int
    s: int
    shape: str  # which factor carried the Delta power: 'left' | 'right' | 'none'
    stages: tuple[dict, ...]


class DihedralContext:
    """DA(m) with a fixed shortlex letter order; m = inf gives the free group."""

    def __init__(self, m, order: LetterOrder | None = None):
        if m is not INF:
            m = int(m)
            if m < 3:
                raise ValueError("the dihedral calculus needs a label >= 3")
        self.m = m
        self.pres = CoxeterPresentation.dihedral(m)
        self.engine = ShortlexEngine(self.pres, order)
        self.pair = (1, 2)
        self._d: dict[Word, int] = {}
        self._two_syll: dict[Word, bool] = {}
        self._perm: dict[tuple[Word, Word], tuple[bool, str]] = {}
        self._rdiv: dict[tuple[Word, int], tuple[Word, ...]] = {}

    # -- words and elements -------------------------------------------------

    def element(self, word) -> GroupElement:
        return self.engine.element(word)

    def nf(self, word) -> Word:
        return self.engine.nf(word)

    @property
    def identity(self) -> GroupElement:
        return self.engine.identity

    def _require_finite(self):
        if self.m is INF:
            raise ValueError("operation requires a finite dihedral label")

    def delta_power_word(self, r: int) -> Word:
        self._require_finite()
        base = alt_starting(1, 2, self.m)
        if r >= 0:
            return base * r
        return inverse_word(base) * (-r)

    def _delta_tail(self, r: int, prev: int | None) -> Word:
        """
        Delta^r as a word that does not cancel against a preceding letter:
        of the two spellings alt_m(x1,x2) and alt_m(x2,x1), pick one whose
        first letter is not the inverse of `prev`.
        """
        self._require_finite()
        for first, second in ((1, 2), (2, 1)):
            base = alt_starting(first, second, self.m)
            word = base * r if r >= 0 else inverse_word(base) * (-r)
            if not word or prev is None or word[0] != -prev:
                return word
        raise AssertionError("unreachable: both Garside spellings cancel")

    def delta_elem(self, r: int = 1) -> GroupElement:
        return self.element(self.delta_power_word(r))

    def delta_letter(self, a: int) -> int:
        self._require_finite()
        from .critical import delta_letter as _dl

        return _dl(a, self.pair, self.m)

    def delta_word(self, w: Word, power: int = 1) -> Word:
        self._require_finite()
        return delta_word(w, self.pair, self.m, power)

    def delta_conj(self, g: GroupElement, power: int = 1) -> GroupElement:
        """delta^power(g) = Delta^power g Delta^-power (letterwise on words)."""
        return self.element(self.delta_word(g.word, power))

    # -- geodesics -----------------------------------------------------------

    def pn(self, w: Word) -> tuple[int, int]:
        if self.m is INF:
            p, n = pn_values(w, len(w) + 1)
            return p, n
        return pn_values(w, self.m)

    def geodesic_status(self, w: Word) -> tuple[bool, bool]:
        """(is geodesic, is the unique geodesic spelling of its element)."""
        if self.m is INF:
            return True, True
        p, n = self.pn(w)
        return p + n <= self.m, p + n < self.m

    def is_geodesic(self, w: Word) -> bool:
        return self.geodesic_status(w)[0]

    def classify_critical(self, w: Word) -> Optional[CriticalWord]:
        if self.m is INF:
            return None
        return classify_critical(w, self.m)

    def tau(self, w: Word) -> Word:
        c = self.classify_critical(w)
        if c is None:
            raise ValueError(f"word {w} is not critical for m = {self.m}")
        return tau(c)

    def apply_length_reducing_tau(self, w: Word, start: int, end: int) -> Word:
        """Apply the length-reducing move at the over-critical span [start, end)."""
        self._require_finite()
        mv = locate_overcritical(w, start, end, self.m)
        return free_reduce(w[:start] + mv.image + w[end:])

    def reduce(self, w: Word) -> tuple[Word, list[dict]]:
        """Reduce to a geodesic spelling; the log lists every move applied."""
        m = None if self.m is INF else self.m
        return reduce_2gen(w, m)

    def geodesic_words(self, g: GroupElement) -> frozenset[Word]:
        return self.engine.geodesic_words(g)

    # -- Garside power and permissibility -------------------------------------

    def garside_power(self, g: GroupElement) -> int:
        """d(g): maximal k with Delta^{±k} dividing the signed element g."""
        self._require_finite()
        hit = self._d.get(g.word)
        if hit is not None:
            return hit
        sign = sign_class(g.word)
        if sign == "unsigned":
            raise ValueError("d(g) is defined for signed elements only")
        eps = 1 if sign == "positive" else -1
        inv_delta = self.delta_elem(-eps)
        d = 0
        cur = g
        while True:
            nxt = inv_delta * cur
            if len(nxt) != len(cur) - self.m:
                break
            cur = nxt
            d += 1
        self._d[g.word] = d
        return d

    def has_two_syllable_spelling(self, g: GroupElement) -> bool:
        hit = self._two_syll.get(g.word)
        if hit is None:
            hit = any(syllable_count(w) <= 2 for w in self.geodesic_words(g))
            self._two_syll[g.word] = hit
        return hit

    def permissible(self, g1: GroupElement, g2: GroupElement) -> tuple[bool, str]:
        """Membership of (g1, g2) in P(g1 g2), with the accepting clause."""
        key = (g1.word, g2.word)
        hit = self._perm.get(key)
        if hit is not None:
            return hit
        res = self._permissible(g1, g2)
        self._perm[key] = res
        return res

    def _permissible(self, g1, g2) -> tuple[bool, str]:
        g = g1 * g2
        if len(g) != len(g1) + len(g2):
            return False, "not-geodesic"
        if self.m is INF:
            return True, "infinite-label"
        if g.sign == "unsigned":
            return True, "unsigned"
        if self.has_two_syllable_spelling(g1) or self.has_two_syllable_spelling(g2):
            return True, "P1"
        if self.garside_power(g1) + self.garside_power(g2) == self.garside_power(g):
            return True, "P2"
        return False, "delta-decreasing"

    def left_divisor_permissible(self, g: GroupElement, f: GroupElement) -> bool:
        """f in P_l(g), i.e. (f, f^-1 g) in P(g)."""
        return self.permissible(f, f.inv() * g)[0]

    def right_divisor_permissible(self, g: GroupElement, f: GroupElement) -> bool:
        return self.permissible(g * f.inv(), f)[0]

    # -- divisor enumeration ---------------------------------------------------

    def right_divisor_words(self, g: GroupElement, j: int) -> tuple[Word, ...]:
        """Normal forms of the length-j right divisors of g, shortlex sorted."""
        key = (g.word, j)
        hit = self._rdiv.get(key)
        if hit is None:
            seen = {self.nf(w[len(w) - j :]) for w in self.geodesic_words(g)}
            hit = tuple(sorted(seen, key=self.engine.lex_key))
            self._rdiv[key] = hit
        return hit

    # -- merging ----------------------------------------------------------------

    def merge(self, g1: GroupElement, g2: GroupElement) -> MergerTripleD:
        """Run the merging process on (g1, g2) until no move applies."""
        f1, f2, r = g1, g2, 0
        trace: list[MergeStep] = []
        while True:
            mv = self._find_merge_move(g1, g2, f1, f2, r)
            if mv is None:
                break
            kind, h, hp, r = mv
            f1 = f1 * h.inv()
            f2 = hp.inv() * f2
            trace.append(MergeStep(kind, h.word, hp.word, r))
        h1 = f1.inv() * g1
        h2 = g2 * f2.inv()
        return MergerTripleD(f1, r, f2, h1, h2, tuple(trace))

    def _strip_ok(self, g1, g2, f1, f2, h, hp) -> tuple | None:
        """Check one candidate (h, h'): geodesic strips plus P-membership."""
        fn = f1 * h.inv()
        if len(fn) != len(f1) - len(h):
            return None
        if not self.left_divisor_permissible(g1, fn):
            return None
        gn = hp.inv() * f2
        if len(gn) != len(f2) - len(hp):
            return None
        if not self.right_divisor_permissible(g2, gn):
            return None
        return fn, gn

    def _find_merge_move(self, g1, g2, f1, f2, r):
        m_fin = self.m is not INF
        # (i) cancellation: h delta^r(h') = 1, h as long as possible
        for j in range(min(len(f1), len(f2)), 0, -1):
            for hw in self.right_divisor_words(f1, j):
                h = GroupElement(self.engine, hw)
                hp = self.delta_conj(h.inv(), r) if (m_fin and r % 2) else h.inv()
                if self._strip_ok(g1, g2, f1, f2, h, hp):
                    return ("cancel", h, hp, r)
        if not m_fin:
            return None
        # (ii) both signed, h = h' = Delta^eps
        if f1.sign != "unsigned" and f2.sign != "unsigned":
            for eps in (1, -1):
                if len(f1) < self.m or len(f2) < self.m:
                    break
                h = self.delta_elem(eps)
                if self._strip_ok(g1, g2, f1, f2, h, h):
                    return ("double-delta", h, h, r + 2 * eps)
        # (iii) Delta extraction: h delta^r(h') = Delta^eps
        delta = {1: self.delta_elem(1), -1: self.delta_elem(-1)}
        for j in range(len(f1), 0, -1):
            for hw in self.right_divisor_words(f1, j):
                h = GroupElement(self.engine, hw)
                for eps in (1, -1):
                    hp = h.inv() * delta[eps]
                    if r % 2:
                        hp = self.delta_conj(hp, r)
                    if len(hp) == 0:
                        continue
                    if self._strip_ok(g1, g2, f1, f2, h, hp):
                        return ("delta-extract", h, hp, r + eps)
        return None

    def replay_trace(self, g1: GroupElement, g2: GroupElement, trace) -> MergerTripleD:
        """Re-run a recorded trace from (g1, 0, g2); used as an invariant check."""
        f1, f2, r = g1, g2, 0
        for step in trace:
            f1 = f1 * GroupElement(self.engine, step.h).inv()
            f2 = GroupElement(self.engine, step.h_prime).inv() * f2
            r = step.r_after
        h1 = f1.inv() * g1
        h2 = g2 * f2.inv()
        return MergerTripleD(f1, r, f2, h1, h2, tuple(trace))

    # -- compression ---------------------------------------------------------------

    def _signed_garside_power(self, g: GroupElement) -> int:
        """d(g) with the sign of g; 0 for unsigned elements and the identity."""
        if self.m is INF or len(g) == 0 or g.sign == "unsigned":
            return 0
        eps = 1 if g.sign == "positive" else -1
        return eps * self.garside_power(g)

    def compress(self, triple: MergerTripleD) -> CompressionResult:
        """
        Turn a merger (f1, Delta^r, f2) into a geodesic spelling
        u4 delta^{r'-s}(v4) Delta^s of f1 Delta^r f2, and name kappa = (u4)_G.
        """
        self._require_finite()
        m = self.m
        f1, r, f2 = triple.f1, triple.r, triple.f2
        d1 = self._signed_garside_power(f1)
        d2 = self._signed_garside_power(f2)
        if d1 and d2:
            raise CompressionShapeError("both factors carry Garside powers")
        if d1:
            # f1 = u Delta^{r0}: remove the power from the right
            shape, r0 = "left", d1
            u = (f1 * self.delta_elem(-d1)).word
            v = f2.word
        elif d2:
            # f2 = Delta^{r0} v: remove the power from the left
            shape, r0 = "right", d2
            u = f1.word
            v = (self.delta_elem(-d2) * f2).word
        else:
            shape, r0, u, v = "none", 0, f1.word, f2.word
        if r and r0 and (r > 0) != (r0 > 0):
            raise CompressionShapeError("Delta powers of opposite signs")
        r1 = r + r0
        stages: list[dict] = []

        w0 = u + self.delta_word(v, r1) if r1 % 2 else u + v
        if not is_freely_reduced(w0):
            raise CompressionShapeError("u delta^{r1}(v) is not freely reduced")
        if any(e - s >= m for s, e in runs(w0)):
            raise CompressionShapeError("u delta^{r1}(v) contains a Garside power")

        # stage 1: split at the end of the maximal alternating subword
        # containing the end of u, then repair u1 by at most one move
        if u:
            cut = next(e for s, e in runs(w0) if e >= len(u))
        else:
            cut = 0
        u1, v1 = w0[:cut], w0[cut:]
        stages.append({"stage": "split", "u1": u1, "v1": v1})
        if self.is_geodesic(u1):
            u2 = u1
        else:
            mv = find_length_reducing_move(u1, m)
            if mv is None:
                raise CompressionShapeError("u1 is not geodesic yet admits no move")
            u2 = free_reduce(u1[: mv.start] + mv.image + u1[mv.end :])
            stages.append({"stage": "u1-repair", "span": (mv.start, mv.end)})
            if not self.is_geodesic(u2):
                raise CompressionShapeError("one move did not make u1 geodesic")

        # stage 2: straddling unsigned moves until the concatenation is geodesic
        U, V = u2, v1
        while not self.is_geodesic(U + V):
            mv = self._find_straddling_move(U, V)
            if mv is None:
                raise CompressionShapeError("no straddling move on a non-geodesic")
            U, V = mv
            stages.append({"stage": "pair-move", "u_len": len(U), "v_len": len(V)})
        u3, v3 = U, V

        # stage 3: absorb Delta^{r1} into v3, stage 4: the leftover into u3
        v4, r_prime, log3 = self._absorb_delta(v3, r1)
        stages.extend({"stage": "v-absorb", **entry} for entry in log3)
        if r_prime == 0:
            u4, s = u3, 0
        else:
            u4, s, log4 = self._absorb_delta(u3, r_prime)
            stages.extend({"stage": "u-absorb", **entry} for entry in log4)

        mid = self.delta_word(v4, r_prime - s) if (r_prime - s) % 2 else v4
        head4 = u4 + mid
        word = head4 + self._delta_tail(s, head4[-1] if head4 else None)
        if not self.is_geodesic(word):
            raise CompressionShapeError("compressed word is not geodesic")
        if len(u4) > (m - 1) ** 2 * (len(f1) + m - 1):
            raise CompressionShapeError("u4 exceeds its length bound")
        head = self.element(u4 + mid)
        for eps in (1, -1):
            if len(self.delta_elem(-eps) * head) == len(head) - m:
                raise CompressionShapeError("u4 delta(v4) has a Garside divisor")
        return CompressionResult(
            word,
            self.element(u4),
            u4,
            v4,
            r0,
            r1,
            r_prime,
            s,
            shape,
            tuple(stages),
        )

    def _find_straddling_move(self, U: Word, V: Word):
        """One unsigned move whose blocks lie one in U and one in V."""
        m = self.m
        W = U + V
        B = len(U)
        rs = runs(W)
        for ai, (sa, ea) in enumerate(rs):
            if ea > B:
                break
            la = ea - sa
            for sb, eb in rs[ai + 1 :]:
                if sb < B:
                    continue
                if (W[sa] > 0) == (W[sb] > 0):
                    continue
                lb = eb - sb
                if min(m, la) + min(m, lb) <= m:
                    continue
                mv = locate_overcritical(W, sa, eb, m)
                image = mv.image
                # the image splits at the same boundary: the left block and
                # xi1 belong to U, the right block and xi2 to V
                left_len = (m - mv.p if W[sa] > 0 else m - mv.n) + (B - (sa + la))
                newU = W[:sa] + image[:left_len]
                newV = image[left_len:] + W[eb:]
                return newU, newV
        return None

    def _absorb_delta(self, part: Word, r: int) -> tuple[Word, int, list[dict]]:
        """
        Reduce part * Delta^r by moves pairing one Delta with the rightmost
        opposite-sign alternating subword, until none remains or r hits 0.
        """
        m = self.m
        log: list[dict] = []
        while r != 0:
            eps = 1 if r > 0 else -1
            opp = [
                (s, e) for s, e in runs(part) if (part[s] > 0) != (eps > 0)
            ]
            if not opp:
                break
            s, e = opp[-1]
            blk = min(m, e - s)
            wfull = part + self._delta_tail(eps, part[-1] if part else None)
            mv = locate_overcritical(wfull, e - blk, len(wfull), m)
            part = free_reduce(wfull[: e - blk] + mv.image)
            r -= eps
            log.append({"run": (s, e), "r_left": r})
        return part, r, log
