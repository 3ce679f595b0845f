"""The tau-calculus: classification, the moves, and the chain searches."""

import pytest

from artingeo.critical import (
    classify_critical,
    critical_spans,
    delta_letter,
    delta_word,
    find_length_reducing_move,
    leftward_lex_reduction,
    locate_overcritical,
    pair_label_fn,
    pn_values,
    reduce_2gen,
    rightward_length_reduction,
    tau,
    tau_closure,
)
from artingeo.presentation import CoxeterPresentation
from artingeo.words import format_word, free_reduce, parse_word

from conftest import freely_reduced_words

W = parse_word


def tau_of(text, m):
    c = classify_critical(W(text), m)
    assert c is not None, f"{text} should be critical for m={m}"
    return format_word(tau(c))


def test_tau_hand_pairs():
    # swaps of whole Garside words
    assert tau_of("aba", 3) == "bab"
    assert tau_of("bab", 3) == "aba"
    assert tau_of("abab", 4) == "baba"
    assert tau_of("ABAB", 4) == "BABA"
    # the unsigned pair x1 x2^2 x1^-1  <->  x2^-1 x1^2 x2
    assert tau_of("abbA", 3) == "Baab"
    assert tau_of("Baab", 3) == "abbA"
    # signed with interior
    assert tau_of("abaa", 3) == "bbab"
    assert tau_of("bbab", 3) == "abaa"
    assert tau_of("BBAB", 3) == "ABAA"
    assert tau_of("ABAA", 3) == "BBAB"


def test_tau_even_label_with_interior():
    # m = 4: alt_4(c,a) xi with xi = ac maps to delta(xi) (c,a)_4 = ac caca
    m = 4
    c = classify_critical(W("cacaac"), m)
    assert c is not None and c.form == "positive" and c.block_at == "start"
    assert format_word(tau(c)) == "accaca"
    c2 = classify_critical(W("accaca"), m)
    assert format_word(tau(c2)) == "cacaac"


def test_classify_rejections():
    assert classify_critical(W("ab"), 3) is None  # p + n < m
    assert classify_critical(W("abaB"), 3) is None  # p + n > m
    assert classify_critical(W("abab"), 3) is None  # two length-3 windows
    assert classify_critical(W("aab"), None) is None  # unconstrained pair
    assert classify_critical(W("aba"), 4) is None
    # the length-m window must sit at an end of the word
    assert classify_critical(W("aabaa"), 3) is None


def test_tau_involution_and_element_exhaustive():
    # every critical word of length <= 7 over two generators, m = 3 and 4
    from artingeo.oracle import Oracle

    for m in (3, 4):
        oracle = Oracle(CoxeterPresentation.dihedral(m))
        count = 0
        for w in freely_reduced_words(2, 7):
            c = classify_critical(w, m)
            if c is None:
                continue
            count += 1
            image = tau(c)
            assert len(image) == len(w)
            back = classify_critical(image, m)
            assert back is not None, f"tau image {image} of {w} not critical"
            assert tau(back) == w, f"tau not an involution at {w}"
            assert oracle.equal(w, image), f"tau changed the element at {w}"
        assert count > 50  # the sweep must actually exercise the calculus


def test_pn_values_and_errors():
    assert pn_values(W("aba"), 3) == (3, 0)
    assert pn_values(W("abbA"), 3) == (2, 1)
    assert pn_values((), 5) == (0, 0)
    with pytest.raises(ValueError):
        pn_values(W("aAb")[0:2] + (-1,), 3)  # not freely reduced: a A
    with pytest.raises(ValueError):
        pn_values(W("abc"), 3)


def test_delta_letter_and_word():
    assert delta_letter(1, (1, 2), 3) == 2
    assert delta_letter(-2, (1, 2), 3) == -1
    assert delta_letter(1, (1, 2), 4) == 1
    assert delta_word(W("abA"), (1, 2), 3) == W("baB")
    with pytest.raises(ValueError):
        delta_letter(3, (1, 2), 3)


def test_length_reducing_moves():
    mv = find_length_reducing_move(W("abaB"), 3)
    w = W("abaB")
    assert free_reduce(w[: mv.start] + mv.image + w[mv.end :]) == W("ba")
    mv4 = find_length_reducing_move(W("ababA"), 4)
    w4 = W("ababA")
    assert free_reduce(w4[: mv4.start] + mv4.image + w4[mv4.end :]) == W("bab")
    # length drop is 2(p + n - m)
    assert len(w) - (len(mv.image) + len(w) - (mv.end - mv.start)) == 2 * (
        mv.p + mv.n - 3
    )


def test_overcritical_maximality_precondition():
    # the initial block must be a maximal alternating subword of the host
    w = W("abaBAB")
    with pytest.raises(ValueError):
        locate_overcritical(w, 1, 6, 4)  # block 'ba' sits inside the run 'aba'
    # the full run is accepted
    mv = locate_overcritical(w, 0, 6, 4)
    assert mv.p == 3 and mv.n == 3


def test_reduce_2gen_logs():
    out, log = reduce_2gen(W("abaB"), 3)
    assert out == W("ba")
    assert [e["kind"] for e in log] == ["positive"]  # p = m move
    out, log = reduce_2gen(W("ab"), 3)
    assert out == W("ab") and log == []
    # Delta * x1^-1 in DA(4) has length 3
    out, log = reduce_2gen(W("ababA"), 4)
    assert len(out) == 3


def test_reduce_unsigned_only_when_strictly_between():
    # words with 0 < p, n < m reduce by unsigned moves alone, no free reduction
    for w in freely_reduced_words(2, 7):
        p, n = pn_values(w, 3)
        if not (0 < p < 3 and 0 < n < 3):
            continue
        out, log = reduce_2gen(w, 3)
        assert all(e["kind"] == "unsigned" for e in log)
        pp, nn = pn_values(out, 3)
        assert pp + nn <= 3


def test_chain_search_worked_example():
    pres = CoxeterPresentation.from_labels(3, {(1, 2): 3, (1, 3): 4, (2, 3): 5})
    label = pair_label_fn(pres)
    res = rightward_length_reduction(W("aBBAcbbCBacaacA"), label)
    assert res == W("BAACBccbaccac")


def test_chain_searches_on_geodesics():
    pres = CoxeterPresentation.dihedral(3)
    label = pair_label_fn(pres)
    # geodesic words admit no rightward reduction
    assert rightward_length_reduction(W("aba"), label) is None
    assert rightward_length_reduction(W("abba"), label) is None
    # leftward chains lower the lex order on tau-related spellings
    key = lambda w: w  # any monotone key works on these letters: a=1 < b=2
    better = leftward_lex_reduction(W("bab"), label, key)
    assert better == W("aba")
    assert leftward_lex_reduction(W("aba"), label, key) is None


def test_tau_closure_geodesic_sets():
    pres = CoxeterPresentation.dihedral(3)
    label = pair_label_fn(pres)
    assert tau_closure(W("aba"), label) == {W("aba"), W("bab")}
    assert tau_closure(W("ab"), label) == {W("ab")}
    assert tau_closure(W("abbA"), label) == {W("abbA"), W("Baab")}


def test_critical_spans_enumeration():
    pres = CoxeterPresentation.from_labels(3, {(1, 2): 3, (1, 3): 4, (2, 3): 5})
    label = pair_label_fn(pres)
    w = W("aBBAcbbCBacaacA")
    spans = [(s, e) for s, e, _ in critical_spans(w, label)]
    assert (0, 4) in spans  # the first moved subword of the worked sequence
    for s, e, c in critical_spans(w, label):
        assert classify_critical(w[s:e], c.m) is not None


def test_rightward_sequence_trace():
    from artingeo.critical import CriticalSequence

    pres = CoxeterPresentation.from_labels(3, {(1, 2): 3, (1, 3): 4, (2, 3): 5})
    label = pair_label_fn(pres)
    out = rightward_length_reduction(W("aBBAcbbCBacaacA"), label, with_trace=True)
    assert out is not None
    word, seq = out
    assert word == W("BAACBccbaccac")
    assert isinstance(seq, CriticalSequence)
    assert seq.direction == "rightward" and seq.free_cancellation
    assert len(seq.moves) >= 1
    assert seq.overlaps_in_single_letters()


def test_engine_rejects_out_of_range_letters():
    from artingeo.shortlex import ShortlexEngine

    eng = ShortlexEngine(CoxeterPresentation.dihedral(3))
    with pytest.raises(ValueError):
        eng.nf((3,))
    with pytest.raises(ValueError):
        eng.nf(W("abc"))


def test_alternating_pn_consistency():
    for m in (3, 4, 5):
        for r in range(0, 9):
            w = alt_starting_12(r)
            assert pn_values(w, m) == (min(m, r), 0)


def alt_starting_12(r):
    from artingeo.words import alternating

    return alternating(1, 2, r, "start") if r else ()
