import pytest
from hypothesis import given, strategies as st

from sarcorpus.patterns import (ALL_TEMPLATES, BASE_TEMPLATES, TEMPLATES, P, PatternStats, count_patterns,
                                emit_pattern_report, post_patterns, read_pattern_set, read_stats,
                                threshold_patterns, write_pattern_set, write_stats)
from sarcorpus.corpus import DataError

from conftest import N, S, corpus
from synth import brute_bigrams, brute_counts, random_corpus

# template examples from the methodology's template table and its
# characteristic-pattern table
EXAMPLES = [
    ("SUBJ_PASSVP", "Go tell your mother, she might be interested in your fulminations.", "interested"),
    ("SUBJ_ACTVP", "Oh my goodness. This is a trick called semantics. I guess you got sucked in.", "guess"),
    ("SUBJ_ACTVP_DOBJ", "yet I do nothing to prevent the situation", "do nothing"),
    ("SUBJ_ACTINFVP", "I guess I need to check what website I am in", "need to check"),
    ("SUBJ_PASSINFVP", "You were asked to give us your explanation of evolution.", "asked to give"),
    ("SUBJ_AUXVP_DOBJ", "Fortunately you have the ability to think.", "have ability"),
    ("SUBJ_AUXVP_ADJ", "Or do you think that nothing is capable of undermining the institution of marriage?", "is capable"),
    ("ACTVP_DOBJ", "Oh yes, I know everything that you said.", "know"),
    ("INFVP_DOBJ", "Good idea except we do not have to elect him to any post.", "elect"),
    ("ACTINFVP_DOBJ", "Try to read chptr 13 before chptr 12, it will help you out.", "try to read"),
    ("PASSINFVP_DOBJ", "but i am allowed to simply make assertions and it's your job.", "allowed to make"),
    ("SUBJNP_AUXVP_DOBJ", "So your answer is nothing...", "answer is"),
    ("NP_PREP_NP", "There are MILLIONS of people saying stupid things.", "millions of"),
    ("ACTVP_PREP_NP", "You still have not admitted to your error", "admitted to"),
    ("PASSVP_PREP_NP", "they will have to be left alone for a few months", "left for"),
    ("INFVP_PREP_NP", "I masquerade as an atheist to try to appeal to a wider audience.", "appeal to"),
    ("POSS_NP", "O.K. let's play your game.", "your game"),
    ("ADV_ADV", "Ah yes, your diversionary tactics.", "ah yes"),
    ("ADV_ADV", "But then again, you become what you hate", "then again"),
    ("ACTVP_PREP_NP", "Thanks for missing the point.", "thanks for"),
    ("ADJ_NOUN", "especially since you think everything is a good idea", "good idea"),
    ("NP_PREP_NP", "The majority of criminals don't want to deal with trouble.", "majority of"),
]


@pytest.mark.parametrize("tid,text,anchor", EXAMPLES)
def test_template_examples(tid, text, anchor):
    assert P(tid, anchor) in post_patterns(text)


def test_seventeen_plus_bigrams():
    assert len(TEMPLATES) == 21
    assert "ADV_ADV" not in BASE_TEMPLATES
    assert P("ADV_ADV", "ah yes") not in post_patterns("Ah yes, sure.", BASE_TEMPLATES)


def test_pattern_validation():
    with pytest.raises(ValueError):
        P("NOPE", "x")
    with pytest.raises(ValueError):
        P("POSS_NP", "")


def test_repeats_count_per_site():
    c = corpus([("Thanks for nothing. Thanks for the help.", S)])
    s = count_patterns(c)
    assert s.count(P("ACTVP_PREP_NP", "thanks for"), S) == 2


def test_unlabeled_rejected():
    with pytest.raises(DataError):
        count_patterns(corpus([("Thanks for nothing.", None)]))


def test_count_matches_bruteforce():
    c = random_corpus(11)
    s = count_patterns(c)
    want = brute_counts(c, ALL_TEMPLATES)
    assert set(s.class_freq) == set(want)
    for p, by in want.items():
        for lab in (S, N):
            assert s.count(p, lab) == by.get(lab, 0)
        assert abs(s.prob(p, S) - by.get(S, 0) / sum(by.values())) <= 1e-12


def test_bigram_templates_match_tag_scan():
    c = random_corpus(5)
    s = count_patterns(c)
    got = {p.anchor: s.freq(p) for p in s if p.template_id == "ADJ_NOUN"}
    assert got == dict(brute_bigrams(c, ("ADJ", "NOUN")))


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_shard_merge(seed, cut_seed):
    c = random_corpus(seed, max_posts=30)
    cut = cut_seed % (len(c) + 1)
    a, b = c.subset(c.ids[:cut]), c.subset(c.ids[cut:])
    assert count_patterns(a).merge(count_patterns(b)) == count_patterns(c)


@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6),
       st.sampled_from([0.5, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 1.0]),
       st.sampled_from([0.5, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 1.0]))
def test_threshold_antitone(seed, f1, f2, p1, p2):
    s = count_patterns(random_corpus(seed, max_posts=40))
    lo_f, hi_f = sorted((f1, f2))
    lo_p, hi_p = sorted((p1, p2))
    for lab in (S, N):
        assert threshold_patterns(s, lab, hi_f, hi_p) <= threshold_patterns(s, lab, lo_f, lo_p)


def test_threshold_boundaries_inclusive():
    s = PatternStats()
    p = P("ADJ_NOUN", "good idea")
    s.add(p, S, n=3)
    s.add(p, N, n=1)
    assert p in threshold_patterns(s, S, 4, 0.75)
    assert p not in threshold_patterns(s, S, 5, 0.75)
    assert p not in threshold_patterns(s, S, 4, 0.76)


def test_report_ordering_and_sample():
    s = PatternStats()
    a, b, c = P("ADV_ADV", "ah yes"), P("ADJ_NOUN", "good idea"), P("ADV_ADV", "then again")
    s.add(a, S, "p1", n=8)
    s.add(b, S, "p2", n=25)
    s.add(b, N, "p3", n=10)
    s.add(c, S, "p4", n=10)
    s.add(c, N, "p5", n=1)
    rows = emit_pattern_report(s, S)
    assert [r.anchor for r in rows] == ["ah yes", "then again", "good idea"]
    assert rows[0].prob == 1.0 and rows[0].freq == 8 and rows[0].sample_post == "p1"
    assert [r.anchor for r in emit_pattern_report(s, S, sort="freq")][0] == "good idea"
    assert len(emit_pattern_report(s, S, top_k=1)) == 1
    assert [r.anchor for r in emit_pattern_report(s, S, min_freq=12)] == ["good idea"]


def test_stats_and_set_roundtrip(tmp_path):
    s = count_patterns(random_corpus(2, max_posts=50))
    write_stats(s, tmp_path / "s.tsv")
    back = read_stats(tmp_path / "s.tsv")
    assert back == s
    pats = threshold_patterns(s, S, 2, 0.6)
    write_pattern_set(tmp_path / "p.tsv", pats, s, S)
    assert read_pattern_set(tmp_path / "p.tsv") == pats
