import json
import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sarcorpus.annotation import (CUE_RULE, EXPERT_RULE, GEN_RULE, RELAXED_GEN_RULE, AggregationRule,
                                  AnnotationRecord, SourceQuota, Verdict, agreement_stats, aggregate,
                                  assemble_subcorpus, dump_annotations, labeled_from_annotations, load_annotations,
                                  parse_rule, sarcasm_ratio, score_qualifier)
from sarcorpus.corpus import DataError

from conftest import N, S, corpus


def rec(pid, n_sarc, n, prefix="a"):
    return AnnotationRecord(pid, tuple((f"{prefix}{i}", "sarc" if i < n_sarc else "notsarc") for i in range(n)))


GOLD = {f"g{i}": ("sarc" if i < 10 else "notsarc") for i in range(20)}


def answers(n_correct):
    return {k: (v if i < n_correct else ("notsarc" if v == "sarc" else "sarc")) for i, (k, v) in enumerate(GOLD.items())}


@pytest.mark.parametrize("k,passed", [(15, True), (14, False), (20, True), (0, False)])
def test_qualifier(k, passed):
    r = score_qualifier(GOLD, answers(k))
    assert r.passed is passed and r.correct == k


def test_qualifier_missing_counts_wrong():
    sub = answers(20)
    for k in list(sub)[:6]:
        del sub[k]
    r = score_qualifier(GOLD, sub)
    assert r.correct == 14 and not r.passed


def test_qualifier_gold_shape():
    with pytest.raises(ValueError):
        score_qualifier(dict(list(GOLD.items())[:19]), {})


@pytest.mark.parametrize("rule,k,n,want", [
    (GEN_RULE, 6, 9, Verdict.SARCASTIC),
    (GEN_RULE, 5, 9, Verdict.SET_ASIDE),
    (GEN_RULE, 4, 9, Verdict.NOT_SARCASTIC),
    (EXPERT_RULE, 2, 3, Verdict.SARCASTIC),
    (EXPERT_RULE, 1, 3, Verdict.NOT_SARCASTIC),
    (CUE_RULE, 3, 5, Verdict.SARCASTIC),
    (CUE_RULE, 2, 5, Verdict.NOT_SARCASTIC),
])
def test_aggregate(rule, k, n, want):
    assert aggregate(rec("p", k, n), rule) is want


def test_aggregate_count_mismatch():
    with pytest.raises(DataError):
        aggregate(rec("p", 3, 8), GEN_RULE)


def test_duplicate_annotator():
    with pytest.raises(DataError):
        AnnotationRecord("p", (("a", "sarc"), ("a", "notsarc")))


def test_rule_validation_and_parse():
    with pytest.raises(ValueError):
        AggregationRule(0, 3)
    with pytest.raises(ValueError):
        AggregationRule(4, 3)
    assert parse_rule("6/9:5") == GEN_RULE and parse_rule("5/9") == RELAXED_GEN_RULE


@given(st.lists(st.booleans(), min_size=1, max_size=12), st.integers(1, 12), st.randoms())
def test_aggregate_permutation_invariant(votes, k, rnd):
    n = len(votes)
    k = min(k, n)
    rule = AggregationRule(k, n)
    js = [(f"a{i}", "sarc" if v else "notsarc") for i, v in enumerate(votes)]
    shuffled = list(js)
    rnd.shuffle(shuffled)
    assert aggregate(AnnotationRecord("p", tuple(js)), rule) == aggregate(AnnotationRecord("p", tuple(shuffled)), rule)


@given(st.lists(st.booleans(), min_size=1, max_size=12), st.integers(1, 12))
def test_aggregate_monotone(votes, k):
    n = len(votes)
    k = min(k, n)
    js = tuple((f"a{i}", "sarc" if v else "notsarc") for i, v in enumerate(votes))
    before = aggregate(AnnotationRecord("p", js), AggregationRule(k, n))
    after = aggregate(AnnotationRecord("p", js + (("extra", "sarc"),)), AggregationRule(k, n + 1))
    if before is Verdict.SARCASTIC:
        assert after is Verdict.SARCASTIC


def test_agreement_basic():
    recs = [rec("1", 3, 3), rec("2", 0, 3), AnnotationRecord("3", (("a0", "sarc"), ("a1", "notsarc"), ("a2", "sarc")))]
    st_ = agreement_stats(recs)
    assert st_.per_annotator["a0"] == 1.0
    assert st_.per_annotator["a1"] == pytest.approx(2 / 3)
    assert st_.mean == pytest.approx((1 + 2 / 3 + 1) / 3)


def test_agreement_ties_excluded():
    recs = [rec("1", 2, 4), rec("2", 4, 4)]
    s = agreement_stats(recs)
    assert s.excluded_posts == 1
    assert s.judgments == {f"a{i}": 1 for i in range(4)}
    assert s.mean == 1.0


@given(st.lists(st.lists(st.booleans(), min_size=3, max_size=3), max_size=15), st.randoms())
def test_agreement_order_invariant(rows, rnd):
    recs = [AnnotationRecord(str(i), tuple((f"a{j}", "sarc" if v else "notsarc") for j, v in enumerate(r)))
            for i, r in enumerate(rows)]
    shuffled = [AnnotationRecord(r.post_id, tuple(rnd.sample(r.judgments, len(r.judgments)))) for r in recs]
    rnd.shuffle(shuffled)
    assert agreement_stats(recs).per_annotator == agreement_stats(shuffled).per_annotator


def test_ratio():
    assert sarcasm_ratio([rec("1", 3, 3), rec("2", 2, 3)], EXPERT_RULE) == 1
    assert sarcasm_ratio([], EXPERT_RULE) is None
    assert sarcasm_ratio([rec("1", 6, 9), rec("2", 5, 9), rec("3", 0, 9)], GEN_RULE) == Fraction(1, 3)


def test_annotation_file_roundtrip(tmp_path):
    recs = [rec("1", 2, 3), rec("2", 0, 3)]
    dump_annotations(recs, tmp_path / "a.jsonl")
    assert load_annotations(tmp_path / "a.jsonl") == recs
    (tmp_path / "b.jsonl").write_text(json.dumps({"post_id": "1", "judgments": [{"annotator": "x"}]}) + "\n")
    with pytest.raises(DataError, match="line 1"):
        load_annotations(tmp_path / "b.jsonl")


def test_labeled_from_annotations():
    c = corpus([("a", None), ("b", None), ("c", None), ("d", None)])
    recs = [rec("0", 6, 9), rec("1", 5, 9), rec("2", 1, 9)]
    out = labeled_from_annotations(c, recs, GEN_RULE)
    assert out.ids == ["0", "2"] and out["0"].label is S and out["2"].label is N


def pool(prefix, n):
    from sarcorpus.corpus import Corpus
    from conftest import pair
    return Corpus(tuple(pair(f"{prefix}{i}", "text") for i in range(n)))


def test_assemble_gen_quotas():
    sources = [SourceQuota("round1_sarc", pool("r", 2220), S, 2220),
               SourceQuota("expert_sarc", pool("e", 1040), S, 1040),
               SourceQuota("legacy_notsarc", pool("l", 2400), N, 2360),
               SourceQuota("filtered_out", pool("f", 900), N, 900)]
    c, man = assemble_subcorpus(sources, seed=3)
    assert c.count(S) == c.count(N) == 3260
    assert man["class_counts"] == {"sarc": 3260, "notsarc": 3260}
    assert len(man["post_sources"]) == 6520
    assert sum(v == "legacy_notsarc" for v in man["post_sources"].values()) == 2360


def test_assemble_rq_quotas():
    sources = [SourceQuota("gen", pool("g", 357), S, 357), SourceQuota("cue", pool("c", 494), S, 494),
               SourceQuota("ns", pool("n", 900), N, 851)]
    c, _ = assemble_subcorpus(sources)
    assert c.count(S) == c.count(N) == 851


def test_assemble_errors():
    with pytest.raises(DataError, match="exceeds"):
        assemble_subcorpus([SourceQuota("a", pool("a", 5), S, 10), SourceQuota("b", pool("b", 10), N, 10)])
    with pytest.raises(DataError, match="unbalanced"):
        assemble_subcorpus([SourceQuota("a", pool("a", 5), S, 5), SourceQuota("b", pool("b", 10), N, 4)])
    with pytest.raises(DataError, match="pools"):
        assemble_subcorpus([SourceQuota("a", pool("a", 5), S, 2), SourceQuota("b", pool("a", 5), N, 2)])


@given(st.lists(st.tuples(st.booleans(), st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=6))
def test_assemble_balanced_traceable(specs):
    srcs = [SourceQuota(f"s{i}", pool(f"s{i}_", size + q), S if is_s else N, q)
            for i, (is_s, size, q) in enumerate(specs)]
    total = {S: 0, N: 0}
    for s in srcs:
        total[s.label] += s.quota
    if total[S] != total[N]:
        with pytest.raises(DataError):
            assemble_subcorpus(srcs)
        return
    c, man = assemble_subcorpus(srcs, seed=1)
    assert c.count(S) == c.count(N)
    for p in c:
        src = next(s for s in srcs if s.name == man["post_sources"][p.id])
        assert p.id in src.pool and p.label is src.label
