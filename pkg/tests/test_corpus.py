import json
import re

import pytest
from hypothesis import given, strategies as st

from sarcorpus.corpus import (Corpus, DataError, Label, Post, QuoteResponsePair, load_corpus, save_corpus,
                              split_folds, word_count, word_count_filter)

from conftest import N, S, corpus, pair


def words(n):
    return " ".join(f"w{i}" for i in range(n))


def write_jsonl(path, recs):
    path.write_text("".join(json.dumps(r) + "\n" for r in recs), encoding="utf-8")
    return path


def test_empty_file(tmp_path):
    p = tmp_path / "e.jsonl"
    p.write_text("")
    assert len(load_corpus(p)) == 0


def test_two_records_keep_ids_and_order(tmp_path):
    p = write_jsonl(tmp_path / "c.jsonl", [
        {"id": "b7", "text": "second is first", "label": "sarc", "parent_id": "x"},
        {"id": "a1", "text": "hello there"},
    ])
    c = load_corpus(p)
    assert c.ids == ["b7", "a1"]
    assert c["b7"].label is S and c["a1"].label is None
    assert c["b7"].has_parent and not c["a1"].has_parent


def test_missing_text_names_line(tmp_path):
    p = write_jsonl(tmp_path / "c.jsonl", [{"id": "1"}])
    with pytest.raises(DataError, match="line 1"):
        load_corpus(p)


def test_bad_json_names_line(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text('{"id": "1", "text": "ok"}\n{nope\n')
    with pytest.raises(DataError, match="line 2"):
        load_corpus(p)


def test_duplicate_id(tmp_path):
    p = write_jsonl(tmp_path / "c.jsonl", [{"id": "1", "text": "a"}, {"id": "1", "text": "b"}])
    with pytest.raises(DataError, match="duplicate"):
        load_corpus(p)


def test_bad_label(tmp_path):
    p = write_jsonl(tmp_path / "c.jsonl", [{"id": "1", "text": "a", "label": "maybe"}])
    with pytest.raises(DataError, match="line 1"):
        load_corpus(p)


def test_csv_import(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text('id,parent_id,quote,text,label\n1,q1,"the quote","oh, really?",sarcastic\n2,,,"fine",notsarc\n')
    c = load_corpus(p, "csv")
    assert c.ids == ["1", "2"]
    assert c["1"].quote.text == "the quote" and c["1"].label is S
    assert c["2"].label is N and not c["2"].has_parent


def test_roundtrip(tmp_path):
    c = corpus([("one two", S), ("three", N), ("four", None, False)])
    save_corpus(c, tmp_path / "o.jsonl")
    back = load_corpus(tmp_path / "o.jsonl")
    assert [p.to_record() for p in back] == [p.to_record() for p in c]


def test_pair_parent_must_match_quote():
    with pytest.raises(DataError):
        QuoteResponsePair(Post("r", "x", parent_id="a"), Post("b", "y"))


def test_post_invariants():
    with pytest.raises(DataError):
        Post("", "x")
    with pytest.raises(DataError):
        Post("1", "")


def test_label_parse():
    assert Label.parse("Sarcastic") is S
    assert Label.parse("notsarc") is N
    assert Label.parse(None) is None
    assert S.other is N


def test_word_count_ignores_punctuation_runs():
    assert word_count("Oh , really ?!  ...  yes") == 3
    assert word_count("") == 0


def test_filter_bounds():
    c = corpus([(words(9), S), (words(10), S), (words(150), N), (words(151), N)])
    kept = word_count_filter(c)
    assert kept.ids == ["1", "2"]


def _oracle_words(text):
    return len([r for r in re.findall(r"\S+", text) if re.search(r"[^\W_]", r)])


def test_filter_matches_bruteforce_recount():
    import random
    rng = random.Random(3)
    vocab = ["a", "b", "...", "!!", "c1", "--", "x-y", ":)"]
    rows = [(" ".join(rng.choice(vocab) for _ in range(rng.randint(1, 200))), S) for _ in range(300)]
    c = corpus(rows)
    want = sum(1 for t, _ in rows if 10 <= _oracle_words(t) <= 150)
    assert len(word_count_filter(c)) == want


def test_filter_min_gt_max():
    with pytest.raises(ValueError):
        word_count_filter(corpus([]), 5, 4)


texts = st.lists(st.sampled_from(["a", "bb", "!", "...", "c d", "é", "7"]), max_size=40).map(" ".join).filter(bool)
labeled_rows = st.lists(st.tuples(texts, st.sampled_from([S, N])), max_size=40)


@given(labeled_rows, st.integers(0, 20), st.integers(0, 40))
def test_filter_subset_and_idempotent(rows, lo, span):
    c = corpus(rows)
    once = word_count_filter(c, lo, lo + span)
    assert set(once.ids) <= set(c.ids)
    assert word_count_filter(once, lo, lo + span).ids == once.ids


@given(labeled_rows)
def test_class_counts_is_recount(rows):
    c = corpus(rows)
    for lab in (S, N):
        assert c.class_counts.get(lab, 0) == sum(1 for _, l in rows if l is lab)
        assert c.where(lambda p: p.label is lab).class_counts.get(lab, 0) == c.count(lab)


def balanced(n_per):
    return corpus([(f"s{i}", S) for i in range(n_per)] + [(f"n{i}", N) for i in range(n_per)])


def test_ten_folds_exact():
    fa = split_folds(balanced(50), 10, seed=1)
    c = balanced(50)
    for ids in fa.folds():
        assert len(ids) == 10
        assert sum(c[i].label is S for i in ids) == 5


def test_folds_deterministic():
    assert split_folds(balanced(50), 10, 7) == split_folds(balanced(50), 10, 7)


def test_folds_errors():
    with pytest.raises(ValueError):
        split_folds(balanced(10), 11, 0)
    with pytest.raises(ValueError):
        split_folds(balanced(10), 1, 0)
    with pytest.raises(DataError):
        split_folds(corpus([("a", S), ("b", None)]), 2, 0)


@given(st.integers(2, 30), st.integers(2, 30), st.integers(2, 6), st.integers(0, 2**16))
def test_fold_partition_and_stratification(ns, nn, k, seed):
    k = min(k, ns, nn)
    c = corpus([("x", S)] * ns + [("y", N)] * nn)
    fa = split_folds(c, k, seed)
    assert sorted(fa.assignment) == sorted(c.ids)
    folds = fa.folds()
    assert sorted(i for f in folds for i in f) == sorted(c.ids)
    for lab in (S, N):
        per = [sum(c[i].label is lab for i in f) for f in folds]
        assert max(per) - min(per) <= 1
