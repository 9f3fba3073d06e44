import shutil
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from sarcorpus.syntax import TAGSET, analyze, chunk, extract_svo, load_lexicon, pos_tag, split_sentences, tokenize
from sarcorpus.syntax.lexicon import LEXICON_ENV, default_dir

SMOKE = Path(__file__).parent / "data" / "pos_smoke.txt"


def surfaces(text):
    return [t.surface for t in tokenize(text)]


def test_clitics_and_runs():
    assert surfaces("I don't know!!! :)") == ["I", "do", "n't", "know", "!!!", ":)"]
    toks = tokenize("wait... what?! ;-)")
    assert [t.kind for t in toks] == ["word", "punct", "word", "punct", "emoticon"]


def test_url_is_not_an_emoticon():
    assert all(t.kind != "emoticon" for t in tokenize("see http://example.com now"))


def test_sentence_split_keeps_abbreviations():
    sents = split_sentences(tokenize("Mr. Smith said no. Then he left :)"))
    assert [[t.surface for t in s] for s in sents] == [
        ["Mr", ".", "Smith", "said", "no", "."], ["Then", "he", "left", ":)"]]


alphabet = st.sampled_from(list("ab Z?!.:)(-'’ \n\t") + ["é", "7", "n't"])


@given(st.lists(alphabet, max_size=60).map("".join))
def test_tokens_tile_the_text(text):
    toks = tokenize(text)
    pos = 0
    for t in toks:
        a, b = t.span
        assert a >= pos and b > a
        assert text[pos:a].strip() == ""
        assert text[a:b] == t.surface
        pos = b
    assert text[pos:].strip() == ""


@given(st.lists(alphabet, max_size=60).map("".join))
def test_is_question_bruteforce(text):
    for s in analyze(text):
        last = [t for t in s.tokens if t.kind != "emoticon"]
        want = bool(last) and last[-1].kind == "punct" and "?" in last[-1].surface
        assert s.is_question == want


@given(st.lists(st.sampled_from(["the", "big", "dog", "is", "not", "going", "to", "eat", "in", "your",
                                 "house", "very", "quickly", "!", "?", "thanks", "for", "nothing", "ha"]),
                max_size=25).map(" ".join))
def test_chunks_disjoint_and_tags_valid(text):
    for s in analyze(text):
        assert all(t.tag in TAGSET for t in s.tokens)
        end = 0
        for c in s.chunks:
            assert end <= c.start < c.end <= len(s.tokens)
            assert c.start <= c.head < c.end
            end = c.end


def read_smoke():
    lines = [l.rstrip("\n") for l in SMOKE.read_text(encoding="utf-8").splitlines() if not l.startswith("#")]
    items = []
    i = 0
    while i < len(lines):
        if lines[i]:
            items.append((lines[i], [w.rsplit("/", 1) for w in lines[i + 1].split()]))
            i += 2
        else:
            i += 1
    return items


def test_pos_smoke_accuracy():
    items = read_smoke()
    assert len(items) >= 50
    ok = tot = 0
    for raw, gold in items:
        toks = pos_tag(tokenize(raw))
        assert [t.surface for t in toks] == [w for w, _ in gold], raw
        ok += sum(t.tag == g for t, (_, g) in zip(toks, gold))
        tot += len(gold)
    assert ok / tot >= 0.90


def svo(text):
    return [str(t) for s in analyze(text) for t in extract_svo(s)]


def test_svo_heuristic():
    assert "realize(you, humans)" in svo("You realize humans are animals")
    assert "not read(you)" in svo("Can't you read?")


def test_vp_features():
    s = analyze("It was written to annoy you.")[0]
    vps = [c for c in s.chunks if c.kind == "VP"]
    assert vps[0].vp_voice == "PASSIVE"
    assert any(c.vp_infinitive for c in vps)


def test_lexicon_override_via_env(tmp_path, monkeypatch):
    d = tmp_path / "lex"
    shutil.copytree(default_dir(), d)
    with open(d / "closed.tsv", "a", encoding="utf-8") as fh:
        fh.write("zorp\tADV\n")
    lex = load_lexicon(d)
    assert lex.tags("zorp")[0] == "ADV"
    assert lex.version != load_lexicon().version
    monkeypatch.setenv(LEXICON_ENV, str(d))
    load_lexicon.cache_clear()
    try:
        assert load_lexicon().tags("zorp")[0] == "ADV"
    finally:
        monkeypatch.delenv(LEXICON_ENV)
        load_lexicon.cache_clear()


def test_lexicon_rejects_unknown_tag(tmp_path):
    d = tmp_path / "lex"
    shutil.copytree(default_dir(), d)
    with open(d / "closed.tsv", "a", encoding="utf-8") as fh:
        fh.write("zorp\tBOGUS\n")
    with pytest.raises(ValueError):
        load_lexicon(d)
