"""Weakly supervised lexico-syntactic pattern learning.

Each sentence of a response is chunked and matched against a fixed set of
syntactic templates.  A matching template yields a pattern: the template id
plus the lowercased trigger words at the match site.  Counting is per
match site, so a pattern occurring twice in one post counts twice.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .corpus import Corpus, DataError, Label
from .syntax import Sentence, analyze
from .syntax.tagger import BE_FORMS, DO_FORMS, HAVE_FORMS

# id -> display form
TEMPLATES = {
    "SUBJ_PASSVP": "<subj> PassVP",
    "SUBJ_ACTVP": "<subj> ActVP",
    "SUBJ_ACTVP_DOBJ": "<subj> ActVP Dobj",
    "SUBJ_ACTINFVP": "<subj> ActInfVP",
    "SUBJ_PASSINFVP": "<subj> PassInfVP",
    "SUBJ_AUXVP_DOBJ": "<subj> AuxVP Dobj",
    "SUBJ_AUXVP_ADJ": "<subj> AuxVP Adj",
    "ACTVP_DOBJ": "ActVP <dobj>",
    "INFVP_DOBJ": "InfVP <dobj>",
    "ACTINFVP_DOBJ": "ActInfVP <dobj>",
    "PASSINFVP_DOBJ": "PassInfVP <dobj>",
    "SUBJNP_AUXVP_DOBJ": "Subj AuxVP <dobj>",
    "NP_PREP_NP": "NP Prep <np>",
    "ACTVP_PREP_NP": "ActVP Prep <np>",
    "PASSVP_PREP_NP": "PassVP Prep <np>",
    "INFVP_PREP_NP": "InfVP Prep <np>",
    "POSS_NP": "<possessive> NP",
    "ADJ_NOUN": "Adj Noun",
    "ADV_ADJ": "Adv Adj",
    "ADJ_ADJ": "Adj Adj",
    "ADV_ADV": "Adv Adv",
}
ALL_TEMPLATES = frozenset(TEMPLATES)
# the three bigram additions named in the method description, without Adv Adv
BASE_TEMPLATES = ALL_TEMPLATES - {"ADV_ADV"}

_BIGRAMS = {
    ("ADJ", "NOUN"): "ADJ_NOUN",
    ("ADV", "ADJ"): "ADV_ADJ",
    ("ADJ", "ADJ"): "ADJ_ADJ",
    ("ADV", "ADV"): "ADV_ADV",
}


@dataclass(frozen=True, order=True)
class LexicoSyntacticPattern:
    template_id: str
    anchor: str

    def __post_init__(self):
        if self.template_id not in TEMPLATES:
            raise ValueError(f"unknown template {self.template_id!r}")
        if not self.anchor:
            raise ValueError("anchor must be nonempty")

    def __str__(self):
        return f"{TEMPLATES[self.template_id]} ({self.anchor.upper()})"


P = LexicoSyntacticPattern


def vp_class(sent: Sentence, c) -> str | None:
    """ACT / PASS / AUX for a VP chunk; None for modal-only groups."""
    if c is None or c.kind != "VP":
        return None
    head = sent.tokens[c.head]
    if c.vp_voice == "PASSIVE":
        return "PASS"
    if head.tag == "VERB":
        return "ACT"
    w = head.norm
    if w in BE_FORMS or w in HAVE_FORMS:
        return "AUX"
    if w in DO_FORMS:
        return "ACT"
    return None


def instantiate_templates(sent: Sentence, templates: Iterable[str] = ALL_TEMPLATES) -> list[LexicoSyntacticPattern]:
    templates = frozenset(templates)
    toks = sent.tokens
    ch = sent.chunks
    out: list[tuple[int, LexicoSyntacticPattern]] = []

    def emit(tid, pos, *words):
        if tid in templates:
            out.append((pos, P(tid, " ".join(w.lower() for w in words))))

    def touching(a, b):
        # chunks separated only by unchunked adverbs count as adjacent
        return all(t.tag == "ADV" for t in toks[a.end:b.start])

    def adjacent(i, kind=None):
        if i + 1 < len(ch) and touching(ch[i], ch[i + 1]) and (kind is None or ch[i + 1].kind == kind):
            return ch[i + 1]
        return None

    def head(c):
        return toks[c.head].surface

    for i, c in enumerate(ch):
        if c.kind == "NP":
            pp = adjacent(i, "PP")
            if pp is not None and adjacent(i + 1) is not None:
                emit("NP_PREP_NP", c.start, head(c), head(pp))
            if toks[c.start].tag == "POSS" and c.head != c.start:
                emit("POSS_NP", c.start, toks[c.start].surface, head(c))
            continue
        if c.kind != "VP":
            continue

        cls = vp_class(sent, c)
        nxt = adjacent(i)
        subj = ch[i - 1] if i > 0 and ch[i - 1].kind == "NP" and touching(ch[i - 1], c) else None
        dobj = nxt if nxt is not None and nxt.kind == "NP" else None
        inf = nxt if nxt is not None and nxt.kind == "VP" and nxt.vp_infinitive else None
        prep = nxt if nxt is not None and nxt.kind == "PP" and adjacent(i + 1) is not None else None

        if c.vp_infinitive:
            if dobj is not None:
                emit("INFVP_DOBJ", c.start, head(c))
            if prep is not None:
                emit("INFVP_PREP_NP", c.start, head(c), head(prep))
            if cls == "PASS" and prep is not None:
                emit("PASSVP_PREP_NP", c.start, head(c), head(prep))
            continue

        if subj is not None:
            if cls == "PASS":
                emit("SUBJ_PASSVP", c.start, head(c))
                if inf is not None:
                    emit("SUBJ_PASSINFVP", c.start, head(c), "to", head(inf))
            elif cls == "ACT":
                emit("SUBJ_ACTVP", c.start, head(c))
                if dobj is not None:
                    emit("SUBJ_ACTVP_DOBJ", c.start, head(c), head(dobj))
                if inf is not None:
                    emit("SUBJ_ACTINFVP", c.start, head(c), "to", head(inf))
            elif cls == "AUX":
                if dobj is not None:
                    emit("SUBJ_AUXVP_DOBJ", c.start, head(c), head(dobj))
                    if toks[subj.head].tag == "NOUN":
                        emit("SUBJNP_AUXVP_DOBJ", c.start, head(subj), head(c))
                k = c.end
                while k < len(toks) and toks[k].tag == "ADV":
                    k += 1
                if k < len(toks) and toks[k].tag == "ADJ" and sent.chunk_at(k) is None:
                    emit("SUBJ_AUXVP_ADJ", c.start, head(c), toks[k].surface)

        if cls == "ACT":
            if dobj is not None:
                emit("ACTVP_DOBJ", c.start, head(c))
            if prep is not None:
                emit("ACTVP_PREP_NP", c.start, head(c), head(prep))
        if cls == "PASS" and prep is not None:
            emit("PASSVP_PREP_NP", c.start, head(c), head(prep))
        if inf is not None and adjacent(i + 1, "NP") is not None:
            if cls == "ACT":
                emit("ACTINFVP_DOBJ", c.start, head(c), "to", head(inf))
            elif cls == "PASS":
                emit("PASSINFVP_DOBJ", c.start, head(c), "to", head(inf))

    for j in range(len(toks) - 1):
        a, b = toks[j], toks[j + 1]
        if a.kind != "word" or b.kind != "word":
            continue
        tid = _BIGRAMS.get((a.tag, b.tag))
        if tid is not None:
            emit(tid, j, a.surface, b.surface)

    out.sort(key=lambda x: (x[0], x[1]))
    return [p for _, p in out]


@lru_cache(maxsize=65536)
def post_patterns(text: str, templates: frozenset = ALL_TEMPLATES) -> tuple[LexicoSyntacticPattern, ...]:
    """All match sites over every sentence of ``text``."""
    return tuple(p for sent in analyze(text) for p in instantiate_templates(sent, templates))


@dataclass
class PatternStats:
    """Per-pattern class frequencies.  Probabilities are raw ratios."""

    class_freq: dict = field(default_factory=dict)  # pattern -> Counter[Label]
    samples: dict = field(default_factory=dict, compare=False)  # pattern -> {Label: post id}

    def __contains__(self, p):
        return p in self.class_freq

    def __len__(self):
        return len(self.class_freq)

    def __iter__(self):
        return iter(sorted(self.class_freq))

    def freq(self, p) -> int:
        return sum(self.class_freq[p].values())

    def count(self, p, label: Label) -> int:
        return self.class_freq[p].get(label, 0)

    def prob_fraction(self, p, label: Label) -> Fraction:
        return Fraction(self.count(p, label), self.freq(p))

    def prob(self, p, label: Label) -> float:
        return self.count(p, label) / self.freq(p)

    def add(self, p, label: Label, post_id: str | None = None, n: int = 1):
        self.class_freq.setdefault(p, Counter())[label] += n
        if post_id is not None:
            self.samples.setdefault(p, {}).setdefault(label, post_id)

    def merge(self, other: PatternStats) -> PatternStats:
        out = PatternStats()
        for src in (self, other):
            for p, counts in src.class_freq.items():
                for label, n in counts.items():
                    out.add(p, label, n=n)
                for label, pid in src.samples.get(p, {}).items():
                    out.samples.setdefault(p, {}).setdefault(label, pid)
        return out

    def __eq__(self, other):
        if not isinstance(other, PatternStats):
            return NotImplemented
        norm = lambda s: {p: {k: v for k, v in c.items() if v} for p, c in s.class_freq.items()}  # noqa: E731
        return norm(self) == norm(other)


def count_patterns(c: Corpus, templates: Iterable[str] = ALL_TEMPLATES) -> PatternStats:
    templates = frozenset(templates)
    stats = PatternStats()
    for pair in c:
        if pair.label is None:
            raise DataError(f"post {pair.id} is unlabeled")
        for p in post_patterns(pair.text, templates):
            stats.add(p, pair.label, pair.id)
    return stats


def _as_fraction(x) -> Fraction:
    return Fraction(x).limit_denominator(10**6)


def threshold_patterns(s: PatternStats, label: Label, theta_f: int, theta_p: float) -> frozenset:
    tp = _as_fraction(theta_p)
    return frozenset(
        p for p in s.class_freq
        if s.freq(p) >= theta_f and s.prob_fraction(p, label) >= tp
    )


@dataclass(frozen=True)
class ReportRow:
    prob: float
    freq: int
    template_id: str
    anchor: str
    sample_post: str | None

    @property
    def template(self) -> str:
        return TEMPLATES[self.template_id]


def emit_pattern_report(s: PatternStats, label: Label, sort: str = "prob", top_k: int | None = None,
                        min_freq: int = 1) -> list[ReportRow]:
    """Rows for patterns seen at least once with ``label``.

    ``sort="prob"`` orders by probability, then frequency, then anchor;
    ``sort="freq"`` puts frequency first.
    """
    rows = []
    for p, counts in s.class_freq.items():
        if counts.get(label, 0) == 0 or s.freq(p) < min_freq:
            continue
        rows.append((s.prob_fraction(p, label), s.freq(p), p))
    if sort == "prob":
        rows.sort(key=lambda r: (-r[0], -r[1], r[2].anchor, r[2].template_id))
    elif sort == "freq":
        rows.sort(key=lambda r: (-r[1], -r[0], r[2].anchor, r[2].template_id))
    else:
        raise ValueError(f"unknown sort key {sort!r}")
    if top_k is not None:
        rows = rows[:top_k]
    return [
        ReportRow(float(pr), f, p.template_id, p.anchor, s.samples.get(p, {}).get(label))
        for pr, f, p in rows
    ]


STATS_HEADER = ["template_id", "anchor", "freq", "sarc", "notsarc", "sample_sarc", "sample_notsarc"]


def write_stats(s: PatternStats, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(STATS_HEADER)
        for p in s:
            smp = s.samples.get(p, {})
            w.writerow([
                p.template_id, p.anchor, s.freq(p),
                s.count(p, Label.SARCASTIC), s.count(p, Label.NOT_SARCASTIC),
                smp.get(Label.SARCASTIC, ""), smp.get(Label.NOT_SARCASTIC, ""),
            ])


def read_stats(path) -> PatternStats:
    s = PatternStats()
    with open(path, encoding="utf-8", newline="") as fh:
        r = csv.DictReader(fh, delimiter="\t")
        for n, row in enumerate(r, 2):
            try:
                p = P(row["template_id"], row["anchor"])
                sarc, notsarc = int(row["sarc"]), int(row["notsarc"])
            except (KeyError, TypeError, ValueError) as e:
                raise DataError(f"{path}: line {n}: {e}") from None
            if sarc + notsarc != int(row["freq"]):
                raise DataError(f"{path}: line {n}: class counts do not sum to freq")
            for label, k, smp in ((Label.SARCASTIC, sarc, row.get("sample_sarc")),
                                  (Label.NOT_SARCASTIC, notsarc, row.get("sample_notsarc"))):
                if k:
                    s.add(p, label, smp or None, n=k)
    return s


def write_pattern_set(path, patterns, stats: PatternStats, label: Label) -> None:
    """``template_id<TAB>anchor<TAB>freq<TAB>prob`` per line, prob for ``label``."""
    with open(path, "w", encoding="utf-8") as fh:
        for p in sorted(patterns):
            fh.write(f"{p.template_id}\t{p.anchor}\t{stats.freq(p)}\t{stats.prob(p, label):.6f}\n")


def read_pattern_set(path) -> frozenset:
    out = set()
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                raise DataError(f"{path}: line {n}: expected template_id<TAB>anchor")
            try:
                out.add(P(parts[0], parts[1]))
            except ValueError as e:
                raise DataError(f"{path}: line {n}: {e}") from None
    return frozenset(out)
