"""Cue retrieval: regex cues over unannotated posts, the mid-post question
heuristic for rhetorical questions, mixed annotation batches and per-cue
annotation statistics."""

from __future__ import annotations

import json
import random
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

from .annotation import CUE_RULE, AggregationRule, AnnotationRecord, Verdict, aggregate
from .corpus import Corpus, DataError, word_count
from .syntax import analyze

CLASS_HINTS = ("RQ", "HYP")
MAX_WORDS = 150


@dataclass(frozen=True)
class CueSpec:
    name: str
    pattern: str
    class_hint: str
    regex: re.Pattern = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.class_hint not in CLASS_HINTS:
            raise DataError(f"cue {self.name!r}: class_hint must be one of {CLASS_HINTS}")
        try:
            rx = re.compile(self.pattern, re.IGNORECASE)
        except re.error as e:
            raise DataError(f"cue {self.name!r}: bad pattern ({e})") from None
        object.__setattr__(self, "regex", rx)

    def matches(self, text: str) -> bool:
        return self.regex.search(text) is not None


def load_cues(path=None) -> list[CueSpec]:
    """Read a JSON-lines cue file; the packaged file when ``path`` is None."""
    if path is None:
        text = resources.files("sarcorpus").joinpath("data/cues.jsonl").read_text(encoding="utf-8")
        src = "cues.jsonl"
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        src = str(path)
    cues, names = [], set()
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            cue = CueSpec(rec["name"], rec["pattern"], rec["class_hint"])
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise DataError(f"{src}: line {n}: {e}") from None
        except DataError as e:
            raise DataError(f"{src}: line {n}: {e}") from None
        if cue.name in names:
            raise DataError(f"{src}: line {n}: duplicate cue name {cue.name!r}")
        names.add(cue.name)
        cues.append(cue)
    return cues


def eligible(pair, max_words: int = MAX_WORDS) -> bool:
    return pair.has_parent and word_count(pair.text) <= max_words


def retrieve(c: Corpus, cues: Sequence[CueSpec], max_words: int = MAX_WORDS) -> dict[str, list[str]]:
    """cue name -> ids of posts that have a parent, at most ``max_words``
    words, and a case-insensitive match.  Ids keep corpus order."""
    pool = [p for p in c if eligible(p, max_words)]
    return {cue.name: [p.id for p in pool if cue.matches(p.text)] for cue in cues}


def is_rq_candidate(text: str) -> bool:
    sents = analyze(text)
    return any(a.is_question and not b.is_question for a, b in zip(sents, sents[1:]))


def rq_candidates(c: Corpus) -> list[str]:
    """Posts with a question sentence directly followed by a non-question."""
    return [p.id for p in c if is_rq_candidate(p.text)]


@dataclass(frozen=True)
class Batch:
    post_ids: tuple
    cues: tuple  # cue name per post

    def __len__(self):
        return len(self.post_ids)


def sample_batches(matches: Mapping[str, Sequence[str]], batch_size: int, seed: int = 42) -> list[Batch]:
    """Deal posts into batches so consecutive posts come from different cues.

    A post matched by several cues is kept once, under the first cue that
    lists it.  Each cue's posts are shuffled, then cues are visited
    round-robin (cue order shuffled too) and the stream is cut into
    ``batch_size`` chunks.  Single-cue batches trigger a warning.
    """
    if batch_size <= 0:
        raise ValueError("batch_size must be positive")
    rng = random.Random(seed)
    seen = set()
    queues = []
    for cue in sorted(matches):
        ids = [pid for pid in dict.fromkeys(matches[cue]) if pid not in seen]
        seen.update(ids)
        rng.shuffle(ids)
        if ids:
            queues.append((cue, ids))
    rng.shuffle(queues)
    stream = []
    depth = max((len(ids) for _, ids in queues), default=0)
    for i in range(depth):
        for cue, ids in queues:
            if i < len(ids):
                stream.append((ids[i], cue))
    batches = []
    for start in range(0, len(stream), batch_size):
        chunk = stream[start:start + batch_size]
        b = Batch(tuple(pid for pid, _ in chunk), tuple(cue for _, cue in chunk))
        if len(set(b.cues)) < 2 and len(b) > 1:
            warnings.warn(f"batch {len(batches)} holds posts from a single cue ({b.cues[0]!r})", stacklevel=2)
        batches.append(b)
    return batches


@dataclass(frozen=True)
class CueStatsRow:
    cue: str
    found: int
    annotated: int
    sarcastic: int

    def __post_init__(self):
        if not 0 <= self.sarcastic <= self.annotated <= self.found:
            raise ValueError(f"cue {self.cue!r}: need sarcastic <= annotated <= found")

    @property
    def ratio(self) -> Fraction | None:
        return Fraction(self.sarcastic, self.annotated) if self.annotated else None

    @property
    def pct_sarcastic(self) -> float | None:
        r = self.ratio
        return None if r is None else float(100 * r)

    @property
    def pct_display(self) -> str:
        r = self.ratio
        if r is None:
            return "—"
        # round half up on the exact ratio
        return f"{int(100 * r + Fraction(1, 2))}%"


def cue_stats(matches: Mapping[str, Sequence[str]], annotations: Sequence[AnnotationRecord],
              rule: AggregationRule = CUE_RULE) -> list[CueStatsRow]:
    known = set()
    for ids in matches.values():
        known.update(ids)
    by_post = {}
    for r in annotations:
        if r.post_id not in known:
            raise DataError(f"annotation for unknown post {r.post_id!r}")
        by_post[r.post_id] = aggregate(r, rule)
    rows = []
    for cue, ids in matches.items():
        ids = list(dict.fromkeys(ids))
        verdicts = [by_post[i] for i in ids if i in by_post]
        rows.append(CueStatsRow(cue, len(ids), len(verdicts), sum(v is Verdict.SARCASTIC for v in verdicts)))
    return rows


STATS_HEADER = ["cue", "found", "annotated", "pct_sarcastic", "sarcastic", "ratio"]


def write_cue_stats(rows: Sequence[CueStatsRow], path, hints: Mapping[str, str] | None = None) -> None:
    hints = hints or {}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join((["class"] if hints else []) + STATS_HEADER) + "\n")
        for r in rows:
            ratio = "" if r.ratio is None else f"{float(r.ratio):.6f}"
            cells = [r.cue, str(r.found), str(r.annotated), r.pct_display, str(r.sarcastic), ratio]
            if hints:
                cells.insert(0, hints.get(r.cue, ""))
            fh.write("\t".join(cells) + "\n")
