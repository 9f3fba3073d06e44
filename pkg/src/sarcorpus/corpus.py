"""Quote-response corpus model, ingestion, length filtering and fold splits."""

from __future__ import annotations

import csv
import io
import json
import random
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable


class DataError(ValueError):
    """Malformed or inconsistent input data."""


class Label(str, Enum):
    SARCASTIC = "sarc"
    NOT_SARCASTIC = "notsarc"

    @classmethod
    def parse(cls, value) -> Label | None:
        if value is None or value == "":
            return None
        if isinstance(value, Label):
            return value
        v = str(value).strip().lower()
        aliases = {
            "sarc": cls.SARCASTIC, "sarcastic": cls.SARCASTIC, "s": cls.SARCASTIC,
            "notsarc": cls.NOT_SARCASTIC, "not_sarcastic": cls.NOT_SARCASTIC,
            "not-sarcastic": cls.NOT_SARCASTIC, "ns": cls.NOT_SARCASTIC,
        }
        if v not in aliases:
            raise ValueError(f"unknown label {value!r}")
        return aliases[v]

    @property
    def other(self) -> Label:
        return Label.NOT_SARCASTIC if self is Label.SARCASTIC else Label.SARCASTIC


@dataclass(frozen=True)
class Post:
    id: str
    text: str
    parent_id: str | None = None
    topic: str | None = None

    def __post_init__(self):
        if not self.id:
            raise DataError("post id must be nonempty")
        if not self.text:
            raise DataError(f"post {self.id}: text must be nonempty")


@dataclass(frozen=True)
class QuoteResponsePair:
    response: Post
    quote: Post | None = None
    label: Label | None = None

    def __post_init__(self):
        rp = self.response.parent_id
        if self.quote is not None and rp is not None and rp != self.quote.id:
            raise DataError(f"pair {self.id}: parent_id {rp!r} != quote id {self.quote.id!r}")

    @property
    def id(self) -> str:
        return self.response.id

    @property
    def text(self) -> str:
        return self.response.text

    @property
    def has_parent(self) -> bool:
        return self.quote is not None or self.response.parent_id is not None

    def to_record(self) -> dict:
        return {
            "id": self.response.id,
            "parent_id": self.response.parent_id,
            "quote": self.quote.text if self.quote is not None else None,
            "text": self.response.text,
            "topic": self.response.topic,
            "label": self.label.value if self.label is not None else None,
        }


@dataclass(frozen=True)
class Corpus:
    pairs: tuple[QuoteResponsePair, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        index = {}
        for p in self.pairs:
            if p.id in index:
                raise DataError(f"duplicate post id {p.id!r}")
            index[p.id] = p
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __getitem__(self, post_id: str) -> QuoteResponsePair:
        return self._index[post_id]

    def __contains__(self, post_id) -> bool:
        return post_id in self._index

    @property
    def ids(self) -> list[str]:
        return [p.id for p in self.pairs]

    @property
    def class_counts(self) -> dict[Label | None, int]:
        return dict(Counter(p.label for p in self.pairs))

    def count(self, label: Label | None) -> int:
        return sum(1 for p in self.pairs if p.label == label)

    def subset(self, ids: Iterable[str]) -> Corpus:
        wanted = set(ids)
        return Corpus(tuple(p for p in self.pairs if p.id in wanted))

    def where(self, pred) -> Corpus:
        return Corpus(tuple(p for p in self.pairs if pred(p)))

    def is_labeled(self) -> bool:
        return all(p.label is not None for p in self.pairs)


def pair_from_record(rec: dict) -> QuoteResponsePair:
    if not isinstance(rec, dict):
        raise DataError("record is not an object")
    if not rec.get("id"):
        raise DataError("missing 'id' field")
    if not rec.get("text"):
        raise DataError("missing 'text' field")
    parent_id = rec.get("parent_id") or None
    quote_text = rec.get("quote") or None
    response = Post(str(rec["id"]), rec["text"], parent_id=parent_id, topic=rec.get("topic") or None)
    quote = None
    if quote_text is not None:
        quote = Post(parent_id or f"{rec['id']}#quote", quote_text)
    try:
        label = Label.parse(rec.get("label"))
    except ValueError as e:
        raise DataError(str(e)) from None
    return QuoteResponsePair(response, quote, label)


def _read_records(path: Path, fmt: str):
    if fmt == "jsonl":
        with open(path, encoding="utf-8") as fh:
            for n, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    yield n, json.loads(line)
                except json.JSONDecodeError as e:
                    raise DataError(f"{path}: line {n}: invalid JSON ({e.msg})") from None
    elif fmt == "csv":
        with open(path, encoding="utf-8", newline="") as fh:
            # header is line 1; first record is line 2
            for n, row in enumerate(csv.DictReader(fh), 2):
                yield n, {k: (v if v != "" else None) for k, v in row.items()}
    else:
        raise ValueError(f"unknown format {fmt!r}")


def load_corpus(path, format: str = "jsonl") -> Corpus:
    path = Path(path)
    pairs = []
    seen = set()
    for n, rec in _read_records(path, format):
        try:
            pair = pair_from_record(rec)
        except DataError as e:
            raise DataError(f"{path}: line {n}: {e}") from None
        if pair.id in seen:
            raise DataError(f"{path}: line {n}: duplicate post id {pair.id!r}")
        seen.add(pair.id)
        pairs.append(pair)
    return Corpus(tuple(pairs))


def dumps_corpus(corpus: Corpus) -> str:
    buf = io.StringIO()
    for p in corpus:
        buf.write(json.dumps(p.to_record(), ensure_ascii=False, sort_keys=True))
        buf.write("\n")
    return buf.getvalue()


def save_corpus(corpus: Corpus, path) -> None:
    Path(path).write_text(dumps_corpus(corpus), encoding="utf-8")


def word_count(text: str) -> int:
    """Whitespace-delimited runs holding at least one letter or digit."""
    text = unicodedata.normalize("NFC", text)
    return sum(1 for run in text.split() if any(ch.isalnum() for ch in run))


def word_count_filter(c: Corpus, min: int = 10, max: int = 150) -> Corpus:
    if min > max:
        raise ValueError(f"min ({min}) > max ({max})")
    return c.where(lambda p: min <= word_count(p.text) <= max)


@dataclass(frozen=True)
class FoldAssignment:
    k: int
    assignment: dict  # post id -> fold index

    def fold(self, i: int) -> list[str]:
        return [pid for pid, f in self.assignment.items() if f == i]

    def folds(self) -> list[list[str]]:
        out = [[] for _ in range(self.k)]
        for pid, f in self.assignment.items():
            out[f].append(pid)
        return out


def split_folds(c: Corpus, k: int, seed: int) -> FoldAssignment:
    """Stratified k-fold assignment.  Each class is shuffled and dealt
    round-robin; the deal continues across classes so fold sizes also stay
    within one of each other."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if not c.is_labeled():
        raise DataError("split_folds needs a fully labeled corpus")
    by_class: dict[Label, list[str]] = {}
    for p in c:
        by_class.setdefault(p.label, []).append(p.id)
    smallest = min(len(v) for v in by_class.values()) if by_class else 0
    if k > smallest:
        raise ValueError(f"k={k} exceeds the smaller class size ({smallest})")
    rng = random.Random(seed)
    assignment = {}
    offset = 0
    for label in sorted(by_class, key=lambda lab: lab.value):
        ids = list(by_class[label])
        rng.shuffle(ids)
        for i, pid in enumerate(ids):
            assignment[pid] = (offset + i) % k
        offset = (offset + len(ids)) % k
    return FoldAssignment(k, {pid: assignment[pid] for pid in c.ids})
