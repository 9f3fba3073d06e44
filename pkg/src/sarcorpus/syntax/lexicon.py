"""Read-only lexical resources for the shallow tagger.

Resources live in a directory containing ``lexicon.tsv``, ``closed.tsv``,
``participles.txt``, ``emoticons.txt`` and ``abbreviations.txt``.  The
packaged copy is used unless ``SARCORPUS_LEXICON_DIR`` points elsewhere.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

TAGSET = (
    "DET", "NOUN", "PRON", "VERB", "AUX", "ADJ", "ADV",
    "PREP", "POSS", "PUNCT_RUN", "EMOTICON", "OTHER",
)

LEXICON_ENV = "SARCORPUS_LEXICON_DIR"
SYNTAX_VERSION = "1.0"

_FILES = ("lexicon.tsv", "closed.tsv", "participles.txt", "emoticons.txt", "abbreviations.txt")


@dataclass(frozen=True)
class Lexicon:
    readings: dict  # word -> tuple of tags, primary first
    closed: frozenset
    participles: frozenset
    emoticons: tuple
    abbreviations: frozenset
    digest: str

    def tags(self, word):
        return self.readings.get(word, ())

    @property
    def version(self):
        return f"{SYNTAX_VERSION}+{self.digest[:12]}"


def default_dir() -> Path:
    env = os.environ.get(LEXICON_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "data"


def _lines(path):
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if line and not line.startswith("#"):
                yield line


def read_tagged(path):
    """Parse a ``word<TAB>TAG`` file; repeated words accumulate readings."""
    out: dict[str, list[str]] = {}
    for n, line in enumerate(_lines(path), 1):
        try:
            word, tag = line.split("\t")
        except ValueError:
            raise ValueError(f"{path}: malformed lexicon line {n}: {line!r}") from None
        if tag not in TAGSET:
            raise ValueError(f"{path}: unknown tag {tag!r} on line {n}")
        tags = out.setdefault(word.lower(), [])
        if tag not in tags:
            tags.append(tag)
    return out


@lru_cache(maxsize=8)
def load_lexicon(directory: str | os.PathLike | None = None) -> Lexicon:
    d = Path(directory) if directory is not None else default_dir()
    h = hashlib.sha256()
    for name in _FILES:
        h.update((d / name).read_bytes())

    readings = read_tagged(d / "lexicon.tsv")
    closed = read_tagged(d / "closed.tsv")
    readings.update(closed)  # closed-class entries win outright
    return Lexicon(
        readings={w: tuple(t) for w, t in readings.items()},
        closed=frozenset(closed),
        participles=frozenset(w.lower() for w in _lines(d / "participles.txt")),
        # longest first so the tokenizer prefers ":-)" over ":-"
        emoticons=tuple(sorted(set(_lines(d / "emoticons.txt")), key=lambda e: (-len(e), e))),
        abbreviations=frozenset(w.lower() for w in _lines(d / "abbreviations.txt")),
        digest=h.hexdigest(),
    )
