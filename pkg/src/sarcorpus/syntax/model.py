from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class Token:
    surface: str
    span: tuple[int, int]
    kind: str = "word"  # word | punct | emoticon
    tag: str | None = None

    @property
    def lower(self) -> str:
        return self.surface.lower()

    @property
    def norm(self) -> str:
        # lookup key: lowercase with typographic apostrophes folded
        return self.surface.lower().replace("’", "'")

    def with_tag(self, tag: str) -> Token:
        return replace(self, tag=tag)


@dataclass(frozen=True)
class Chunk:
    kind: str  # NP | VP | PP
    start: int  # token index, inclusive
    end: int  # token index, exclusive
    head: int
    vp_voice: str | None = None  # ACTIVE | PASSIVE
    vp_infinitive: bool = False
    vp_has_aux: bool = False

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def __len__(self):
        return self.end - self.start


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    chunks: tuple[Chunk, ...] = field(default=())

    @property
    def is_question(self) -> bool:
        for tok in reversed(self.tokens):
            if tok.kind == "emoticon":
                continue
            return tok.kind == "punct" and "?" in tok.surface
        return False

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)

    def chunk_at(self, index: int) -> Chunk | None:
        for c in self.chunks:
            if c.start <= index < c.end:
                return c
        return None


@dataclass(frozen=True)
class SvoTriple:
    verb: str
    negated: bool = False
    subject: str | None = None
    object: str | None = None

    def __str__(self):
        args = ", ".join(a for a in (self.subject, self.object) if a)
        return f"{'not ' if self.negated else ''}{self.verb}({args})"
