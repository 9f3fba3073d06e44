"""Shallow syntax: tokenizer, sentence splitter, tagger, chunker, SVO heuristic."""

from functools import lru_cache

from .chunker import chunk
from .lexicon import TAGSET, Lexicon, load_lexicon
from .model import Chunk, Sentence, SvoTriple, Token
from .svo import extract_svo
from .tagger import pos_tag
from .tokenize import split_sentences, tokenize


@lru_cache(maxsize=65536)
def analyze(text: str) -> tuple[Sentence, ...]:
    """Tokenize, split, tag and chunk ``text`` with the default lexicon."""
    lex = load_lexicon()
    return tuple(
        chunk(pos_tag(sent, lex), lex)
        for sent in split_sentences(tokenize(text, lex), lex)
    )


def syntax_version() -> str:
    return load_lexicon().version


__all__ = [
    "TAGSET", "Chunk", "Lexicon", "Sentence", "SvoTriple", "Token",
    "analyze", "chunk", "extract_svo", "load_lexicon", "pos_tag",
    "split_sentences", "syntax_version", "tokenize",
]
