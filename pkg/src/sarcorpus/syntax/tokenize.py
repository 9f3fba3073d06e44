"""Tokenizer and sentence splitter.

Words, maximal punctuation runs ("?!?!", "...") and emoticons each become a
single token.  English clitics are split off Penn-style ("can't" -> "ca"
"n't", "let's" -> "let" "'s").
"""

from __future__ import annotations

import re
from functools import lru_cache

from .lexicon import Lexicon, load_lexicon
from .model import Token

_CLITIC = re.compile(r"^(.+?)(['’](?:s|re|m|ll|ve|d))$", re.IGNORECASE)
_BOUNDARY = set(".!?")


def _emoticon_alternatives(emoticons):
    alts = [r"\[emoticon-[\w-]+\]"]
    for emo in emoticons:
        pat = re.escape(emo)
        if emo[0].isalnum():
            pat = r"(?<![^\W_])" + pat
        if emo[-1].isalnum():
            pat += r"(?![^\W_])"
        elif emo[-1] in "/\\":
            pat += r"(?![/\\])"  # keep "://" out of URLs
        alts.append(pat)
    return "|".join(alts)


@lru_cache(maxsize=8)
def _token_regex(emoticons: tuple) -> re.Pattern:
    emo = _emoticon_alternatives(emoticons)
    return re.compile(
        rf"(?P<emo>{emo})"
        r"|(?P<abbr>(?:[^\W\d_]\.){2,})"
        r"|(?P<word>[^\W_]+(?:['’-][^\W_]+)*)"
        rf"|(?P<punct>(?:(?!{emo})(?:[^\w\s]|_))+)"
    )


def _split_clitics(surface, start):
    low = surface.lower().replace("’", "'")
    if low.endswith("n't") and len(low) > 3:
        cut = len(surface) - 3
    else:
        m = _CLITIC.match(surface)
        if not m:
            return [Token(surface, (start, start + len(surface)))]
        cut = len(m.group(1))
    return [
        Token(surface[:cut], (start, start + cut)),
        Token(surface[cut:], (start + cut, start + len(surface))),
    ]


def tokenize(text: str, lexicon: Lexicon | None = None) -> list[Token]:
    lex = lexicon or load_lexicon()
    tokens: list[Token] = []
    for m in _token_regex(lex.emoticons).finditer(text):
        kind = m.lastgroup
        if kind == "emo":
            tokens.append(Token(m.group(), m.span(), "emoticon", "EMOTICON"))
        elif kind == "punct":
            tokens.append(Token(m.group(), m.span(), "punct", "PUNCT_RUN"))
        elif kind == "abbr":
            tokens.append(Token(m.group(), m.span()))
        else:
            tokens.extend(_split_clitics(m.group(), m.start()))
    return tokens


def split_sentences(tokens: list[Token], lexicon: Lexicon | None = None) -> list[list[Token]]:
    """Split after a punctuation run holding . ! or ? when whitespace and a
    capital or non-letter follow.  Trailing emoticons stay with the sentence
    they close."""
    lex = lexicon or load_lexicon()
    sentences: list[list[Token]] = []
    current: list[Token] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        current.append(tok)
        i += 1
        if tok.kind != "punct" or not (_BOUNDARY & set(tok.surface)):
            continue
        if tok.surface == "." and len(current) >= 2 and current[-2].norm in lex.abbreviations:
            continue
        j = i
        while j < len(tokens) and tokens[j].kind == "emoticon":
            j += 1
        if j == len(tokens):
            continue
        nxt = tokens[j]
        prev_end = tokens[j - 1].span[1]
        first = nxt.surface[0]
        if nxt.span[0] > prev_end and (first.isupper() or not first.isalpha()):
            current.extend(tokens[i:j])
            sentences.append(current)
            current = []
            i = j
    if current:
        sentences.append(current)
    return sentences
