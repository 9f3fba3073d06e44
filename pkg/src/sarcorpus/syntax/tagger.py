"""Rule-based POS tagger over the fixed 12-tag set.

Lexical lookup (closed classes, then the open lexicon), then suffix rules,
then NOUN.  A small contextual pass afterwards picks between a word's
listed readings (noun/verb after "to", "her" as POSS or PRON, ...).
"""

from __future__ import annotations

import re

from .lexicon import Lexicon, load_lexicon
from .model import Token

SUFFIX_RULES = (
    ("ly", "ADV"),
    ("ing", "VERB"),
    ("ed", "VERB"),
    ("ous", "ADJ"),
    ("ful", "ADJ"),
    ("ive", "ADJ"),
    ("able", "ADJ"),
    ("ible", "ADJ"),
    ("less", "ADJ"),
    ("ish", "ADJ"),
    ("ic", "ADJ"),
    ("al", "ADJ"),
    ("est", "ADJ"),
    ("tion", "NOUN"),
    ("sion", "NOUN"),
    ("ment", "NOUN"),
    ("ness", "NOUN"),
    ("ity", "NOUN"),
    ("ism", "NOUN"),
    ("ist", "NOUN"),
    ("ary", "ADJ"),
    ("ize", "VERB"),
    ("ise", "VERB"),
)

BE_FORMS = frozenset("be am is are was were been being 'm 're".split())
GET_FORMS = frozenset("get gets got gotten getting".split())
HAVE_FORMS = frozenset("have has had having 've".split())
DO_FORMS = frozenset("do does did".split())
MODALS = frozenset("can could will would shall should may might must ca wo 'll 'd ought cannot gonna".split())
SUBJECT_PRONOUNS = frozenset("i you we they he she it u ya".split())
# adverbs that open a clause; context rules do not look past them
CLAUSE_ADVERBS = frozenset("when where why how while whenever wherever".split())
_ELONGATED = re.compile(r"(.)\1{2,}")
_NUMBER = re.compile(r"^[\d.,/:-]+$")


def _readings(word: str, lex: Lexicon) -> tuple[str, ...]:
    tags = lex.tags(word)
    if tags:
        return tags
    if _ELONGATED.search(word):
        # "soooooo" -> "soo" -> "so"
        for repl in (r"\1\1", r"\1"):
            tags = lex.tags(_ELONGATED.sub(repl, word))
            if tags:
                return tags
    if _NUMBER.match(word):
        return ("NOUN",)
    if "-" in word:
        return _readings(word.rsplit("-", 1)[1], lex) if not word.endswith("-") else ("NOUN",)
    for suffix, tag in SUFFIX_RULES:
        if word.endswith(suffix) and len(word) > len(suffix) + 2:
            return (tag,)
    if word.endswith("s") and len(word) > 3:
        stem = lex.tags(word[:-1]) or (lex.tags(word[:-2]) if word.endswith("es") else ())
        if stem and "VERB" in stem:
            return ("NOUN", "VERB")
    # unknown: noun unless context calls for a verb
    return ("NOUN", "VERB")


def is_participle(tok: Token, lex: Lexicon | None = None) -> bool:
    lex = lex or load_lexicon()
    w = tok.norm
    return tok.kind == "word" and (w in lex.participles or (w.endswith("ed") and len(w) > 3))


def pos_tag(tokens: list[Token], lexicon: Lexicon | None = None) -> list[Token]:
    lex = lexicon or load_lexicon()
    readings = [
        (tok.tag,) if tok.kind != "word" else _readings(tok.norm, lex)
        for tok in tokens
    ]
    tags = [r[0] for r in readings]
    n = len(tokens)

    def prev_word(i):
        j = i - 1
        while j >= 0 and tags[j] == "ADV" and tokens[j].kind == "word" and tokens[j].norm not in CLAUSE_ADVERBS:
            j -= 1
        return j

    for i, tok in enumerate(tokens):
        if tok.kind != "word":
            continue
        w = tok.norm
        alts = readings[i]
        nxt = tags[i + 1] if i + 1 < n else None
        prev = tags[i - 1] if i > 0 else None
        p = prev_word(i)
        pw = tokens[p].norm if p >= 0 else None

        if w == "'s":
            if pw in ("let",):
                tags[i] = "PRON"
            elif p >= 0 and (tags[p] in ("PRON", "DET", "OTHER") or pw in ("there", "here", "that", "what", "who", "where", "how")):
                tags[i] = "AUX"
            else:
                tags[i] = "POSS"
        elif w == "her":
            tags[i] = "POSS" if nxt in ("NOUN", "ADJ") else "PRON"
        elif w == "that":
            tags[i] = "DET" if nxt in ("NOUN", "ADJ", "AUX", None, "PUNCT_RUN") else "OTHER"
        elif w in ("there",) and prev == "PREP":
            tags[i] = "ADV"
        elif tags[i] in ("NOUN", "ADJ") and "VERB" in alts and p >= 0 and (
            pw == "to" or pw in MODALS | DO_FORMS or pw in SUBJECT_PRONOUNS
            or (tags[p] == "AUX" and nxt != "NOUN")
        ):
            tags[i] = "VERB"
        elif tags[i] == "NOUN" and "VERB" in alts and prev == "NOUN" and nxt in ("DET", "POSS", "PRON"):
            tags[i] = "VERB"
        elif (tags[i] == "NOUN" and "VERB" in alts and prev == "NOUN" and not w.endswith("s")
              and (tokens[i - 1].norm == "people" or tokens[i - 1].norm.endswith("s"))
              and nxt in ("NOUN", "ADJ")):
            # plural subject + bare verb: "people ignore evolution"
            tags[i] = "VERB"
        elif tags[i] == "VERB" and "NOUN" in alts and prev in ("DET", "POSS", "ADJ"):
            tags[i] = "NOUN"
        elif tags[i] == "ADJ" and p >= 0 and (tokens[p].norm in BE_FORMS | GET_FORMS) and is_participle(tok, lex):
            tags[i] = "VERB"
        elif tags[i] in ("NOUN", "ADJ") and "VERB" in alts and nxt in ("DET", "POSS", "PRON", "PREP") and (
            i == 0 or (i <= 3 and tokens[i - 1].surface == "," and all(t in ("ADV", "ADJ") for t in tags[:i - 1]))
        ):
            # imperative at the start, possibly after "Excellent," or "Oh well,"
            tags[i] = "VERB"
    return [tok.with_tag(t) for tok, t in zip(tokens, tags)]
