"""Greedy NP/VP/PP chunker.

PP chunks cover only the preposition; its object is the following NP chunk,
which keeps every chunk disjoint.
"""

from __future__ import annotations

from .lexicon import Lexicon, load_lexicon
from .model import Chunk, Sentence, Token
from .tagger import BE_FORMS, GET_FORMS, is_participle

PASSIVE_AUX = BE_FORMS | GET_FORMS


def _skip_adv(tags, k):
    while k < len(tags) and tags[k] == "ADV":
        k += 1
    return k


def _vp_core(tokens, tags, j, lex):
    """Consume [ADV] AUX* [ADV] main-verb? starting at j.  Returns
    (end, aux_indices, main_index) or None."""
    n = len(tokens)
    auxes: list[int] = []
    main = None
    k = j
    while k < n:
        tag = tags[k]
        if tag == "ADV" and tokens[k].kind == "word":
            nxt = _skip_adv(tags, k)
            if nxt < n and (tags[nxt] in ("AUX", "VERB") or (
                auxes and tokens[auxes[-1]].norm in PASSIVE_AUX and is_participle(tokens[nxt], lex)
                and tags[nxt] == "ADJ"
            )):
                k = nxt
                continue
            break
        if tag == "AUX":
            auxes.append(k)
            k += 1
            continue
        if tag == "VERB":
            nxt = _skip_adv(tags, k + 1)
            if (tokens[k].norm in GET_FORMS and nxt < n and tags[nxt] == "VERB"
                    and is_participle(tokens[nxt], lex)):
                auxes.append(k)
                k = nxt
                continue
            main = k
            k += 1
            break
        if tag == "ADJ" and auxes and tokens[auxes[-1]].norm in PASSIVE_AUX and is_participle(tokens[k], lex):
            main = k
            k += 1
            break
        break
    if not auxes and main is None:
        return None
    return k, auxes, main


def _vp_at(tokens, tags, i, lex):
    start = i
    infinitive = False
    if tokens[i].norm == "to" and tags[i] == "PREP":
        k = _skip_adv(tags, i + 1)
        if k >= len(tokens) or tags[k] not in ("VERB", "AUX"):
            return None
        infinitive = True
        i += 1
    elif tags[i] == "ADV":
        k = _skip_adv(tags, i)
        if k >= len(tokens) or tags[k] not in ("VERB", "AUX"):
            return None
    core = _vp_core(tokens, tags, i, lex)
    if core is None:
        return None
    end, auxes, main = core
    head = main if main is not None else auxes[-1]
    passive = (
        main is not None
        and is_participle(tokens[main], lex)
        and any(tokens[a].norm in PASSIVE_AUX for a in auxes)
    )
    before_head = [a for a in auxes if a < head]
    return Chunk(
        "VP", start, end, head,
        vp_voice="PASSIVE" if passive else "ACTIVE",
        vp_infinitive=infinitive,
        vp_has_aux=bool(before_head),
    )


def _np_at(tokens, tags, i):
    n = len(tokens)
    if tags[i] == "PRON":
        return Chunk("NP", i, i + 1, i)
    k = i
    while k < n and tags[k] in ("DET", "POSS") and tokens[k].kind == "word":
        k += 1
        if tags[k - 1] == "POSS":
            break
    has_det = k > i
    body_start = k
    last_noun = None
    last_adj = None
    while k < n:
        if tags[k] == "NOUN":
            last_noun = k
        elif tags[k] == "ADJ":
            last_adj = k
        elif tags[k] == "ADV" and k > i and k + 1 < n and tags[k + 1] == "ADJ":
            pass
        else:
            break
        k += 1
    if last_noun is not None:
        # trailing adjectives after the last noun are predicative, not part of the NP
        return Chunk("NP", i, last_noun + 1, last_noun)
    if has_det:
        if last_adj is not None:
            return Chunk("NP", i, last_adj + 1, last_adj)
        return Chunk("NP", i, body_start, body_start - 1)
    return None


def chunk(tokens: list[Token] | Sentence, lexicon: Lexicon | None = None) -> Sentence:
    lex = lexicon or load_lexicon()
    if isinstance(tokens, Sentence):
        tokens = list(tokens.tokens)
    tags = [t.tag for t in tokens]
    chunks: list[Chunk] = []
    i = 0
    n = len(tokens)
    while i < n:
        tag = tags[i]
        c = None
        if tag in ("VERB", "AUX", "ADV") or tokens[i].norm == "to":
            c = _vp_at(tokens, tags, i, lex)
        if c is None and tag in ("DET", "POSS", "ADJ", "NOUN", "PRON"):
            c = _np_at(tokens, tags, i)
        if c is None and tag == "PREP":
            c = Chunk("PP", i, i + 1, i)
        if c is None:
            i += 1
            continue
        chunks.append(c)
        i = c.end
    return Sentence(tuple(tokens), tuple(chunks))
