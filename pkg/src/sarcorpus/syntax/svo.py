"""Approximate subject-verb-object extraction over chunks.

This is a chunk-adjacency heuristic, not a dependency parse.  Output is
labelled approximate wherever it is reported.
"""

from __future__ import annotations

from .model import Chunk, Sentence, SvoTriple
from .tagger import DO_FORMS, MODALS

NEGATORS = frozenset({"not", "n't", "never", "cannot"})
_INVERTING = MODALS | DO_FORMS | frozenset({"have", "has", "had"})


def _is_neg(tok):
    return tok.norm in NEGATORS


def _inverted_aux(sent: Sentence, idx: int) -> bool:
    """Aux-only VP in question order: AUX [neg] NP VP ("can't you read")."""
    chunks = sent.chunks
    vp = chunks[idx]
    if vp.vp_infinitive or sent.tokens[vp.head].tag != "AUX":
        return False
    if sent.tokens[vp.head].norm not in _INVERTING:
        return False
    if idx + 2 >= len(chunks):
        return False
    np_, nxt = chunks[idx + 1], chunks[idx + 2]
    if np_.kind != "NP" or nxt.kind != "VP" or nxt.vp_infinitive:
        return False
    between = sent.tokens[vp.end:np_.start]
    return all(_is_neg(t) for t in between) and np_.end == nxt.start


def extract_svo(sent: Sentence) -> list[SvoTriple]:
    toks = sent.tokens
    chunks = sent.chunks
    skip: set[int] = set()
    carried_neg: dict[int, bool] = {}
    for idx, c in enumerate(chunks):
        if c.kind == "VP" and _inverted_aux(sent, idx):
            skip.add(idx)
            neg = any(_is_neg(t) for t in toks[c.start:chunks[idx + 1].start])
            carried_neg[idx + 2] = neg

    out = []
    for idx, c in enumerate(chunks):
        if c.kind != "VP" or c.vp_infinitive or idx in skip:
            continue
        negated = carried_neg.get(idx, False) or any(_is_neg(t) for t in toks[c.start:c.end])
        if c.start > 0 and _is_neg(toks[c.start - 1]):
            negated = True
        subject = None
        for j in range(idx - 1, -1, -1):
            prev: Chunk = chunks[j]
            if prev.kind == "VP":
                break
            if prev.kind == "NP":
                subject = toks[prev.head].lower
                break
        obj = None
        for j in range(idx + 1, len(chunks)):
            nxt = chunks[j]
            if nxt.kind in ("VP", "PP"):
                break
            if nxt.kind == "NP":
                obj = toks[nxt.head].lower
                break
        out.append(SvoTriple(toks[c.head].lower, negated, subject, obj))
    return out
