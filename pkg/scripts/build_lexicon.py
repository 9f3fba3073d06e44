"""Regenerate the shipped open-class lexicon (src/sarcorpus/data/lexicon.tsv).

Inputs are the Brill tagger lexicon (one ``word TAG`` pair per line, Penn
tags) and a word-frequency list (``word count`` per line).  Both ship with
the TextBlob wheel as ``textblob/en/en-lexicon.txt`` and
``textblob/en/en-spelling.txt``.

Usage:
    python scripts/build_lexicon.py BRILL_LEXICON FREQ_LIST [--size 5000]

The closed-class file (data/closed.tsv) is hand-maintained and is NOT
produced here; at load time it overrides anything in lexicon.tsv.
"""

import argparse
import re
import sys
from pathlib import Path

PENN_TO_TAG = {
    "DT": "DET", "PDT": "DET", "WDT": "DET",
    "NN": "NOUN", "NNS": "NOUN", "NNP": "NOUN", "NNPS": "NOUN", "FW": "NOUN", "CD": "NOUN",
    "PRP": "PRON", "WP": "PRON", "EX": "PRON",
    "PRP$": "POSS", "WP$": "POSS", "POS": "POSS",
    "VB": "VERB", "VBD": "VERB", "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB",
    "MD": "AUX",
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "RB": "ADV", "RBR": "ADV", "RBS": "ADV", "WRB": "ADV", "RP": "ADV", "UH": "ADV",
    "IN": "PREP", "TO": "PREP",
    "CC": "OTHER",
}

WORD = re.compile(r"^[a-z][a-z'-]*$")


def read_brill(path):
    lex = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) != 2:
                continue
            word, penn = parts
            # lowercase entries only; capitalised duplicates are proper-noun readings
            if word != word.lower() or penn not in PENN_TO_TAG:
                continue
            lex.setdefault(word, penn)
    return lex


def read_freq(path):
    freq = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) == 2 and parts[1].isdigit():
                freq[parts[0].lower()] = freq.get(parts[0].lower(), 0) + int(parts[1])
    return freq


def verb_forms(word):
    stems = {word}
    if word.endswith("e"):
        stems.add(word[:-1])
    if len(word) > 2 and word[-1] not in "aeiouwy" and word[-2] in "aeiou":
        stems.add(word + word[-1])
    return {s + suf for s in stems for suf in ("ed", "ing")}


def alternate_reading(word, tag, brill):
    """Second reading inferred from inflected forms seen in the lexicon."""
    if tag == "NOUN":
        if any(brill.get(f, "").startswith("VB") for f in verb_forms(word)):
            return "VERB"
    elif tag == "VERB" and brill.get(word, "") in ("VB", "VBP"):
        plural = word + ("es" if word.endswith(("s", "sh", "ch", "x")) else "s")
        if brill.get(plural) == "NNS":
            return "NOUN"
    return None


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("brill")
    ap.add_argument("freq")
    ap.add_argument("--size", type=int, default=5000)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "src/sarcorpus/data/lexicon.tsv"))
    args = ap.parse_args(argv)

    brill = read_brill(args.brill)
    freq = read_freq(args.freq)
    ranked = sorted((w for w in brill if WORD.match(w) and w in freq), key=lambda w: (-freq[w], w))
    chosen = sorted(ranked[: args.size])

    with open(args.out, "w", encoding="utf-8") as out:
        out.write("# Derived from the Brill tagger lexicon v1.14 (MIT license, (c) 1993 MIT and\n")
        out.write("# the University of Pennsylvania), top words by frequency; see scripts/build_lexicon.py\n")
        for w in chosen:
            tag = PENN_TO_TAG[brill[w]]
            out.write(f"{w}\t{tag}\n")
            alt = alternate_reading(w, tag, brill)
            if alt:
                out.write(f"{w}\t{alt}\n")
    print(f"wrote {len(chosen)} words to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
