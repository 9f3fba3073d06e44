"""Rebuild the corpus-construction arithmetic from published counts.

Writes a first-round annotation file realizing the published vote totals,
aggregates it under the strict and relaxed rules, then assembles the three
balanced subcorpora from placeholder pools of the published sizes.

    python scripts/reproduce_counts.py [--out runs/counts]
"""

import argparse
import json
import random
from pathlib import Path

from sarcorpus.annotation import (GEN_RULE, RELAXED_GEN_RULE, SourceQuota, assemble_subcorpus, dump_annotations,
                                  AnnotationRecord, agreement_stats, sarcasm_ratio, verdict_counts)
from sarcorpus.corpus import Corpus, Label, Post, QuoteResponsePair

S, N = Label.SARCASTIC, Label.NOT_SARCASTIC

POSTED = 11040
STRICT = 2220
# posts at exactly 5/9; chosen so the relaxed ratio is as close to 31% as an integer allows
SET_ASIDE = 1202


def first_round(seed):
    rng = random.Random(seed)
    votes = ([rng.choice([6, 7, 8, 9]) for _ in range(STRICT)] + [5] * SET_ASIDE
             + [rng.randint(0, 4) for _ in range(POSTED - STRICT - SET_ASIDE)])
    rng.shuffle(votes)
    return [AnnotationRecord(f"p{i}", tuple((f"w{(i + j) % 40}", "sarc" if j < k else "notsarc") for j in range(9)))
            for i, k in enumerate(votes)]


def pool(prefix, n):
    return Corpus(tuple(QuoteResponsePair(Post(f"{prefix}{i}", "placeholder")) for i in range(n)))


SUBCORPORA = {
    "gen": [("round1_sarc", S, 2220), ("expert_sarc", S, 1040), ("legacy_notsarc", N, 2360), ("ns_filtered_out", N, 900)],
    # the split of the 357 heuristic posts between classes is not published; an even-as-possible split is assumed
    "rq": [("gen_heuristic_sarc", S, 179), ("gen_heuristic_notsarc", N, 178), ("cue_sarc", S, 672), ("cue_notsarc", N, 673)],
    "hyp": [("gen_sarc", S, 30), ("gen_notsarc", N, 30), ("cue_sarc", S, 552), ("cue_notsarc", N, 552)],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="runs/counts")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)

    recs = first_round(a.seed)
    dump_annotations(recs, out / "round1.jsonl")
    counts = verdict_counts(recs, GEN_RULE)
    strict = sarcasm_ratio(recs, GEN_RULE)
    relaxed = sarcasm_ratio(recs, RELAXED_GEN_RULE)
    print(f"first round: {len(recs)} posts, rule {GEN_RULE}")
    for v, n in sorted(counts.items(), key=lambda kv: kv[0].value):
        print(f"  {v.value:10s} {n}")
    print(f"  strict ratio  {strict} = {float(strict):.3f}")
    print(f"  relaxed ratio {relaxed} = {float(relaxed):.2f}  (rule {RELAXED_GEN_RULE})")
    print(f"  mean agreement with majority {agreement_stats(recs).mean:.3f} (synthetic votes, not a target)")

    summary = {}
    for name, spec in SUBCORPORA.items():
        sources = [SourceQuota(src, pool(f"{name}-{src}-", q), lab, q) for src, lab, q in spec]
        c, manifest = assemble_subcorpus(sources)
        summary[name] = manifest["class_counts"]
        print(f"{name}: {c.count(S)} per class, {len(c)} total")
    (out / "subcorpora.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
