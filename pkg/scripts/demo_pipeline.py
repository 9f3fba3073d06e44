"""End-to-end run on a synthetic debate-style corpus.

Sarcastic posts draw more often from a small set of ironic phrasings;
not-sarcastic posts lean on argumentative ones; both share neutral filler.
Every stage goes through the command-line entry point, so the output
directory ends up holding the same files and manifests a real run would.

    python scripts/demo_pipeline.py [--out runs/demo] [--posts 300] [--seed 42]
"""

import argparse
import json
import random
from pathlib import Path

from sarcorpus.cli import main as cli

SARC = ["Thanks for {x}.", "Oh wait, I guess you know everything.", "Wow, what a {adj} idea.",
        "Ah yes, the famous {x}.", "Really? You must be a genius.", "I love it when people ignore {x}."]
NOTSARC = ["The majority of {x} support the theory.", "There is no evidence for {x}.",
           "The number of studies on {x} is growing.", "I support the second amendment.",
           "We should look at the data on {x}."]
FILLER = ["They posted a long reply about {x}.", "My neighbor read the article yesterday.",
          "Why does it matter? Because people vote.", "The debate went on for pages."]
X = ["evolution", "gun control", "the economy", "abortion", "marriage", "climate science"]
ADJ = ["brilliant", "great", "wonderful", "fantastic"]


def post(rng, own, other):
    parts = []
    for _ in range(rng.randint(2, 5)):
        r = rng.random()
        src = own if r < 0.45 else (other if r < 0.55 else FILLER)
        parts.append(rng.choice(src).format(x=rng.choice(X), adj=rng.choice(ADJ)))
    return " ".join(parts)


def make_corpus(path, n, seed):
    rng = random.Random(seed)
    with open(path, "w") as fh:
        for i in range(n):
            for lab, own, other in (("sarc", SARC, NOTSARC), ("notsarc", NOTSARC, SARC)):
                rec = {"id": f"{lab}-{i}", "parent_id": f"q-{lab}-{i}", "quote": "Quote text.",
                       "text": post(rng, own, other), "label": lab}
                fh.write(json.dumps(rec) + "\n")


def step(*argv):
    code = cli([str(a) for a in argv])
    if code:
        raise SystemExit(f"step {argv[0]} failed with exit code {code}")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="runs/demo")
    ap.add_argument("--posts", type=int, default=300, help="posts per class")
    ap.add_argument("--seed", type=int, default=42)
    a = ap.parse_args()
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    raw = out / "synthetic.jsonl"
    make_corpus(raw, a.posts, a.seed)

    seed = ("--seed", a.seed, "--out", out)
    step("ingest", raw, *seed)
    step("filter-length", out / "corpus.jsonl", "--min", 5, *seed)
    data = out / "filtered.jsonl"
    step("learn-patterns", data, *seed)
    step("report-patterns", out / "pattern_stats.tsv", "--top-k", 10, "--min-freq", 2, *seed)
    step("gridsearch", data, *seed)
    step("build-ns-filter", data, *seed)
    step("apply-filter", data, "--filter", out / "ns_filter.tsv", *seed)
    step("retrieve-cues", data, *seed)
    step("rq-candidates", data, *seed)
    step("crossval", data, *seed)
    step("learning-curve", data, "--step", 100, *seed)

    print((out / f"pattern_report_sarc.tsv").read_text())
    best = json.loads((out / "gridsearch_best.json").read_text())
    print("best precision config:", best["best_precision"])
    print((out / "eval_report.tsv").read_text())
    print((out / "learning_curve.csv").read_text())


if __name__ == "__main__":
    main()
