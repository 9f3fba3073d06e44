"""Command-line entry point.

Every subcommand takes ``--seed``, ``--format``, ``--out`` and ``--config``.
The config file is TOML: top-level keys set option defaults for any
subcommand that has them, and a ``[subcommand]`` table overrides those for
that subcommand only.  Keys use option names (``theta-f`` or ``theta_f``).
Explicit command-line flags win over the config.

Each successful run writes ``<out>/<subcommand>.manifest.json`` recording
inputs (with SHA-256 digests), resolved options, seed, versions and the
output files.  Exit codes: 0 ok, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .annotation import (AggregationRule, SourceQuota, agreement_stats, aggregate, assemble_subcorpus,
                         load_annotations, parse_rule, sarcasm_ratio, score_qualifier, verdict_counts,
                         write_manifest)
from .corpus import DataError, Label, load_corpus, save_corpus, word_count_filter
from .cues import load_cues, retrieve, rq_candidates, sample_batches, cue_stats, write_cue_stats
from .patterns import (ALL_TEMPLATES, BASE_TEMPLATES, count_patterns, emit_pattern_report,
                       read_pattern_set, read_stats, threshold_patterns, write_pattern_set, write_stats)
from .syntax import syntax_version
from .syntax.lexicon import LEXICON_ENV

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


class UsageError(Exception):
    pass


def _digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def _templates(name: str) -> frozenset:
    return BASE_TEMPLATES if name == "base" else ALL_TEMPLATES


def _label(text: str) -> Label:
    try:
        return Label.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _rule(text: str) -> AggregationRule:
    try:
        return parse_rule(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad rule {text!r}: {e}") from None


def _floats(text: str) -> tuple:
    return tuple(float(x) for x in text.split(","))


def _ints(text: str) -> tuple:
    return tuple(int(x) for x in text.split(","))


class Run:
    """Collects inputs and outputs of one invocation for the manifest."""

    def __init__(self, args):
        self.args = args
        self.out = Path(args.out)
        self.out.mkdir(parents=True, exist_ok=True)
        self.inputs: dict = {}
        self.outputs: list = []
        self.summary: dict = {}

    def input(self, path):
        self.inputs[str(path)] = _digest(path)
        return path

    def output(self, name: str) -> Path:
        p = self.out / name
        self.outputs.append(str(p))
        return p

    def corpus(self, path):
        return load_corpus(self.input(path), self.args.format)

    def manifest(self) -> dict:
        cfg = {k: _jsonable(v) for k, v in sorted(vars(self.args).items()) if k not in ("func", "command")}
        return {
            "subcommand": self.args.command,
            "config": cfg,
            "inputs": self.inputs,
            "seed": self.args.seed,
            "tool_version": __version__,
            "syntax_version": syntax_version(),
            "outputs": self.outputs,
            "summary": self.summary,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }


def _jsonable(v):
    if isinstance(v, Label):
        return v.value
    if isinstance(v, AggregationRule):
        return str(v)
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Path):
        return str(v)
    return v


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


# -- corpus ---------------------------------------------------------------

def cmd_ingest(run: Run, a):
    c = run.corpus(a.input)
    save_corpus(c, run.output("corpus.jsonl"))
    run.summary = {"posts": len(c), "class_counts": {(k.value if k else "unlabeled"): v for k, v in c.class_counts.items()}}


def cmd_filter_length(run: Run, a):
    c = run.corpus(a.input)
    kept = word_count_filter(c, a.min, a.max)
    save_corpus(kept, run.output("filtered.jsonl"))
    run.summary = {"input": len(c), "kept": len(kept)}


# -- patterns -------------------------------------------------------------

def cmd_learn_patterns(run: Run, a):
    c = run.corpus(a.input)
    s = count_patterns(c, _templates(a.templates))
    write_stats(s, run.output("pattern_stats.tsv"))
    run.summary = {"patterns": len(s)}


def cmd_threshold(run: Run, a):
    s = read_stats(run.input(a.stats))
    pats = threshold_patterns(s, a.label, a.theta_f, a.theta_p)
    write_pattern_set(run.output(f"patterns_{a.label.value}.tsv"), pats, s, a.label)
    run.summary = {"patterns": len(pats)}


def cmd_report_patterns(run: Run, a):
    s = read_stats(run.input(a.stats))
    rows = emit_pattern_report(s, a.label, a.sort, a.top_k, a.min_freq)
    with open(run.output(f"pattern_report_{a.label.value}.tsv"), "w", encoding="utf-8") as fh:
        fh.write("prob\tfreq\ttemplate_id\tanchor\tsample_post\n")
        for r in rows:
            fh.write(f"{r.prob:.2f}\t{r.freq}\t{r.template_id}\t{r.anchor}\t{r.sample_post or ''}\n")
    run.summary = {"rows": len(rows)}


def cmd_classify_weak(run: Run, a):
    from .weak import WeakDetector, classify
    c = run.corpus(a.input)
    det = WeakDetector(a.label, read_pattern_set(run.input(a.patterns)), a.theta_n, _templates(a.templates))
    hits = 0
    with open(run.output("weak_predictions.tsv"), "w", encoding="utf-8") as fh:
        fh.write("id\tdecision\tmatch_sites\n")
        for p in c:
            d = classify(p, det)
            hits += d == "HIT"
            fh.write(f"{p.id}\t{d}\t{det.match_sites(p.text)}\n")
    run.summary = {"posts": len(c), "hits": hits}


def cmd_gridsearch(run: Run, a):
    from .weak import grid_search, train_dev_split, write_points_csv
    c = run.corpus(a.input)
    if a.dev:
        train, dev = c, run.corpus(a.dev)
    else:
        train, dev = train_dev_split(c, 1 - a.dev_frac, a.seed)
    res = grid_search(train, dev, a.label, a.theta_f, a.theta_p, a.theta_n, _templates(a.templates))
    write_points_csv(res.points, run.output("gridsearch_points.csv"))
    write_points_csv(res.frontier, run.output("gridsearch_frontier.csv"))

    def pt(p):
        if p is None:
            return None
        return {"theta_f": p.config.theta_f, "theta_p": p.config.theta_p, "theta_n": p.config.theta_n,
                "precision": p.precision, "recall": p.recall, "f1": p.f1, "patterns": p.n_patterns}
    best = {"label": a.label.value, "train": len(train), "dev": len(dev),
            "best_precision": pt(res.best_precision), "best_f1": pt(res.best_f1), "flags": res.flags}
    _write_json(run.output("gridsearch_best.json"), best)
    for f in res.flags:
        print(f"warning: {f}", file=sys.stderr)
    run.summary = {"points": len(res.points), "frontier": len(res.frontier)}


def cmd_build_ns_filter(run: Run, a):
    from .weak import build_ns_filter
    c = run.corpus(a.input)
    s = count_patterns(c, _templates(a.templates))
    d = build_ns_filter(s, a.theta_f, a.theta_p, _templates(a.templates))
    write_pattern_set(run.output("ns_filter.tsv"), d.patterns, s, Label.NOT_SARCASTIC)
    run.summary = {"patterns": len(d.patterns)}


def cmd_apply_filter(run: Run, a):
    from .weak import WeakDetector, apply_filter
    c = run.corpus(a.input)
    d = WeakDetector(Label.NOT_SARCASTIC, read_pattern_set(run.input(a.filter)), 1, _templates(a.templates))
    kept, removed = apply_filter(c, d)
    save_corpus(kept, run.output("kept.jsonl"))
    save_corpus(removed, run.output("removed.jsonl"))
    run.summary = {"input": len(c), "kept": len(kept), "removed": len(removed)}


# -- cues -----------------------------------------------------------------

def _cues(run: Run, path):
    return load_cues(run.input(path) if path else None)


def cmd_retrieve_cues(run: Run, a):
    c = run.corpus(a.input)
    cues = _cues(run, a.cues)
    m = retrieve(c, cues, a.max_words)
    _write_json(run.output("cue_matches.json"), m)
    run.summary = {"found": {k: len(v) for k, v in m.items()}}


def cmd_rq_candidates(run: Run, a):
    c = run.corpus(a.input)
    ids = rq_candidates(c)
    run.output("rq_candidates.txt").write_text("".join(i + "\n" for i in ids), encoding="utf-8")
    run.summary = {"posts": len(c), "candidates": len(ids)}


def _read_matches(run: Run, path) -> dict:
    try:
        with open(run.input(path), encoding="utf-8") as fh:
            m = json.load(fh)
    except json.JSONDecodeError as e:
        raise DataError(f"{path}: {e}") from None
    if not isinstance(m, dict) or not all(isinstance(v, list) for v in m.values()):
        raise DataError(f"{path}: expected an object mapping cue -> list of post ids")
    return m


def cmd_sample_batches(run: Run, a):
    m = _read_matches(run, a.matches)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        batches = sample_batches(m, a.batch_size, a.seed)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    with open(run.output("batches.jsonl"), "w", encoding="utf-8") as fh:
        for i, b in enumerate(batches):
            fh.write(json.dumps({"batch": i, "post_ids": list(b.post_ids), "cues": list(b.cues)}) + "\n")
    run.summary = {"batches": len(batches), "single_cue_batches": len(caught)}


def cmd_cue_stats(run: Run, a):
    m = _read_matches(run, a.matches)
    recs = load_annotations(run.input(a.annotations))
    rows = cue_stats(m, recs, a.rule)
    hints = {c.name: c.class_hint for c in _cues(run, a.cues)}
    write_cue_stats(rows, run.output("cue_stats.tsv"), {k: v for k, v in hints.items() if k in m})
    run.summary = {"cues": len(rows)}


# -- annotation -----------------------------------------------------------

def cmd_qualify(run: Run, a):
    try:
        gold = json.loads(Path(run.input(a.gold)).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise DataError(f"{a.gold}: {e}") from None
    results = []
    with open(run.input(a.submissions), encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                results.append((str(rec["annotator"]), score_qualifier(gold, rec.get("answers", {}))))
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise DataError(f"{a.submissions}: line {n}: {e}") from None
            except ValueError as e:
                raise DataError(f"line {n}: {e}") from None
    with open(run.output("qualifier.tsv"), "w", encoding="utf-8") as fh:
        fh.write("annotator\tcorrect\ttotal\tscore\tresult\n")
        for who, r in results:
            fh.write(f"{who}\t{r.correct}\t{r.total}\t{r.score:.2f}\t{'PASS' if r.passed else 'FAIL'}\n")
    run.summary = {"annotators": len(results), "passed": sum(r.passed for _, r in results)}


def cmd_aggregate(run: Run, a):
    recs = load_annotations(run.input(a.annotations))
    with open(run.output("aggregated.tsv"), "w", encoding="utf-8") as fh:
        fh.write("post_id\tsarc_votes\tjudgments\tverdict\n")
        for r in recs:
            fh.write(f"{r.post_id}\t{r.sarc_count}\t{len(r)}\t{aggregate(r, a.rule).value}\n")
    counts = verdict_counts(recs, a.rule)
    ratio = sarcasm_ratio(recs, a.rule)
    summary = {
        "rule": str(a.rule),
        "posts": len(recs),
        "verdicts": {v.value: n for v, n in sorted(counts.items(), key=lambda kv: kv[0].value)},
        "sarcasm_ratio": None if ratio is None else f"{ratio.numerator}/{ratio.denominator}",
        "sarcasm_ratio_float": None if ratio is None else round(float(ratio), 6),
    }
    if a.relaxed is not None:
        rr = sarcasm_ratio(recs, a.relaxed)
        summary["relaxed_rule"] = str(a.relaxed)
        summary["relaxed_ratio_float"] = None if rr is None else round(float(rr), 6)
    if ratio is None:
        print("warning: no annotation records; ratio undefined", file=sys.stderr)
    _write_json(run.output("aggregate_summary.json"), summary)
    run.summary = summary


def cmd_agreement(run: Run, a):
    st = agreement_stats(load_annotations(run.input(a.annotations)))
    with open(run.output("agreement.tsv"), "w", encoding="utf-8") as fh:
        fh.write("annotator\tjudgments\tagreement\n")
        for who, v in st.per_annotator.items():
            fh.write(f"{who}\t{st.judgments[who]}\t{v:.4f}\n")
        fh.write(f"MEAN\t\t{'' if st.mean is None else f'{st.mean:.4f}'}\n")
    run.summary = {"annotators": len(st.per_annotator), "mean": st.mean, "tied_posts_excluded": st.excluded_posts}


def cmd_assemble(run: Run, a):
    try:
        plan = json.loads(Path(run.input(a.plan)).read_text(encoding="utf-8"))
        base = Path(a.plan).parent
        sources = []
        for s in plan["sources"]:
            path = Path(s["corpus"])
            path = path if path.is_absolute() else base / path
            pool = load_corpus(run.input(path), s.get("format", a.format))
            if "ids" in s:
                pool = pool.subset(s["ids"])
            sources.append(SourceQuota(s["name"], pool, Label.parse(s["label"]), int(s["quota"])))
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise DataError(f"{a.plan}: bad assembly plan ({e})") from None
    corpus, manifest = assemble_subcorpus(sources, a.seed if a.sample else None)
    save_corpus(corpus, run.output("subcorpus.jsonl"))
    write_manifest(manifest, run.output("assembly_manifest.json"))
    run.summary = {"class_counts": manifest["class_counts"]}


# -- supervised -----------------------------------------------------------

def _feature_args(a):
    from .supervised import FeatureConfig, SGDConfig, load_embeddings
    fc = FeatureConfig(ngrams=a.features in ("ngrams", "both"), embeddings=a.features in ("w2v", "both"),
                       n_max=a.n_max, min_df=a.min_df)
    hp = SGDConfig(l2_lambda=a.l2_lambda, epochs=a.epochs, eta0=a.eta0, power_t=a.power_t, seed=a.seed)
    table = None
    if fc.embeddings:
        if not a.embeddings:
            raise UsageError("--embeddings FILE is required for w2v features")
        table = load_embeddings(a.embeddings)
    return fc, hp, table


def cmd_train_svm(run: Run, a):
    import numpy as np
    from .supervised import Featurizer, train
    from .supervised.evaluate import to_sign
    fc, hp, table = _feature_args(a)
    if table is not None:
        run.input(a.embeddings)
    c = run.corpus(a.input)
    if not c.is_labeled():
        raise DataError("train-svm needs a fully labeled corpus")
    feat = Featurizer(fc, table)
    X = feat.fit_transform([p.text for p in c])
    model = train(X, np.array([to_sign(p.label) for p in c]), hp)
    names = feat.vocab.feature_names() if feat.vocab is not None else []
    names += [f"emb_{i}" for i in range(X.shape[1] - len(names))]
    _write_json(run.output("model.json"), {
        "features": fc.name, "n_max": fc.n_max, "hyperparams": hp.to_dict(),
        "bias": model.bias, "objective_history": model.history,
        "weights": {n: float(w) for n, w in zip(names, model.weights) if w != 0.0},
    })
    acc = float(np.mean(model.predict(X) == np.array([to_sign(p.label) for p in c])))
    run.summary = {"train_accuracy": acc, "features": X.shape[1]}


def cmd_crossval(run: Run, a):
    from .supervised import cross_validate
    fc, hp, table = _feature_args(a)
    if table is not None:
        run.input(a.embeddings)
    rep = cross_validate(run.corpus(a.input), a.k, fc, hp, a.seed, table)
    rep.write_json(run.output("eval_report.json"))
    rep.write_tsv(run.output("eval_report.tsv"))
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    run.summary = {"f_sarc": rep.f1(Label.SARCASTIC), "f_notsarc": rep.f1(Label.NOT_SARCASTIC)}


def cmd_learning_curve(run: Run, a):
    from .supervised import learning_curve, write_curve_csv
    fc, hp, table = _feature_args(a)
    if table is not None:
        run.input(a.embeddings)
    c = run.corpus(a.input)
    try:
        pts = learning_curve(c, a.step, fc, hp, a.k, a.seed, table)
    except ValueError as e:
        raise DataError(str(e)) from None
    write_curve_csv(pts, run.output("learning_curve.csv"))
    run.summary = {"points": len(pts)}


# -- parser ---------------------------------------------------------------

def _common(p):
    p.add_argument("--seed", type=int, default=42, help="seed for all randomness (default 42)")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl", help="corpus input format")
    p.add_argument("--out", default=".", help="output directory (default: current)")
    p.add_argument("--config", help="TOML config file")


def _thresholds(p, f=2, pr=0.75):
    p.add_argument("--theta-f", type=int, default=f, help="minimum pattern frequency")
    p.add_argument("--theta-p", type=float, default=pr, help="minimum class probability")


def _templ(p):
    p.add_argument("--templates", choices=("all", "base"), default="all",
                   help="'base' leaves out the ADV_ADV template")


def _supervised(p):
    p.add_argument("input")
    p.add_argument("--features", choices=("ngrams", "w2v", "both"), default="ngrams")
    p.add_argument("--embeddings", help="plain-text word vectors")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--min-df", type=int, default=1)
    p.add_argument("--l2-lambda", type=float, default=1e-4)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--eta0", type=float, default=0.1)
    p.add_argument("--power-t", type=float, default=0.5)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sarcorpus", description="Sarcasm corpus construction and classification toolkit.",
                                 epilog=f"Lexicon directory override: ${LEXICON_ENV}")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func, help):
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        _common(p)
        return p

    p = add("ingest", cmd_ingest, "validate a corpus and write canonical JSON lines")
    p.add_argument("input")
    p = add("filter-length", cmd_filter_length, "keep posts within a word-count range (inclusive)")
    p.add_argument("input")
    p.add_argument("--min", type=int, default=10)
    p.add_argument("--max", type=int, default=150)

    p = add("learn-patterns", cmd_learn_patterns, "count lexico-syntactic patterns per class")
    p.add_argument("input")
    _templ(p)
    p = add("threshold", cmd_threshold, "select patterns by frequency and class probability")
    p.add_argument("stats")
    p.add_argument("--label", type=_label, default=Label.SARCASTIC)
    _thresholds(p)
    p = add("report-patterns", cmd_report_patterns, "ranked pattern table for one class")
    p.add_argument("stats")
    p.add_argument("--label", type=_label, default=Label.SARCASTIC)
    p.add_argument("--sort", choices=("prob", "freq"), default="prob")
    p.add_argument("--top-k", type=int)
    p.add_argument("--min-freq", type=int, default=1)
    p = add("classify-weak", cmd_classify_weak, "label posts HIT/ABSTAIN with a pattern set")
    p.add_argument("input")
    p.add_argument("--patterns", required=True)
    p.add_argument("--label", type=_label, default=Label.SARCASTIC)
    p.add_argument("--theta-n", type=int, default=1)
    _templ(p)
    p = add("gridsearch", cmd_gridsearch, "precision/recall over a theta_f x theta_p x theta_n grid")
    p.add_argument("input")
    p.add_argument("--dev", help="separate dev corpus (otherwise a stratified split)")
    p.add_argument("--dev-frac", type=float, default=0.2)
    p.add_argument("--label", type=_label, default=Label.SARCASTIC)
    p.add_argument("--theta-f", type=_ints, default=(2, 3, 4, 5, 6), help="comma list")
    p.add_argument("--theta-p", type=_floats, default=(0.60, 0.65, 0.70, 0.75, 0.80, 0.85), help="comma list")
    p.add_argument("--theta-n", type=_ints, default=(1, 2, 3), help="comma list")
    _templ(p)
    p = add("build-ns-filter", cmd_build_ns_filter, "learn the high-precision not-sarcastic filter")
    p.add_argument("input")
    _thresholds(p, 2, 0.75)
    _templ(p)
    p = add("apply-filter", cmd_apply_filter, "split a corpus into kept and removed posts")
    p.add_argument("input")
    p.add_argument("--filter", required=True, help="pattern set from build-ns-filter")
    _templ(p)

    p = add("retrieve-cues", cmd_retrieve_cues, "find posts matching each cue")
    p.add_argument("input")
    p.add_argument("--cues", help="cue file (default: packaged cues)")
    p.add_argument("--max-words", type=int, default=150)
    p = add("rq-candidates", cmd_rq_candidates, "posts with a mid-post question followed by a statement")
    p.add_argument("input")
    p = add("sample-batches", cmd_sample_batches, "mix cue matches into annotation batches")
    p.add_argument("matches", help="cue_matches.json")
    p.add_argument("--batch-size", type=int, default=20)
    p = add("cue-stats", cmd_cue_stats, "found / annotated / percent sarcastic per cue")
    p.add_argument("matches")
    p.add_argument("annotations")
    p.add_argument("--rule", type=_rule, default=AggregationRule(3, 5))
    p.add_argument("--cues", help="cue file for class hints")

    p = add("qualify", cmd_qualify, "score qualifier submissions")
    p.add_argument("gold", help="JSON object item -> label")
    p.add_argument("submissions", help='JSON lines {"annotator":..., "answers":{item: label}}')
    p = add("aggregate", cmd_aggregate, "aggregate judgments per post")
    p.add_argument("annotations")
    p.add_argument("--rule", type=_rule, default=AggregationRule(6, 9, 5), help="k/n[:set_aside]")
    p.add_argument("--relaxed", type=_rule, help="second rule for a relaxed ratio, e.g. 5/9")
    p = add("agreement", cmd_agreement, "per-annotator agreement with the majority")
    p.add_argument("annotations")
    p = add("assemble", cmd_assemble, "build a balanced subcorpus from labeled pools")
    p.add_argument("plan", help='JSON {"sources":[{"name","corpus","label","quota"}]}')
    p.add_argument("--sample", action="store_true", help="seeded sample instead of the first quota posts")

    p = add("train-svm", cmd_train_svm, "train the linear SVM on a labeled corpus")
    _supervised(p)
    p = add("crossval", cmd_crossval, "k-fold cross-validation report")
    _supervised(p)
    p.add_argument("--k", type=int, default=10)
    p = add("learning-curve", cmd_learning_curve, "F per class at growing training sizes")
    _supervised(p)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--step", type=int, default=100)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        with open(known.config, "rb") as fh:
            cfg = tomllib.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read config: {e}") from None
    except tomllib.TOMLDecodeError as e:
        raise UsageError(f"bad config: {e}") from None
    subs = next(a for a in ap._actions if isinstance(a, argparse._SubParsersAction)).choices
    top = {k: v for k, v in cfg.items() if not isinstance(v, dict)}
    for name, sp in subs.items():
        dests = {a.dest: a for a in sp._actions}
        vals = {k.replace("-", "_"): v for k, v in top.items() if k.replace("-", "_") in dests}
        section = cfg.get(name, {})
        for k, v in section.items():
            d = k.replace("-", "_")
            if d not in dests:
                raise UsageError(f"config [{name}]: unknown option {k!r}")
            vals[d] = v
        for d, v in list(vals.items()):
            act = dests[d]
            if act.type is not None and isinstance(v, str):
                vals[d] = act.type(v)
            elif isinstance(v, list):
                vals[d] = tuple(v)
            if act.choices is not None and vals[d] not in act.choices:
                raise UsageError(f"config: {d!r} must be one of {sorted(act.choices)}")
        sp.set_defaults(**vals)
    unknown_top = [k for k in top if not any(
        k.replace("-", "_") in {a.dest for a in sp._actions} for sp in subs.values())]
    if unknown_top:
        raise UsageError(f"config: unknown option(s) {unknown_top}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        _apply_config(ap, argv)
        args = ap.parse_args(argv)
    except UsageError as e:
        print(f"sarcorpus: error: {e}", file=sys.stderr)
        return 2
    except argparse.ArgumentTypeError as e:
        print(f"sarcorpus: error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:
        return int(e.code or 0)
    run = Run(args)
    try:
        args.func(run, args)
    except UsageError as e:
        print(f"sarcorpus {args.command}: error: {e}", file=sys.stderr)
        return 2
    except (DataError, OSError, ValueError) as e:
        print(f"sarcorpus {args.command}: data error: {e}", file=sys.stderr)
        return 1
    _write_json(run.out / f"{args.command}.manifest.json", run.manifest())
    return 0


if __name__ == "__main__":
    sys.exit(main())
