"""k-fold cross-validation and learning curves."""

from __future__ import annotations

import csv
import json
import math
import random
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..corpus import Corpus, Label, split_folds
from .features import EmbeddingTable, FeatureConfig, Featurizer
from .svm import SGDConfig, train

LABELS = (Label.SARCASTIC, Label.NOT_SARCASTIC)


def to_sign(label: Label) -> int:
    return 1 if label is Label.SARCASTIC else -1


def from_sign(s: int) -> Label:
    return Label.SARCASTIC if s > 0 else Label.NOT_SARCASTIC


@dataclass(frozen=True)
class Confusion:
    """Counts keyed by (gold, predicted)."""
    ss: int = 0  # gold sarc, predicted sarc
    sn: int = 0
    ns: int = 0
    nn: int = 0

    @classmethod
    def from_pairs(cls, gold: Sequence[Label], pred: Sequence[Label]) -> Confusion:
        cnt = {(g, p): 0 for g in LABELS for p in LABELS}
        for g, p in zip(gold, pred):
            cnt[g, p] += 1
        S, N = LABELS
        return cls(cnt[S, S], cnt[S, N], cnt[N, S], cnt[N, N])

    def __add__(self, o: Confusion) -> Confusion:
        return Confusion(self.ss + o.ss, self.sn + o.sn, self.ns + o.ns, self.nn + o.nn)

    @property
    def total(self) -> int:
        return self.ss + self.sn + self.ns + self.nn

    def counts(self, label: Label) -> tuple[int, int, int]:
        """(tp, fp, fn) for ``label``."""
        if label is Label.SARCASTIC:
            return self.ss, self.ns, self.sn
        return self.nn, self.sn, self.ns

    def prf(self, label: Label) -> tuple[float, float, float]:
        """Precision, recall, F1.  Undefined ratios are NaN."""
        tp, fp, fn = self.counts(label)
        p = tp / (tp + fp) if tp + fp else math.nan
        r = tp / (tp + fn) if tp + fn else math.nan
        if math.isnan(p) or math.isnan(r):
            f = math.nan
        else:
            f = 2 * p * r / (p + r) if p + r else 0.0
        return p, r, f

    def to_dict(self) -> dict:
        return {"ss": self.ss, "sn": self.sn, "ns": self.ns, "nn": self.nn}


@dataclass
class EvalReport:
    config: dict
    folds: list  # Confusion per fold
    test_folds: dict  # post id -> fold index
    warnings: list = field(default_factory=list)

    @property
    def pooled(self) -> Confusion:
        out = Confusion()
        for c in self.folds:
            out = out + c
        return out

    def metrics(self, label: Label, fold: int | None = None) -> tuple[float, float, float]:
        c = self.pooled if fold is None else self.folds[fold]
        return c.prf(label)

    def f1(self, label: Label) -> float:
        return self.metrics(label)[2]

    def to_dict(self) -> dict:
        def row(c):
            return {lab.value: dict(zip(("precision", "recall", "f1"), _clean(c.prf(lab)))) for lab in LABELS}
        return {
            "config": self.config,
            "pooled": {"confusion": self.pooled.to_dict(), **row(self.pooled)},
            "folds": [{"confusion": c.to_dict(), **row(c)} for c in self.folds],
            "warnings": self.warnings,
        }

    def write_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def write_tsv(self, path) -> None:
        name = self.config.get("features", {}).get("name", "")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("features\tclass\tP\tR\tF\n")
            for lab in LABELS:
                p, r, f = self.metrics(lab)
                fh.write(f"{name}\t{lab.value}\t{_f2(p)}\t{_f2(r)}\t{_f2(f)}\n")


def _clean(vals):
    return [None if math.isnan(v) else v for v in vals]


def _f2(x):
    return "nan" if math.isnan(x) else f"{x:.2f}"


def cross_validate(c: Corpus, k: int = 10, features: FeatureConfig = FeatureConfig(),
                   hyper: SGDConfig = SGDConfig(), seed: int = 42,
                   table: EmbeddingTable | None = None) -> EvalReport:
    """Stratified k-fold CV.  Features (vocabulary included) are fitted on
    each fold's training side only."""
    assignment = split_folds(c, k, seed)
    pairs = list(c)
    fold_of = assignment.assignment
    confusions = []
    notes = []
    oov = 0
    for f in range(k):
        tr = [p for p in pairs if fold_of[p.id] != f]
        te = [p for p in pairs if fold_of[p.id] == f]
        feat = Featurizer(features, table)
        Xtr = feat.fit_transform([p.text for p in tr])
        model = train(Xtr, np.array([to_sign(p.label) for p in tr]), hyper)
        pred = model.predict(feat.transform([p.text for p in te]))
        confusions.append(Confusion.from_pairs([p.label for p in te], [from_sign(s) for s in pred]))
        oov += feat.oov_posts
    if oov:
        notes.append(f"{oov} post featurizations had no in-table tokens (zero embedding)")
    counts = c.class_counts
    if counts.get(Label.SARCASTIC, 0) != counts.get(Label.NOT_SARCASTIC, 0):
        notes.append("corpus is not class-balanced")
    config = {
        "k": k,
        "seed": seed,
        "features": {"name": features.name, "ngrams": features.ngrams, "embeddings": features.embeddings,
                     "n_max": features.n_max, "min_df": features.min_df},
        "hyperparams": hyper.to_dict(),
        "n_posts": len(c),
    }
    return EvalReport(config, confusions, dict(fold_of), notes)


def _subsample(c: Corpus, per_class: int, rng: random.Random) -> Corpus:
    keep = set()
    for lab in LABELS:
        ids = [p.id for p in c if p.label is lab]
        keep.update(rng.sample(ids, min(per_class, len(ids))))
    return c.where(lambda p: p.id in keep)


def curve_sizes(max_per_class: int, step: int) -> list[int]:
    sizes = list(range(step, max_per_class + 1, step))
    if not sizes or sizes[-1] != max_per_class:
        sizes.append(max_per_class)
    return sizes


def learning_curve(c: Corpus, step: int = 100, features: FeatureConfig = FeatureConfig(),
                   hyper: SGDConfig = SGDConfig(), k: int = 10, seed: int = 42,
                   table: EmbeddingTable | None = None) -> list[tuple[int, float, float]]:
    """(size per class, F sarcastic, F not-sarcastic) at size = step,
    2*step, ... plus the per-class maximum as a terminal point."""
    if step <= 0:
        raise ValueError("step must be positive")
    counts = {lab: c.count(lab) for lab in LABELS}
    present = [lab for lab in LABELS if counts[lab]]
    if len(present) < 2:
        # nothing to learn: the constant predictor is the only classifier
        warnings.warn("learning curve on a single-class corpus: F values are degenerate", stacklevel=2)
        if not present:
            return []
        top = counts[present[0]]
        if step > top:
            raise ValueError(f"step {step} exceeds per-class size {top}")
        only = present[0]
        return [(s, 1.0 if only is Label.SARCASTIC else math.nan,
                 1.0 if only is Label.NOT_SARCASTIC else math.nan) for s in curve_sizes(top, step)]
    top = min(counts.values())
    if step > top:
        raise ValueError(f"step {step} exceeds per-class size {top}")
    rng = random.Random(seed)
    points = []
    for s in curve_sizes(top, step):
        sub = _subsample(c, s, rng)
        rep = cross_validate(sub, min(k, s), features, hyper, seed, table)
        fs, fn = rep.f1(Label.SARCASTIC), rep.f1(Label.NOT_SARCASTIC)
        if math.isnan(fs) or math.isnan(fn):
            warnings.warn(f"size {s}: undefined F (a class was never predicted)", stacklevel=2)
        points.append((s, fs, fn))
    return points


def write_curve_csv(points, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["size", "f_sarc", "f_notsarc"])
        for s, a, b in points:
            w.writerow([s, f"{a:.6f}", f"{b:.6f}"])
