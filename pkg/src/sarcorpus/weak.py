"""Pattern-based weak classification, threshold grid search and the
high-precision not-sarcastic filter."""

from __future__ import annotations

import csv
import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import Corpus, DataError, Label
from .patterns import ALL_TEMPLATES, PatternStats, count_patterns, post_patterns, threshold_patterns

HIT = "HIT"
ABSTAIN = "ABSTAIN"

DEFAULT_THETA_F = (2, 3, 4, 5, 6)
DEFAULT_THETA_P = (0.60, 0.65, 0.70, 0.75, 0.80, 0.85)
DEFAULT_THETA_N = (1, 2, 3)


@dataclass(frozen=True)
class ThresholdConfig:
    theta_f: int
    theta_p: float
    theta_n: int = 1

    def __post_init__(self):
        if self.theta_f < 1:
            raise ValueError("theta_f must be >= 1")
        if not 0 < self.theta_p <= 1:
            raise ValueError("theta_p must be in (0, 1]")
        if self.theta_n < 1:
            raise ValueError("theta_n must be >= 1")


@dataclass(frozen=True)
class WeakDetector:
    label: Label
    patterns: frozenset
    theta_n: int = 1
    templates: frozenset = ALL_TEMPLATES

    def match_sites(self, text: str) -> int:
        return sum(1 for p in post_patterns(text, self.templates) if p in self.patterns)

    def classify(self, text: str) -> str:
        return classify(text, self)


def build_detector(stats: PatternStats, label: Label, cfg: ThresholdConfig,
                   templates: frozenset = ALL_TEMPLATES) -> WeakDetector:
    return WeakDetector(label, threshold_patterns(stats, label, cfg.theta_f, cfg.theta_p), cfg.theta_n, templates)


def classify(post, detector: WeakDetector) -> str:
    """HIT when the post holds at least theta_n match sites of the detector's
    patterns.  Repeats of one pattern count separately."""
    text = post if isinstance(post, str) else post.text
    return HIT if detector.match_sites(text) >= detector.theta_n else ABSTAIN


def classify_two(post, sarc: WeakDetector, notsarc: WeakDetector) -> Label | None:
    """Run both one-class detectors; a double HIT goes to the detector with
    more match sites, and an exact tie abstains (None)."""
    text = post if isinstance(post, str) else post.text
    ns, nn = sarc.match_sites(text), notsarc.match_sites(text)
    hs, hn = ns >= sarc.theta_n, nn >= notsarc.theta_n
    if hs and hn:
        if ns == nn:
            return None
        return sarc.label if ns > nn else notsarc.label
    if hs:
        return sarc.label
    if hn:
        return notsarc.label
    return None


@dataclass(frozen=True)
class PRPoint:
    config: ThresholdConfig
    tp: int
    fp: int
    fn: int
    n_patterns: int = 0

    @property
    def precision(self) -> float | None:
        d = self.tp + self.fp
        return self.tp / d if d else None

    @property
    def recall(self) -> float | None:
        d = self.tp + self.fn
        return self.tp / d if d else None

    @property
    def f1(self) -> float | None:
        p, r = self.precision, self.recall
        if p is None or r is None or p + r == 0:
            return None if p is None or r is None else 0.0
        return 2 * p * r / (p + r)

    @property
    def defined(self) -> bool:
        return self.precision is not None and self.recall is not None


@dataclass
class GridResult:
    label: Label
    points: list
    frontier: list
    best_precision: PRPoint | None
    best_f1: PRPoint | None
    flags: list = field(default_factory=list)


def _precision_key(pt: PRPoint):
    c = pt.config
    return (-pt.precision, -pt.recall, c.theta_n, c.theta_f, c.theta_p)


def _f1_key(pt: PRPoint):
    c = pt.config
    return (-pt.f1, -pt.precision, c.theta_n, c.theta_f, c.theta_p)


def pareto_frontier(points: Sequence[PRPoint]) -> list[PRPoint]:
    """Defined points not dominated in both precision and recall, ordered by
    precision then recall."""
    pts = [p for p in points if p.defined]
    out = []
    for a in pts:
        dominated = any(
            b.precision >= a.precision and b.recall >= a.recall
            and (b.precision > a.precision or b.recall > a.recall)
            for b in pts
        )
        if not dominated:
            out.append(a)
    out.sort(key=lambda p: (p.precision, p.recall, p.config.theta_n, p.config.theta_f, p.config.theta_p))
    return out


def evaluate_detector(detector: WeakDetector, dev: Corpus, config: ThresholdConfig | None = None) -> PRPoint:
    tp = fp = fn = 0
    for pair in dev:
        hit = classify(pair, detector) == HIT
        gold = pair.label == detector.label
        tp += hit and gold
        fp += hit and not gold
        fn += (not hit) and gold
    cfg = config or ThresholdConfig(1, 1.0, detector.theta_n)
    return PRPoint(cfg, tp, fp, fn, len(detector.patterns))


def grid_search(train: Corpus, dev: Corpus, label: Label,
                theta_f: Iterable[int] = DEFAULT_THETA_F,
                theta_p: Iterable[float] = DEFAULT_THETA_P,
                theta_n: Iterable[int] = DEFAULT_THETA_N,
                templates: frozenset = ALL_TEMPLATES,
                stats: PatternStats | None = None) -> GridResult:
    """Evaluate every (theta_f, theta_p, theta_n) config on ``dev``.

    Patterns are learned on ``train`` only.  Points whose precision or recall
    is undefined are kept in ``points`` but left off the frontier.
    """
    overlap = set(train.ids) & set(dev.ids)
    if overlap:
        raise DataError(f"train and dev share {len(overlap)} posts")
    if stats is None:
        stats = count_patterns(train, templates)
    # per dev post: pattern -> match sites, computed once
    dev_counts = [(Counter(post_patterns(p.text, templates)), p.label == label) for p in dev]
    flags = []
    if not any(g for _, g in dev_counts):
        flags.append(f"dev has no {label.value} posts: recall undefined")

    points = []
    for tf, tp_ in itertools.product(theta_f, theta_p):
        pats = threshold_patterns(stats, label, tf, tp_)
        sites = [sum(n for p, n in cnt.items() if p in pats) for cnt, _ in dev_counts]
        for tn in theta_n:
            tp = fp = fn = 0
            for s, (_, gold) in zip(sites, dev_counts):
                hit = s >= tn
                tp += hit and gold
                fp += hit and not gold
                fn += (not hit) and gold
            points.append(PRPoint(ThresholdConfig(tf, tp_, tn), tp, fp, fn, len(pats)))

    defined = [p for p in points if p.defined]
    with_f1 = [p for p in defined if p.f1 is not None]
    return GridResult(
        label=label,
        points=points,
        frontier=pareto_frontier(points),
        best_precision=min(defined, key=_precision_key) if defined else None,
        best_f1=min(with_f1, key=_f1_key) if with_f1 else None,
        flags=flags,
    )


def train_dev_split(c: Corpus, train_frac: float = 0.8, seed: int = 42) -> tuple[Corpus, Corpus]:
    """Stratified split; each class contributes round(train_frac * n) posts
    to train."""
    by_class: dict = {}
    for p in c:
        by_class.setdefault(p.label, []).append(p.id)
    rng = random.Random(seed)
    train_ids = set()
    for label in sorted(by_class, key=lambda lab: "" if lab is None else lab.value):
        ids = list(by_class[label])
        rng.shuffle(ids)
        train_ids.update(ids[: round(train_frac * len(ids))])
    return (c.where(lambda p: p.id in train_ids), c.where(lambda p: p.id not in train_ids))


def build_ns_filter(s: PatternStats, theta_f: int, theta_p: float,
                    templates: frozenset = ALL_TEMPLATES) -> WeakDetector:
    """Not-sarcastic detector with theta_n = 1; a HIT means 'remove'."""
    label = Label.NOT_SARCASTIC
    return WeakDetector(label, threshold_patterns(s, label, theta_f, theta_p), 1, templates)


def apply_filter(c: Corpus, d: WeakDetector) -> tuple[Corpus, Corpus]:
    removed = {p.id for p in c if classify(p, d) == HIT}
    return c.where(lambda p: p.id not in removed), c.where(lambda p: p.id in removed)


FRONTIER_HEADER = ["theta_f", "theta_p", "theta_n", "precision", "recall", "f1", "tp", "fp", "fn"]


def _fmt(x):
    return "" if x is None else f"{x:.6f}"


def write_points_csv(points: Iterable[PRPoint], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(FRONTIER_HEADER)
        for p in points:
            c = p.config
            w.writerow([c.theta_f, f"{c.theta_p:.2f}", c.theta_n, _fmt(p.precision), _fmt(p.recall), _fmt(p.f1), p.tp, p.fp, p.fn])
