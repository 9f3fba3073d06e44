"""Crowd annotation: qualifier scoring, vote aggregation, agreement,
sarcasm ratios and balanced subcorpus assembly."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import Corpus, DataError, Label


class Verdict(str, Enum):
    SARCASTIC = "sarc"
    NOT_SARCASTIC = "notsarc"
    SET_ASIDE = "set_aside"


@dataclass(frozen=True)
class AnnotationRecord:
    post_id: str
    judgments: tuple  # of (annotator_id, Label)

    def __post_init__(self):
        object.__setattr__(self, "judgments", tuple((str(a), Label.parse(lab)) for a, lab in self.judgments))
        ann = [a for a, _ in self.judgments]
        if len(ann) != len(set(ann)):
            raise DataError(f"post {self.post_id}: an annotator judged it more than once")

    @property
    def sarc_count(self) -> int:
        return sum(1 for _, lab in self.judgments if lab is Label.SARCASTIC)

    def __len__(self):
        return len(self.judgments)


@dataclass(frozen=True)
class AggregationRule:
    required_sarc: int
    out_of: int
    set_aside_at: int | None = None

    def __post_init__(self):
        if not 0 < self.required_sarc <= self.out_of:
            raise ValueError("need 0 < required_sarc <= out_of")

    def __str__(self):
        s = f"{self.required_sarc}/{self.out_of}"
        return s + (f" (set aside at {self.set_aside_at})" if self.set_aside_at is not None else "")


# first-round crowd rule, expert round, cue batches, and the relaxed first-round rule
GEN_RULE = AggregationRule(6, 9, set_aside_at=5)
EXPERT_RULE = AggregationRule(2, 3)
CUE_RULE = AggregationRule(3, 5)
RELAXED_GEN_RULE = AggregationRule(5, 9)


def parse_rule(text: str) -> AggregationRule:
    """``"6/9"`` or ``"6/9:5"`` (set-aside count after the colon)."""
    main, _, aside = text.partition(":")
    k, _, n = main.partition("/")
    return AggregationRule(int(k), int(n), int(aside) if aside else None)


def load_annotations(path) -> list[AnnotationRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                out.append(AnnotationRecord(
                    str(rec["post_id"]),
                    tuple((j["annotator"], j["label"]) for j in rec["judgments"]),
                ))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                raise DataError(f"{path}: line {n}: {e}") from None
    return out


def dump_annotations(records: Iterable[AnnotationRecord], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps({
                "post_id": r.post_id,
                "judgments": [{"annotator": a, "label": lab.value} for a, lab in r.judgments],
            }) + "\n")


@dataclass(frozen=True)
class QualifierResult:
    passed: bool
    correct: int
    total: int

    @property
    def score(self) -> float:
        return self.correct / self.total


def score_qualifier(gold: dict, submission: dict, pass_above: float = 0.70) -> QualifierResult:
    """Gold is 20 items, 10 per class.  Missing answers count as wrong; the
    pass mark is strict (14/20 = 70% fails)."""
    labels = Counter(Label.parse(v) for v in gold.values())
    if len(gold) != 20 or labels[Label.SARCASTIC] != 10:
        raise ValueError("qualifier gold must hold 20 items, 10 per class")
    correct = sum(
        1 for item, lab in gold.items()
        if item in submission and Label.parse(submission[item]) == Label.parse(lab)
    )
    return QualifierResult(Fraction(correct, len(gold)) > Fraction(pass_above).limit_denominator(1000), correct, len(gold))


def aggregate(r: AnnotationRecord, rule: AggregationRule) -> Verdict:
    if len(r) != rule.out_of:
        raise DataError(f"post {r.post_id}: {len(r)} judgments, rule expects {rule.out_of}")
    k = r.sarc_count
    if k >= rule.required_sarc:
        return Verdict.SARCASTIC
    if rule.set_aside_at is not None and k == rule.set_aside_at:
        return Verdict.SET_ASIDE
    return Verdict.NOT_SARCASTIC


def majority(r: AnnotationRecord) -> Label | None:
    k = r.sarc_count
    rest = len(r) - k
    if k == rest:
        return None
    return Label.SARCASTIC if k > rest else Label.NOT_SARCASTIC


@dataclass(frozen=True)
class AgreementStats:
    per_annotator: dict  # annotator -> fraction agreeing with the majority
    judgments: dict  # annotator -> judgments counted
    excluded_posts: int

    @property
    def mean(self) -> float | None:
        if not self.per_annotator:
            return None
        return sum(self.per_annotator.values()) / len(self.per_annotator)


def agreement_stats(records: Iterable[AnnotationRecord]) -> AgreementStats:
    """Per-annotator agreement with the per-post majority.  Posts with an
    exact tie are dropped from every denominator."""
    agree: Counter = Counter()
    total: Counter = Counter()
    excluded = 0
    for r in records:
        maj = majority(r)
        if maj is None:
            excluded += 1
            continue
        for a, lab in r.judgments:
            total[a] += 1
            agree[a] += lab is maj
    per = {a: agree[a] / total[a] for a in sorted(total)}
    return AgreementStats(per, dict(sorted(total.items())), excluded)


def verdict_counts(records: Iterable[AnnotationRecord], rule: AggregationRule) -> Counter:
    return Counter(aggregate(r, rule) for r in records)


def sarcasm_ratio(records: Sequence[AnnotationRecord], rule: AggregationRule) -> Fraction | None:
    """Posts aggregated SARCASTIC over all aggregated posts (set-aside posts
    stay in the denominator).  None for empty input."""
    counts = verdict_counts(records, rule)
    total = sum(counts.values())
    if total == 0:
        return None
    return Fraction(counts[Verdict.SARCASTIC], total)


def labeled_from_annotations(c: Corpus, records: Iterable[AnnotationRecord], rule: AggregationRule) -> Corpus:
    """Attach aggregated labels; set-aside and unannotated posts are dropped."""
    verdicts = {r.post_id: aggregate(r, rule) for r in records}
    pairs = []
    for p in c:
        v = verdicts.get(p.id)
        if v is Verdict.SARCASTIC:
            pairs.append(replace(p, label=Label.SARCASTIC))
        elif v is Verdict.NOT_SARCASTIC:
            pairs.append(replace(p, label=Label.NOT_SARCASTIC))
    return Corpus(tuple(pairs))


@dataclass(frozen=True)
class SourceQuota:
    name: str
    pool: Corpus
    label: Label
    quota: int


def assemble_subcorpus(sources: Sequence[SourceQuota], seed: int | None = None) -> tuple[Corpus, dict]:
    """Draw ``quota`` posts from each pool and label them with the pool's
    class.  Pools must be disjoint and the result exactly balanced.

    Without a seed the first ``quota`` posts of each pool are taken;
    with one, a seeded sample is drawn (kept in pool order).
    """
    seen: dict[str, str] = {}
    for s in sources:
        if s.quota > len(s.pool):
            raise DataError(f"source {s.name!r}: quota {s.quota} exceeds pool size {len(s.pool)}")
        if s.quota < 0:
            raise DataError(f"source {s.name!r}: negative quota")
        for pid in s.pool.ids:
            if pid in seen:
                raise DataError(f"post {pid!r} appears in pools {seen[pid]!r} and {s.name!r}")
            seen[pid] = s.name
    per_class = Counter()
    for s in sources:
        per_class[s.label] += s.quota
    if per_class[Label.SARCASTIC] != per_class[Label.NOT_SARCASTIC]:
        raise DataError(f"quotas are unbalanced: {dict((k.value, v) for k, v in per_class.items())}")

    rng = random.Random(seed)
    pairs = []
    post_sources = {}
    for s in sources:
        chosen = list(s.pool)
        if seed is not None:
            keep = set(rng.sample(range(len(chosen)), s.quota))
            chosen = [p for i, p in enumerate(chosen) if i in keep]
        else:
            chosen = chosen[: s.quota]
        for p in chosen:
            pairs.append(replace(p, label=s.label))
            post_sources[p.id] = s.name
    corpus = Corpus(tuple(pairs))
    manifest = {
        "sources": [
            {"name": s.name, "label": s.label.value, "quota": s.quota, "pool_size": len(s.pool)}
            for s in sources
        ],
        "class_counts": {lab.value: corpus.count(lab) for lab in Label},
        "total": len(corpus),
        "seed": seed,
        "post_sources": post_sources,
    }
    return corpus, manifest


def write_manifest(manifest: dict, path) -> None:
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
