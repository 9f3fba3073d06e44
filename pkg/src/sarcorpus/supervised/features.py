"""N-gram counts and averaged word vectors."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse
from sklearn.feature_extraction.text import CountVectorizer

from ..corpus import DataError
from ..syntax import load_lexicon, tokenize


def post_tokens(text: str) -> list:
    return tokenize(text, load_lexicon())


def ngrams(tokens: Sequence[str], n_max: int = 3) -> Counter:
    """All 1..n_max grams of ``tokens`` (strings), as space-joined keys."""
    out: Counter = Counter()
    for n in range(1, n_max + 1):
        for i in range(len(tokens) - n + 1):
            out[" ".join(tokens[i:i + n])] += 1
    return out


def _lower_forms(text: str) -> list[str]:
    return [t.lower for t in post_tokens(text)]


class NgramVocab:
    """Fitted 1..n_max gram vocabulary over lowercased tokens.  Punctuation
    runs and emoticons are ordinary tokens."""

    def __init__(self, n_max: int = 3, min_df: int = 1):
        self.n_max = n_max
        self.min_df = min_df
        self._cv = CountVectorizer(analyzer=self._analyze, min_df=min_df, lowercase=False)

    def _analyze(self, text):
        grams = ngrams(_lower_forms(text), self.n_max)
        return [g for g, n in grams.items() for _ in range(n)]

    def fit(self, texts: Sequence[str]) -> NgramVocab:
        texts = list(texts)
        if not texts:
            raise DataError("cannot fit a vocabulary on an empty training set")
        self._cv.fit(texts)
        return self

    @property
    def index(self) -> dict:
        return self._cv.vocabulary_

    def __len__(self):
        return len(self._cv.vocabulary_)

    def __contains__(self, gram: str) -> bool:
        return gram in self._cv.vocabulary_

    def transform(self, texts: Sequence[str]) -> sparse.csr_matrix:
        """Counts; grams outside the fitted vocabulary are dropped."""
        return self._cv.transform(list(texts)).astype(np.float64).tocsr()

    def feature_names(self) -> list[str]:
        return list(self._cv.get_feature_names_out())


def fit_ngram_vocab(texts: Iterable[str], n_max: int = 3, min_df: int = 1) -> NgramVocab:
    return NgramVocab(n_max, min_df).fit(list(texts))


@dataclass(frozen=True)
class EmbeddingTable:
    index: dict  # word -> row
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self):
        return len(self.index)

    def get(self, word: str):
        i = self.index.get(word)
        if i is None:
            i = self.index.get(word.lower())
        return None if i is None else self.vectors[i]

    def scaled(self, c: float) -> EmbeddingTable:
        return EmbeddingTable(self.index, self.vectors * c)


def load_embeddings(path, limit: int | None = None) -> EmbeddingTable:
    """Plain-text vectors, one ``word v1 ... vd`` line each.  A leading
    ``count dim`` header (word2vec text format) is skipped."""
    index: dict = {}
    rows = []
    dim = None
    with open(path, encoding="utf-8", errors="replace") as fh:
        for n, line in enumerate(fh, 1):
            parts = line.rstrip("\n").rstrip().split(" ")
            if not parts or parts == [""]:
                continue
            if n == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                dim = int(parts[1])
                continue
            word, vals = parts[0], parts[1:]
            if dim is None:
                dim = len(vals)
            if len(vals) != dim:
                raise DataError(f"{path}: line {n}: expected {dim} values, got {len(vals)}")
            try:
                vec = [float(v) for v in vals]
            except ValueError:
                raise DataError(f"{path}: line {n}: non-numeric vector value") from None
            if word in index:
                continue
            index[word] = len(rows)
            rows.append(vec)
            if limit is not None and len(rows) >= limit:
                break
    if not rows:
        raise DataError(f"{path}: no vectors")
    return EmbeddingTable(index, np.asarray(rows, dtype=np.float64))


def embed_average(tokens, table: EmbeddingTable) -> tuple[np.ndarray, bool]:
    """Mean vector of in-table tokens; all-OOV gives zeros and ``True``."""
    if isinstance(tokens, str):
        tokens = [t.surface for t in post_tokens(tokens)]
    vecs = [v for v in (table.get(t) for t in tokens) if v is not None]
    if not vecs:
        return np.zeros(table.dim), True
    return np.mean(vecs, axis=0), False


@dataclass(frozen=True)
class FeatureConfig:
    ngrams: bool = True
    embeddings: bool = False
    n_max: int = 3
    min_df: int = 1

    def __post_init__(self):
        if not (self.ngrams or self.embeddings):
            raise ValueError("enable at least one feature family")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")

    @property
    def name(self) -> str:
        return "+".join(n for n, on in (("ngrams", self.ngrams), ("w2v", self.embeddings)) if on)


class Featurizer:
    """Fits on training texts only; ``transform`` maps any texts into the
    fitted space."""

    def __init__(self, config: FeatureConfig, table: EmbeddingTable | None = None):
        if config.embeddings and table is None:
            raise ValueError("embedding features need an embedding table")
        self.config = config
        self.table = table
        self.vocab: NgramVocab | None = None
        self.oov_posts = 0

    def fit(self, texts: Sequence[str]) -> Featurizer:
        texts = list(texts)
        if not texts:
            raise DataError("cannot fit features on an empty training set")
        if self.config.ngrams:
            self.vocab = fit_ngram_vocab(texts, self.config.n_max, self.config.min_df)
        return self

    def transform(self, texts: Sequence[str]) -> sparse.csr_matrix:
        texts = list(texts)
        parts = []
        if self.config.ngrams:
            parts.append(self.vocab.transform(texts))
        if self.config.embeddings:
            dense = np.zeros((len(texts), self.table.dim))
            for i, t in enumerate(texts):
                dense[i], oov = embed_average(t, self.table)
                self.oov_posts += oov
            parts.append(sparse.csr_matrix(dense))
        return sparse.hstack(parts, format="csr") if len(parts) > 1 else parts[0]

    def fit_transform(self, texts: Sequence[str]) -> sparse.csr_matrix:
        return self.fit(texts).transform(texts)
