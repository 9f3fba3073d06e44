"""Supervised baseline: n-gram and averaged-embedding features with a linear
SVM trained by SGD."""

from .evaluate import Confusion, EvalReport, cross_validate, learning_curve, write_curve_csv
from .features import (EmbeddingTable, FeatureConfig, Featurizer, NgramVocab, embed_average,
                       fit_ngram_vocab, load_embeddings, ngrams)
from .svm import LinearModel, SGDConfig, objective, subgradient, train

__all__ = [
    "Confusion", "EmbeddingTable", "EvalReport", "FeatureConfig", "Featurizer", "LinearModel",
    "NgramVocab", "SGDConfig", "cross_validate", "embed_average", "fit_ngram_vocab",
    "learning_curve", "load_embeddings", "ngrams", "objective", "subgradient", "train",
    "write_curve_csv",
]
