"""Linear SVM: mean hinge loss plus lambda * ||w||^2, trained by SGD.

The bias is not regularized.  Weights are kept as ``scale * v`` so the L2
shrink is O(1) per step on sparse rows.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import sparse

from ..corpus import DataError


@dataclass(frozen=True)
class SGDConfig:
    l2_lambda: float = 1e-4
    epochs: int = 5
    eta0: float = 0.1
    power_t: float = 0.5  # eta_t = eta0 / t**power_t
    seed: int = 42
    fit_bias: bool = True
    # redo an epoch at half the rate when it raises the full objective
    backtrack: bool = True
    max_backtracks: int = 8

    def __post_init__(self):
        if self.l2_lambda < 0:
            raise ValueError("l2_lambda must be >= 0")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.eta0 <= 0:
            raise ValueError("eta0 must be positive")

    def to_dict(self) -> dict:
        return asdict(self)


def _as_csr(X):
    if sparse.issparse(X):
        return X.tocsr().astype(np.float64)
    return sparse.csr_matrix(np.asarray(X, dtype=np.float64))


def _margins(w, b, X, y):
    return y * (X @ w + b)


def objective(w: np.ndarray, b: float, X, y: np.ndarray, lam: float) -> float:
    """Mean hinge loss + lam * ||w||^2."""
    m = _margins(w, b, X, y)
    return float(np.mean(np.maximum(0.0, 1.0 - m)) + lam * (w @ w))


def subgradient(w: np.ndarray, b: float, X, y: np.ndarray, lam: float) -> tuple[np.ndarray, float]:
    """Full-batch subgradient (the gradient wherever no margin equals 1)."""
    m = _margins(w, b, X, y)
    active = (m < 1.0).astype(np.float64)
    coef = -(active * y) / len(y)
    gw = np.asarray(X.T @ coef).ravel() + 2 * lam * w
    return gw, float(coef.sum())


@dataclass
class LinearModel:
    weights: np.ndarray
    bias: float
    config: SGDConfig
    history: list = field(default_factory=list)  # epoch-end objectives
    backtracks: int = 0

    def decision_function(self, X) -> np.ndarray:
        X = _as_csr(X)
        if X.shape[1] != len(self.weights):
            raise ValueError(f"feature dimension {X.shape[1]} != model dimension {len(self.weights)}")
        return np.asarray(X @ self.weights).ravel() + self.bias

    def predict(self, X) -> np.ndarray:
        return np.where(self.decision_function(X) >= 0, 1, -1)


def _epoch(order, indptr, indices, data, y, v, scale, b, t, cfg, rate_mult):
    lam = cfg.l2_lambda
    for i in order:
        t += 1
        eta = rate_mult * cfg.eta0 / t ** cfg.power_t
        lo, hi = indptr[i], indptr[i + 1]
        idx, vals = indices[lo:hi], data[lo:hi]
        margin = y[i] * (scale * (v[idx] @ vals) + b)
        shrink = 1.0 - 2.0 * lam * eta
        if shrink <= 0:
            raise ValueError("learning rate too large for l2_lambda (shrink factor <= 0)")
        scale *= shrink
        if margin < 1.0:
            v[idx] += (eta * y[i] / scale) * vals
            if cfg.fit_bias:
                b += eta * y[i]
        if scale < 1e-9:
            v *= scale
            scale = 1.0
    return v, scale, b, t


def train(X, y, config: SGDConfig = SGDConfig()) -> LinearModel:
    """SGD on the hinge + L2 objective.  ``y`` holds +1/-1.  The shuffle order
    per epoch comes from ``config.seed`` alone."""
    X = _as_csr(X)
    y = np.asarray(y, dtype=np.float64)
    if X.shape[0] != len(y):
        raise ValueError("X and y disagree on the number of examples")
    if not set(np.unique(y)) <= {-1.0, 1.0}:
        raise ValueError("labels must be +1/-1")
    if len(np.unique(y)) < 2:
        raise DataError("training data holds a single class")
    X.sort_indices()
    indptr, indices, data = X.indptr, X.indices, X.data
    rng = np.random.default_rng(config.seed)
    v = np.zeros(X.shape[1])
    scale, b, t = 1.0, 0.0, 0
    rate = 1.0
    history = []
    backtracks = 0
    prev = objective(v, b, X, y, config.l2_lambda)
    for _ in range(config.epochs):
        order = rng.permutation(X.shape[0])
        for attempt in range(config.max_backtracks + 1):
            nv, nscale, nb, nt = _epoch(order, indptr, indices, data, y, v.copy(), scale, b, t, config, rate)
            w = nv * nscale
            cur = objective(w, nb, X, y, config.l2_lambda)
            if not config.backtrack or cur <= prev:
                v, scale, b, t = nv, nscale, nb, nt
                prev = cur
                break
            rate *= 0.5
            backtracks += 1
        # all retries raised the objective: keep the previous weights
        history.append(prev)
    return LinearModel(v * scale, float(b), config, history, backtracks)
