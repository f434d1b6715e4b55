"""Multinomial logistic regression by full-batch gradient descent."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class LogisticModel:
    """Softmax classifier with weights (d x K), bias (K) and class ids."""

    weights: np.ndarray
    bias: np.ndarray
    classes: np.ndarray
    losses: list[float] = field(default_factory=list)

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        logits = np.asarray(x, dtype=np.float64) @ self.weights + self.bias
        logits -= logits.max(axis=1, keepdims=True)
        p = np.exp(logits)
        return p / p.sum(axis=1, keepdims=True)

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.classes[np.argmax(self.predict_proba(x), axis=1)]


def _loss_grad(x, onehot, w, b, l2):
    """Mean cross-entropy plus (l2/2)||W||^2; bias is unregularized."""
    m = x.shape[0]
    logits = x @ w + b
    logits -= logits.max(axis=1, keepdims=True)
    expl = np.exp(logits)
    proba = expl / expl.sum(axis=1, keepdims=True)
    ce = -np.sum(onehot * np.log(np.maximum(proba, 1e-300))) / m
    loss = ce + 0.5 * l2 * float((w * w).sum())
    diff = (proba - onehot) / m
    grad_w = x.T @ diff + l2 * w
    grad_b = diff.sum(axis=0)
    return loss, grad_w, grad_b


def logistic_train(x, y, classes=None, l2: float = 1e-4, lr: float = 0.1,
                   epochs: int = 500) -> LogisticModel:
    """Train from zero weights; records the loss before every update.

    With zero epochs the model predicts uniform class probabilities.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y).ravel()
    if x.ndim != 2 or x.shape[0] != y.size:
        raise ValueError("x must be (m x d) aligned with y")
    if classes is None:
        classes = np.unique(y)
    classes = np.asarray(classes)
    if np.unique(y).size < 2:
        raise ValueError("logistic regression needs at least two classes present")
    k = classes.size
    index = {c: i for i, c in enumerate(classes.tolist())}
    try:
        yi = np.asarray([index[c] for c in y.tolist()], dtype=np.int64)
    except KeyError as exc:
        raise ValueError(f"label {exc.args[0]!r} not in the class list") from exc
    onehot = np.zeros((y.size, k))
    onehot[np.arange(y.size), yi] = 1.0

    w = np.zeros((x.shape[1], k))
    b = np.zeros(k)
    losses = []
    for _ in range(epochs):
        loss, gw, gb = _loss_grad(x, onehot, w, b, l2)
        losses.append(float(loss))
        w -= lr * gw
        b -= lr * gb
    return LogisticModel(w, b, classes, losses)
