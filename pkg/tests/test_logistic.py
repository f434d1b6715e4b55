import numpy as np
import pytest

from sdnet.logistic import logistic_train, _loss_grad
from sdnet.rng import stream


def test_linearly_separable_two_class():
    rng = stream(0)
    x = np.vstack([rng.normal(size=(30, 2)) + 3.0, rng.normal(size=(30, 2)) - 3.0])
    y = np.repeat([0, 1], 30)
    model = logistic_train(x, y)
    assert np.mean(model.predict(x) == y) == 1.0


def test_zero_epochs_uniform_probabilities():
    x = np.ones((4, 3))
    y = np.array([0, 1, 2, 0])
    model = logistic_train(x, y, epochs=0)
    proba = model.predict_proba(x)
    assert np.allclose(proba, 1.0 / 3.0)


def test_gradient_matches_finite_differences():
    rng = stream(3)
    x = rng.normal(size=(20, 4))
    y = rng.integers(0, 3, size=20)
    onehot = np.zeros((20, 3))
    onehot[np.arange(20), y] = 1.0
    w = rng.normal(size=(4, 3)) * 0.1
    b = rng.normal(size=3) * 0.1
    l2 = 1e-3
    loss, gw, gb = _loss_grad(x, onehot, w, b, l2)
    eps = 1e-6
    for idx in [(0, 0), (1, 2), (3, 1)]:
        wp = w.copy(); wp[idx] += eps
        wm = w.copy(); wm[idx] -= eps
        lp, _, _ = _loss_grad(x, onehot, wp, b, l2)
        lm, _, _ = _loss_grad(x, onehot, wm, b, l2)
        fd = (lp - lm) / (2 * eps)
        assert gw[idx] == pytest.approx(fd, rel=1e-5)
    for j in range(3):
        bp = b.copy(); bp[j] += eps
        bm = b.copy(); bm[j] -= eps
        lp, _, _ = _loss_grad(x, onehot, w, bp, l2)
        lm, _, _ = _loss_grad(x, onehot, w, bm, l2)
        fd = (lp - lm) / (2 * eps)
        assert gb[j] == pytest.approx(fd, rel=1e-5)


def test_loss_monotone_at_small_lr():
    rng = stream(4)
    for seed in range(3):
        rng2 = stream(seed + 10)
        x = rng2.normal(size=(40, 5))
        y = rng2.integers(0, 3, size=40)
        model = logistic_train(x, y, lr=0.01, epochs=300)
        losses = np.asarray(model.losses)
        assert np.all(np.diff(losses) <= 1e-12)


def test_single_class_error():
    with pytest.raises(ValueError):
        logistic_train(np.ones((3, 2)), np.array([1, 1, 1]))


def test_explicit_class_list_predicts_class_ids():
    x = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.1], [0.1, 1.0]])
    y = np.array([5, 9, 5, 9])
    model = logistic_train(x, y, classes=np.array([5, 9]), epochs=200)
    assert set(model.predict(x)) <= {5, 9}
    assert model.predict_proba(x).shape == (4, 2)
