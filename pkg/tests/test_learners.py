import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alpool.errors import DimensionMismatch, EmptySet, TooFewMembers
from alpool.learners import (Committee, LabeledData, ModelParams, TrainConfig,
                             committee_distributions, fit, init_model, loss,
                             loss_gradient, predict_proba, predict_proba_batch,
                             train, train_committee)


def zero_model(k, d):
    return ModelParams(np.zeros((k, d + 1)))


def random_data(rng, k, d, n):
    return LabeledData(X=rng.normal(0, 1, (n, d)), y=rng.integers(0, k, n))


def test_zero_weights_give_uniform():
    for k in (2, 3, 5):
        probs = predict_proba(zero_model(k, 3), np.array([1.0, -2.0, 0.5]))
        assert np.allclose(probs, 1.0 / k)


def test_binary_extreme_logits():
    # logits (10, -10): p1 = 1/(1 + e^20), evaluated analytically
    model = ModelParams(np.array([[0.0, 10.0], [0.0, -10.0]]))
    probs = predict_proba(model, np.array([0.0]))
    expected_small = 1.0 / (1.0 + math.exp(20.0))  # ~2.061e-9
    assert probs[1] == pytest.approx(expected_small, rel=1e-12)
    assert probs.sum() == pytest.approx(1.0, abs=1e-12)


def test_softmax_shift_invariance():
    rng = np.random.default_rng(3)
    W = rng.normal(0, 1, (4, 6))
    x = rng.normal(0, 1, 5)
    base = predict_proba(ModelParams(W), x)
    shifted = W.copy()
    shifted[:, -1] += 17.3  # adds the same constant to every logit
    assert np.allclose(predict_proba(ModelParams(shifted), x), base, atol=1e-12)


def test_predict_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        predict_proba(zero_model(2, 3), np.array([1.0]))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_predict_proba_is_distribution(seed):
    rng = np.random.default_rng(seed)
    k, d = int(rng.integers(2, 6)), int(rng.integers(1, 8))
    model = ModelParams(rng.normal(0, 3, (k, d + 1)))
    probs = predict_proba(model, rng.normal(0, 3, d))
    assert np.all(probs >= 0) and np.all(probs <= 1)
    assert abs(probs.sum() - 1.0) < 1e-9


def test_loss_uniform_binary_is_ln2():
    rng = np.random.default_rng(0)
    data = random_data(rng, 2, 3, 10)
    assert loss(zero_model(2, 3), data) == pytest.approx(math.log(2), abs=1e-12)


def test_loss_goes_to_zero_when_confident():
    # huge margin on the true class for every sample
    X = np.array([[1.0], [-1.0]])
    y = np.array([0, 1])
    model = ModelParams(np.array([[50.0, 0.0], [-50.0, 0.0]]))
    assert loss(model, LabeledData(X, y)) < 1e-12


def test_l2_penalty_increases_loss():
    rng = np.random.default_rng(1)
    data = random_data(rng, 3, 4, 20)
    model = ModelParams(rng.normal(0, 1, (3, 5)))
    assert loss(model, data, l2=0.1) > loss(model, data, l2=0.0)


def test_loss_empty_set():
    with pytest.raises(EmptySet):
        loss(zero_model(2, 1), LabeledData(np.empty((0, 1)), np.empty(0, int)))


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(11)
    h = 1e-6
    for _ in range(10):
        k, d, n = int(rng.integers(2, 5)), int(rng.integers(1, 5)), int(rng.integers(2, 20))
        W = rng.normal(0, 1, (k, d + 1))
        data = random_data(rng, k, d, n)
        l2 = float(rng.choice([0.0, 1e-2]))
        grad = loss_gradient(ModelParams(W), data, l2)
        for i in range(k):
            for j in range(d + 1):
                Wp, Wm = W.copy(), W.copy()
                Wp[i, j] += h
                Wm[i, j] -= h
                fd = (loss(ModelParams(Wp), data, l2)
                      - loss(ModelParams(Wm), data, l2)) / (2 * h)
                assert abs(grad[i, j] - fd) / max(abs(fd), 1e-8) <= 1e-6


def test_gradient_zero_at_trained_minimum():
    rng = np.random.default_rng(5)
    data = random_data(rng, 2, 2, 12)
    cfg = TrainConfig(learning_rate=0.5, epochs=200000, l2=1e-2, tolerance=1e-10,
                      init_seed=0)
    model = fit(2, data, cfg)
    assert np.linalg.norm(loss_gradient(model, data, cfg.l2)) <= 1e-8


def test_gradient_zero_for_perfectly_fit_point():
    # prediction == one-hot truth: the data term vanishes
    X = np.array([[1.0]])
    y = np.array([0])
    model = ModelParams(np.array([[60.0, 0.0], [-60.0, 0.0]]))
    grad = loss_gradient(model, LabeledData(X, y), l2=0.0)
    assert np.allclose(grad, 0.0, atol=1e-12)


def test_train_zero_epochs_returns_start():
    rng = np.random.default_rng(2)
    data = random_data(rng, 2, 3, 8)
    start = init_model(2, 3, seed=9)
    out = train(start, data, TrainConfig(epochs=0))
    assert np.array_equal(out.weights, start.weights)


def test_train_separable_reaches_perfect_accuracy():
    X = np.array([[0.0, 0.0], [0.0, 1.0], [2.0, 0.0], [2.0, 1.0]])
    y = np.array([0, 0, 1, 1])
    data = LabeledData(X, y)
    model = fit(2, data, TrainConfig(learning_rate=0.1, epochs=5000, l2=1e-4,
                                     tolerance=0.0, init_seed=0))
    preds = np.argmax(predict_proba_batch(model, X), axis=1)
    assert np.array_equal(preds, y)


def test_training_loss_non_increasing_small_lr():
    for seed in range(10):
        rng = np.random.default_rng(seed)
        data = random_data(rng, 3, 3, 25)
        cfg = TrainConfig(learning_rate=0.01, epochs=1, l2=1e-3, tolerance=0.0,
                          init_seed=seed)
        model = init_model(3, 3, seed)
        prev = loss(model, data, cfg.l2)
        for _ in range(50):
            model = train(model, data, cfg)
            cur = loss(model, data, cfg.l2)
            assert cur <= prev + 1e-12
            prev = cur


def test_train_is_deterministic():
    rng = np.random.default_rng(8)
    data = random_data(rng, 2, 4, 30)
    cfg = TrainConfig(learning_rate=0.2, epochs=300, init_seed=77)
    a = fit(2, data, cfg)
    b = fit(2, data, cfg)
    assert np.array_equal(a.weights, b.weights)


def test_committee_identical_seeds_identical_members():
    rng = np.random.default_rng(4)
    data = random_data(rng, 2, 2, 15)
    com = train_committee([5, 5, 5], 2, data, TrainConfig(epochs=100),
                          resample=False)
    for m in com.members[1:]:
        assert np.array_equal(m.weights, com.members[0].weights)


def test_committee_distinct_seeds_disagree_on_ambiguous_data():
    # two heavily overlapping classes: members land in different optima basins
    rng = np.random.default_rng(6)
    X = rng.normal(0, 1, (30, 2))
    y = rng.integers(0, 2, 30)
    data = LabeledData(X, y)
    com = train_committee(list(range(6)), 2, data,
                          TrainConfig(epochs=30, learning_rate=0.1),
                          resample=True)
    probe = rng.normal(0, 1, (50, 2))
    preds = np.stack([np.argmax(predict_proba_batch(m, probe), axis=1)
                      for m in com.members])
    assert any(not np.array_equal(preds[0], preds[i]) for i in range(1, 6))


def test_committee_too_few_members():
    rng = np.random.default_rng(0)
    data = random_data(rng, 2, 2, 5)
    with pytest.raises(TooFewMembers):
        train_committee([1], 2, data, TrainConfig())


def test_vote_counts_sum_to_committee_size():
    rng = np.random.default_rng(12)
    for _ in range(1000):
        k, d, c = int(rng.integers(2, 5)), int(rng.integers(1, 4)), int(rng.integers(2, 7))
        com = Committee(members=[ModelParams(rng.normal(0, 1, (k, d + 1)))
                                 for _ in range(c)],
                        member_seeds=list(range(c)))
        dists, votes = committee_distributions(com, rng.normal(0, 1, d))
        assert votes.sum() == c
        assert len(dists) == c


def test_unanimous_committee_concentrates_votes():
    model = ModelParams(np.array([[3.0, 0.0], [-3.0, 0.0]]))
    com = Committee(members=[model] * 4, member_seeds=[0] * 4)
    _, votes = committee_distributions(com, np.array([1.0]))
    assert votes[0] == 4 and votes[1] == 0
