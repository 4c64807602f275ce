"""Smoke tests for the python module: each main operation runs and returns
sane values; the heavy statistical checks live in the C++ suites."""

import numpy as np
import pytest

import ordreg


def test_kendall_tau():
    count, nu = ordreg.kendall_tau([0, 1, 2], [2, 1, 0])
    assert count == 6
    assert nu == pytest.approx(6 / 9)


def test_ranking_from_values():
    assert ordreg.ranking_from_values(np.array([0.3, 0.1, 0.2])) == [1, 2, 0]


def test_mse():
    assert ordreg.mse(np.array([1.0, 3.0]), np.array([0.0, 0.0])) == pytest.approx(5.0)


def test_sample_labeled_subset_deterministic():
    a = ordreg.sample_labeled_subset(10, 3, seed=7)
    b = ordreg.sample_labeled_subset(10, 3, seed=7)
    assert a == b
    assert len(set(a)) == 3


def test_isotonic():
    fitted, sse = ordreg.fit_bounded_isotonic(np.array([3.0, 1.0, 2.0]), 10.0)
    assert fitted.tolist() == [2.0, 2.0, 2.0]
    assert sse == pytest.approx(2.0)


def test_r2_model_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    x = rng.uniform(size=(50, 3))
    truth = x.sum(axis=1)
    order = ordreg.ranking_from_values(truth)
    model = ordreg.R2Model(x, list(range(50)), truth, order, k=1)
    pred = model.predict(x)
    assert ordreg.mse(pred, truth) == pytest.approx(0.0, abs=1e-12)

    path = tmp_path / "r2.model"
    model.save(str(path))
    again = ordreg.R2Model.load(str(path))
    assert np.allclose(again.predict(x), pred)


def test_comparisons_to_ranking_pipeline():
    rng = np.random.default_rng(1)
    truth = rng.normal(size=30)
    pairs = ordreg.sample_pairs(30, 200, seed=3)
    comps = ordreg.simulate_comparisons(truth, pairs, model="noisy-value", sigma=0.0)
    scores = ordreg.borda_scores(comps, 30)
    assert scores.sum() == pytest.approx(0.0)
    ranking = ordreg.scores_to_ranking(scores)
    assert sorted(ranking) == list(range(30))


def test_clr_fit_recovers_direction():
    rng = np.random.default_rng(2)
    x = rng.normal(size=(2000, 8))
    w = rng.normal(size=8)
    truth = x @ w
    model = ordreg.fit_clr(x, truth, comparisons=500, labels=100,
                           comparison_sigma=0.0, label_sigma=0.1, seed=5)
    cos = abs(np.dot(model.direction, w / np.linalg.norm(w)))
    assert cos > 0.9
    pred = model.predict(x[:10])
    assert pred.shape == (10,)


def test_baselines():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(120, 4))
    y = x @ np.array([1.0, -2.0, 0.0, 0.5]) + 0.3
    ols = ordreg.fit_ols(x, y)
    assert ols.predict(x[0]) == pytest.approx(y[0], abs=1e-6)

    lasso = ordreg.fit_lasso(x, y, lam=2.0)
    assert np.count_nonzero(lasso.weights) < 4

    knn = ordreg.fit_knn(x, y, k=1)
    assert knn.predict(x[5]) == pytest.approx(y[5])

    svr = ordreg.fit_linear_svr(x, y, C=50.0, epochs=300, seed=1)
    assert abs(svr.predict(x[1]) - y[1]) < 0.5


def test_generators():
    data = ordreg.gen_nonparametric(200, 50, seed=9)
    assert data["train"].shape == (200, 8)
    assert data["truth_train"].mean() == pytest.approx(0.0, abs=1e-12)
    assert data["truth_train"].std() == pytest.approx(1.0, abs=1e-9)
    assert 0.0 <= data["p"] <= 10.0

    lin = ordreg.gen_linear(100, 20, seed=11, d=6)
    assert lin["w_star"].shape == (6,)
    assert np.allclose(lin["train"] @ lin["w_star"], lin["truth_train"])


def test_error_translation():
    with pytest.raises(ValueError):
        ordreg.fit_bounded_isotonic(np.array([1.0]), -1.0)
    with pytest.raises(ValueError):
        ordreg.kendall_tau([0, 1], [0, 1, 2])
