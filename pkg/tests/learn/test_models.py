"""
Classifiers: analytic gradients against finite differences, fits on toy
data, and the decision-tree split rule.
"""

import typing as t

import numpy as np
import pytest

from nate.learn import (
    DecisionTreeModel,
    DimensionMismatch,
    EmptyDataset,
    LogisticModel,
    MlpModel,
    RandomForestModel,
    TrainConfig,
    gradient_logistic,
    gradient_mlp,
    train,
    train_forest,
    train_logistic,
    train_mlp,
    train_tree,
)
from nate.learn.logistic import loss_logistic
from nate.learn.mlp import flatten, init_mlp, loss_mlp, unflatten
from nate.learn.tree import LEAF, best_split, gini
from nate.model import ModelKind

XOR_X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
XOR_Y = np.array([0.0, 1.0, 1.0, 0.0])


def blobs(n: int = 200, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """two well separated gaussian blobs plus a binary column"""
    g = np.random.default_rng(seed)
    y = (np.arange(n) % 2).astype(np.float64)
    X = g.normal(0.0, 0.5, size=(n, 3))
    X[:, 0] += np.where(y == 1.0, 3.0, -3.0)
    X[:, 2] = g.integers(0, 2, size=n)
    return X, y


def numeric_gradient(f: t.Callable[[np.ndarray], float], theta: np.ndarray, eps: float = 1e-6) -> np.ndarray:
    out = np.zeros_like(theta)
    for i in range(theta.shape[0]):
        up, down = theta.copy(), theta.copy()
        up[i] += eps
        down[i] -= eps
        out[i] = (f(up) - f(down)) / (2 * eps)
    return out


class TestGradients(object):
    def test_logistic(self) -> None:
        """the logistic gradient matches central differences"""
        g = np.random.default_rng(1)
        X, y = g.normal(size=(12, 4)), (g.random(12) > 0.5).astype(np.float64)
        m = LogisticModel(g.normal(size=4), 0.3)

        def loss(theta: np.ndarray) -> float:
            return loss_logistic(LogisticModel(theta[:-1], theta[-1]), X, y, 0.01)

        theta = np.concatenate([m.weights, [m.bias]])
        np.testing.assert_allclose(gradient_logistic(m, X, y, 0.01), numeric_gradient(loss, theta), atol=1e-7)

    def test_mlp(self) -> None:
        """backpropagation matches central differences"""
        g = np.random.default_rng(2)
        X, y = g.normal(size=(10, 5)), (g.random(10) > 0.5).astype(np.float64)
        m = init_mlp(5, 4, g)
        m = unflatten(m, flatten(m) + g.normal(0.0, 0.1, size=flatten(m).shape[0]))

        def loss(theta: np.ndarray) -> float:
            return loss_mlp(unflatten(m, theta), X, y, 0.01)

        np.testing.assert_allclose(gradient_mlp(m, X, y, 0.01), numeric_gradient(loss, flatten(m)), atol=1e-6)


class TestLogistic(object):
    def test_separable(self) -> None:
        """well separated blobs are classified almost perfectly"""
        X, y = blobs()
        m = train_logistic(X, y, TrainConfig(learning_rate=0.05, epochs=30, batch_size=32))
        assert np.mean((m.predict(X) > 0.5) == (y == 1.0)) >= 0.98
        assert m.history[-1] < m.history[0]
        assert len(m.history) == 30

    def test_epochs_override(self) -> None:
        """an explicit epoch count wins over the config"""
        X, y = blobs(40)
        m = train_logistic(X, y, TrainConfig(epochs=7), epochs=3)
        assert len(m.history) == 3

    def test_deterministic(self) -> None:
        """the same seed trains the same weights"""
        X, y = blobs(60)
        cf = TrainConfig(epochs=3, batch_size=16)
        np.testing.assert_array_equal(train_logistic(X, y, cf).weights, train_logistic(X, y, cf).weights)

    def test_shapes(self) -> None:
        """wrong widths and empty data are rejected"""
        X, y = blobs(20)
        m = train_logistic(X, y, TrainConfig(epochs=1))
        with pytest.raises(DimensionMismatch):
            m.predict(np.zeros((2, 5)))
        with pytest.raises(ValueError):
            m.eval(np.zeros((2, 3)))
        assert 0.0 <= m.eval(X[0]) <= 1.0
        with pytest.raises(EmptyDataset):
            train_logistic(np.zeros((0, 3)), [], TrainConfig())


class TestTree(object):
    def test_gini(self) -> None:
        """binary gini impurity"""
        assert gini(1.0, 2.0) == pytest.approx(0.5)
        assert gini(0.0, 3.0) == 0.0
        assert gini(3.0, 3.0) == 0.0

    def test_split_ties_go_to_lowest_feature(self) -> None:
        """equal splits resolve to the lowest feature, midpoint threshold"""
        assert best_split(XOR_X, XOR_Y, np.arange(2)) == (0, 0.5, 0.5)
        assert best_split(XOR_X, XOR_Y, np.array([1])) == (1, 0.5, 0.5)
        assert best_split(np.ones((3, 2)), np.array([0.0, 1.0, 0.0]), np.arange(2)) is None

    def test_xor(self) -> None:
        """a tree fits xor exactly"""
        m = train_tree(XOR_X, XOR_Y, TrainConfig())
        assert m.predict(XOR_X).tolist() == XOR_Y.tolist()
        assert len(m) == 7
        assert m.depth == 2

    def test_decision_path(self) -> None:
        """the path lists every test and ends at a leaf"""
        m = train_tree(XOR_X, XOR_Y, TrainConfig())
        steps = m.decision_path([1.0, 1.0])
        assert [s.node for s in steps] == [0, 4, 6]
        assert (steps[0].feature, steps[0].threshold, steps[0].went_left) == (0, 0.5, False)
        assert steps[-1].feature == LEAF
        assert (steps[-1].negative, steps[-1].positive) == (1.0, 0.0)
        assert steps[0].confidence == 0.5

    def test_pure_root(self) -> None:
        """a pure dataset is a single leaf"""
        m = train_tree(XOR_X, np.zeros(4), TrainConfig())
        assert len(m) == 1
        assert m.predict(XOR_X).tolist() == [0.0] * 4


class TestForest(object):
    def test_votes(self) -> None:
        """confidence is the share of trees voting to blame"""
        X, y = blobs(80)
        cf = TrainConfig(n_estimators=9)
        m = train_forest(X, y, cf)
        assert len(m) == 9
        votes = m.votes(X)
        assert votes.shape == (9, 80)
        np.testing.assert_array_equal(m.predict(X), votes.mean(axis=0))
        assert np.mean((m.predict(X) > 0.5) == (y == 1.0)) >= 0.9

    def test_seeded(self) -> None:
        """forests are reproducible from the seed"""
        X, y = blobs(50)
        cf = TrainConfig(n_estimators=4, seed=11)
        a, b = train_forest(X, y, cf), train_forest(X, y, cf)
        assert a.seeds == b.seeds
        np.testing.assert_array_equal(a.predict(X), b.predict(X))

    def test_needs_trees(self) -> None:
        """an empty forest is rejected"""
        with pytest.raises(ValueError):
            RandomForestModel([])


class TestDispatch(object):
    @pytest.mark.parametrize(
        "kind,cls",
        [
            (ModelKind.Linear, LogisticModel),
            (ModelKind.Tree, DecisionTreeModel),
            (ModelKind.Forest, RandomForestModel),
            (ModelKind.Mlp10, MlpModel),
        ],
    )
    def test_train(self, kind: ModelKind, cls: type) -> None:
        """each kind trains its own classifier"""
        X, y = blobs(40)
        m = train(kind, X, y, TrainConfig(epochs=2, n_estimators=3))
        assert isinstance(m, cls)
        assert m.kind is kind
        assert m.width == 3

    def test_mlp_width(self) -> None:
        """mlp kinds fix the hidden layer"""
        X, y = blobs(20)
        m = train(ModelKind.Mlp500, X, y, TrainConfig(epochs=1))
        assert isinstance(m, MlpModel)
        assert m.hidden_units == 500
        assert m.kind is ModelKind.Mlp500


@pytest.mark.slow
class TestFullBatchDescent(object):
    """With one batch per epoch and a small step, Adam's training loss never goes up."""

    cf = TrainConfig(learning_rate=0.002, batch_size=400, epochs=100)

    @staticmethod
    def assert_non_increasing(history: list[float]) -> None:
        assert len(history) == 100
        for before, after in zip(history, history[1:]):
            assert after <= before + 1e-12
        assert history[-1] < history[0]

    def test_logistic(self) -> None:
        """logistic loss decreases epoch by epoch on separable blobs"""
        X, y = blobs(400, seed=3)
        self.assert_non_increasing(train_logistic(X, y, self.cf).history)

    def test_mlp(self) -> None:
        """mlp loss decreases epoch by epoch on separable blobs"""
        X, y = blobs(400, seed=4)
        self.assert_non_increasing(train_mlp(X, y, self.cf, hidden_units=10).history)
