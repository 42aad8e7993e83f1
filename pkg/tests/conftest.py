import numpy as np
import pytest

from gvtriple.diffeo import DiffeoGroup, GroupWord, make_generator


@pytest.fixture(scope="session")
def mixed_group():
    """Rotation + nonaffine perturbation: the standard test group."""
    return DiffeoGroup([
        make_generator({"kind": "rotation", "alpha": 0.37}),
        make_generator({"kind": "perturbation", "eps": 0.6, "m": 1}),
    ])


@pytest.fixture(scope="session")
def rotation_group():
    """Rotations only: all log-derivative data vanishes identically."""
    return DiffeoGroup([
        make_generator({"kind": "rotation", "alpha": 0.37}),
        make_generator({"kind": "rotation", "alpha": 0.191}),
    ])


@pytest.fixture(scope="session")
def rich_group():
    """Three generator kinds, exercising the Mobius lift as well."""
    return DiffeoGroup([
        make_generator({"kind": "rotation", "alpha": 0.29}),
        make_generator({"kind": "perturbation", "eps": 0.45, "m": 2}),
        make_generator({"kind": "mobius", "a": 1.2, "b": 0.3,
                        "c": 0.3, "d": (1.0 + 0.09) / 1.2}),
    ])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def support_words(mixed_group):
    g = mixed_group
    e = GroupWord.identity()
    a = g.word([(0, 1)])
    b = g.word([(1, 1)])
    return [e, a, a.inverse(), b, b.inverse(), b * b, (b * b).inverse(),
            a * b, (a * b).inverse(), b * a, (b * a).inverse()]
