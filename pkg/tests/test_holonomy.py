import numpy as np
import pytest

from gvtriple.diffeo import GroupWord, random_word
from gvtriple.holonomy import (
    Delta,
    GroupoidArrow,
    act_Hstar,
    act_Q,
    delta_small,
    log_Delta,
    random_composable_pair,
    theta,
    verify_action_laws,
    verify_ell_consistency,
    verify_transformation_laws,
    word_delta,
    word_delta_inv,
    word_log_Delta,
)


def test_range_source_inverse(mixed_group, rng):
    for _ in range(20):
        u = GroupoidArrow(mixed_group, float(rng.uniform()),
                          random_word(mixed_group, rng))
        v = u.inverse()
        np.testing.assert_allclose(v.range(), u.source(), atol=1e-12)
        np.testing.assert_allclose(v.source(), u.range(), atol=1e-9)


def test_delta_inverse_is_reciprocal(mixed_group, rng):
    for _ in range(20):
        u = GroupoidArrow(mixed_group, float(rng.uniform()),
                          random_word(mixed_group, rng))
        assert abs(Delta(u) * Delta(u.inverse()) - 1.0) < 1e-10
        assert abs(theta(u) - Delta(u.inverse())) < 1e-14


def test_unit_arrow_is_trivial(mixed_group, rng):
    u = GroupoidArrow(mixed_group, 0.42, GroupWord.identity())
    assert abs(Delta(u) - 1.0) < 1e-14
    assert abs(delta_small(u)) < 1e-14


def test_composition_requires_matching_points(mixed_group, rng):
    u = GroupoidArrow(mixed_group, 0.1, random_word(mixed_group, rng))
    v = GroupoidArrow(mixed_group, float(u.source()) + 0.25,
                      random_word(mixed_group, rng))
    with pytest.raises(ValueError):
        u.compose(v)


def test_transformation_laws(mixed_group):
    reports = verify_transformation_laws(mixed_group, n_pairs=200, seed=3)
    for rep in reports:
        assert rep["pass"], rep


def test_action_laws(mixed_group):
    rep = verify_action_laws(mixed_group, n_pairs=50, seed=4)
    assert rep["pass"], rep


def test_action_rejects_wrong_fiber_point(mixed_group, rng):
    u = GroupoidArrow(mixed_group, 0.3, mixed_group.word([(1, 1)]))
    bad = np.mod(u.source() + 0.2, 1.0)
    with pytest.raises(ValueError):
        act_Q(u, (bad, 0.0))
    with pytest.raises(ValueError):
        act_Hstar(u, (bad, 0.0, 0.0))


def test_act_q_shifts_by_log_delta(mixed_group, rng):
    for _ in range(10):
        u = GroupoidArrow(mixed_group, float(rng.uniform()),
                          random_word(mixed_group, rng))
        x, c = act_Q(u, (u.source(), 1.25))
        np.testing.assert_allclose(x, u.range(), atol=1e-12)
        assert abs(c - (1.25 + log_Delta(u))) < 1e-14


def test_ell_consistency(mixed_group):
    words = [mixed_group.word([(1, 1)]), mixed_group.word([(1, 1), (0, 1)]),
             mixed_group.word([(0, -1), (1, -1)])]
    rep = verify_ell_consistency(mixed_group, words)
    assert rep["pass"], rep


def test_word_helpers_match_arrow_data(mixed_group, rng):
    g = mixed_group
    w = g.word([(1, 1), (0, 1)])
    x = rng.uniform(0.0, 1.0, 16)
    u_data = []
    for xi in x:
        u = GroupoidArrow(g, xi, w)
        u_data.append((log_Delta(u), delta_small(u),
                       delta_small(u.inverse())))
    ld, dl, dli = map(np.array, zip(*u_data))
    np.testing.assert_allclose(word_log_Delta(g, w, x), ld, atol=1e-12)
    np.testing.assert_allclose(word_delta(g, w, x), dl, atol=1e-12)
    np.testing.assert_allclose(word_delta_inv(g, w, x), dli, atol=1e-10)


def test_rotations_have_trivial_modular_data(rotation_group, rng):
    for _ in range(10):
        u, v = random_composable_pair(rotation_group, rng)
        assert abs(Delta(u) - 1.0) < 1e-14
        assert abs(delta_small(u)) < 1e-14
