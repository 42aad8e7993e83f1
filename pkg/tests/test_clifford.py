import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gvtriple.clifford import (
    CliffordElement,
    OrthogonalMap,
    clifford_left,
    clifford_right,
    geometric_product,
    psi,
    psi_inverse,
    pushforward_clifford,
    pushforward_exterior,
    random_element,
    verify_functoriality,
    wedge_product,
)


def blade(rank, idx, val=1.0):
    return CliffordElement.blade(rank, idx, val, "complex")


def test_unit_vector_squares():
    e1 = CliffordElement.blade(2, (1,))
    assert geometric_product(e1, e1) == CliffordElement.scalar(2, 1.0)


def test_orthogonal_generators():
    e1, e2 = CliffordElement.blade(2, (1,)), CliffordElement.blade(2, (2,))
    assert geometric_product(e1, e2) == CliffordElement.blade(2, (1, 2))
    # hand-expanded: (e1+e2)(e1-e2) = 1 - e1e2 + e2e1 - 1 = -2 e1e2
    assert geometric_product(e1 + e2, e1 - e2) == CliffordElement.blade(
        2, (1, 2), -2.0
    )


def test_vector_square_is_norm(rng):
    for rank in range(1, 6):
        v = rng.normal(size=rank)
        el = CliffordElement.vector(rank, v)
        sq = geometric_product(el, el)
        assert (sq - CliffordElement.scalar(rank, float(v @ v))).norm_inf() < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10_000))
def test_geometric_product_associative(rank, seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_element(rank, rng) for _ in range(3))
    lhs = geometric_product(geometric_product(a, b), c)
    rhs = geometric_product(a, geometric_product(b, c))
    assert (lhs - rhs).norm_inf() < 1e-10


def test_grading_respected(rng):
    a = random_element(4, rng).even_part()
    b = random_element(4, rng).odd_part()
    prod = geometric_product(a, b)
    assert prod.even_part().norm_inf() == 0.0


def test_psi_blades():
    w = blade(3, (1, 2))
    assert psi(w) == blade(3, (1, 2))
    assert psi_inverse(psi(w)) == w
    # antisymmetry lives in the wedge, before psi
    e1, e2 = blade(3, (1,)), blade(3, (2,))
    assert wedge_product(e2, e1) == blade(3, (1, 2), -1.0)


def test_wedge_kills_repeats():
    e1 = blade(2, (1,))
    assert wedge_product(e1, e1).norm_inf() == 0.0


def test_clifford_actions():
    e1 = blade(2, (1,))
    w = blade(2, (1, 2))
    assert clifford_left(e1, w) == blade(2, (2,))
    assert clifford_right(e1, w) == blade(2, (2,), -1.0)
    one = CliffordElement.scalar(2, 1.0, "complex")
    assert clifford_left(one, w) == w


def test_left_right_actions_commute(rng):
    for rank in range(1, 6):
        a, b, w = (random_element(rank, rng) for _ in range(3))
        lhs = clifford_left(a, clifford_right(b, w))
        rhs = clifford_right(b, clifford_left(a, w))
        assert (lhs - rhs).norm_inf() < 1e-10


def test_identity_pushforward(rng):
    A = OrthogonalMap(np.eye(3))
    a = random_element(3, rng)
    assert (pushforward_clifford(A, a) - a).norm_inf() < 1e-14
    assert (pushforward_exterior(A, a) - a).norm_inf() < 1e-14


def test_so2_fixes_pseudoscalar():
    th = 0.7
    A = OrthogonalMap([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    ps = blade(2, (1, 2))
    assert (pushforward_clifford(A, ps) - ps).norm_inf() < 1e-14


def test_non_orthogonal_rejected():
    with pytest.raises(ValueError):
        OrthogonalMap([[1.0, 0.1], [0.0, 1.0]])


def test_rank_field_mismatch_rejected():
    a = CliffordElement.blade(2, (1,))
    b = CliffordElement.blade(3, (1,))
    with pytest.raises(ValueError):
        geometric_product(a, b)
    c = CliffordElement.blade(2, (1,), 1.0, "complex")
    with pytest.raises(ValueError):
        geometric_product(a, c)


def test_real_elements_reject_imaginary():
    with pytest.raises(ValueError):
        CliffordElement(2, "real", {(1,): 1j})


def test_json_round_trip(rng):
    a = random_element(3, rng)
    data = a.to_json()
    assert data["rank"] == 3 and data["field"] == "complex"
    back = CliffordElement.from_json(data)
    assert (a - back).norm_inf() == 0.0


def test_pushforward_square_small(rng):
    rep = verify_functoriality(ranks=(1, 2, 3), n_maps=20, seed=5)
    assert rep["pass"], rep
