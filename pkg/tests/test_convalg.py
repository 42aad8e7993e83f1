import math

import numpy as np
import pytest

from gvtriple.convalg import (
    FiberFunction,
    Kernel,
    QuadratureError,
    apply_B,
    check_B1_equivariance,
    commutator_B,
    convolve,
    delta1,
    fiber_from_descriptor,
    involution,
    kernel_max_defect,
    left_action,
    random_kernel,
    resolvent_integral,
    resolvent_weighted_trace,
    trace_Hstar,
    trace_Q,
    translate_fiber,
)
from gvtriple.diffeo import GroupWord, random_word
from gvtriple.holonomy import GroupoidArrow


@pytest.fixture
def q_kernels(mixed_group, rng):
    e = GroupWord.identity()
    b = mixed_group.word([(1, 1)])
    a = mixed_group.word([(0, 1)])
    ws = [e, a, b, b.inverse(), a * b]
    return [
        random_kernel("Q", mixed_group, ws[i:i + 3], rng) for i in range(3)
    ]


def test_convolution_associativity(q_kernels):
    a, b, c = q_kernels
    lhs = convolve(convolve(a, b), c)
    rhs = convolve(a, convolve(b, c))
    assert kernel_max_defect(lhs, rhs, seed=1) < 1e-9


def test_unit_kernel(mixed_group, q_kernels):
    a = q_kernels[0]
    unit = Kernel.unit("Q", mixed_group)
    assert kernel_max_defect(convolve(a, unit), a, seed=2) < 1e-12
    assert kernel_max_defect(convolve(unit, a), a, seed=3) < 1e-12


def test_involution_laws(q_kernels):
    a, b, _ = q_kernels
    assert kernel_max_defect(involution(involution(a)), a, seed=4) < 1e-12
    lhs = involution(convolve(a, b))
    rhs = convolve(involution(b), involution(a))
    assert kernel_max_defect(lhs, rhs, seed=5) < 1e-9


def test_trace_q_oracle(mixed_group):
    # trig = 1, unit Gaussian bump in c: integral of e^{-c^2/2} e^{-c}
    # over the line is sqrt(2 pi) e^{1/2}
    f = fiber_from_descriptor("Q", [(0, 1.0)], (0.0, 1.0))
    a = Kernel("Q", mixed_group, {GroupWord.identity(): f})
    val, err = trace_Q(a)
    exact = math.sqrt(2 * math.pi) * math.exp(0.5)
    assert abs(val - exact) < 1e-9 * exact
    assert err < 1e-8


def test_trace_hstar_oracle(mixed_group):
    f = fiber_from_descriptor("Hstar", [(0, 1.0)], (0.0, 1.0), (0.0, 1.0))
    a = Kernel("Hstar", mixed_group, {GroupWord.identity(): f})
    val, _ = trace_Hstar(a)
    assert abs(val - 2 * math.pi) < 1e-8


def test_trace_vanishes_on_commutators(q_kernels):
    a, b, _ = q_kernels
    t_ab, _ = trace_Q(convolve(a, b))
    t_ba, _ = trace_Q(convolve(b, a))
    assert abs(t_ab - t_ba) < 5e-8


def test_trace_requires_identity_component(mixed_group, rng):
    b = mixed_group.word([(1, 1)])
    a = random_kernel("Q", mixed_group, [b], rng)
    val, err = trace_Q(a)
    assert val == 0j and err == 0.0


def test_trace_requires_support_box(mixed_group):
    one = FiberFunction("Q", lambda x, c: np.ones_like(x + c))
    a = Kernel("Q", mixed_group, {GroupWord.identity(): one})
    with pytest.raises(ValueError):
        trace_Q(a)


def test_quadrature_error_carries_best_estimate(mixed_group):
    # a kink keeps Gauss-Legendre refinements from agreeing to 1e-30
    f = FiberFunction("Q", lambda x, c: np.abs(x - 0.337) * np.exp(-c * c),
                      c_box=(-8.0, 8.0))
    a = Kernel("Q", mixed_group, {GroupWord.identity(): f})
    with pytest.raises(QuadratureError) as exc:
        trace_Q(a, rel_tol=1e-30, max_levels=2)
    assert exc.value.err is not None and exc.value.best is not None


def test_translate_fiber_is_group_action(mixed_group, rng):
    g = mixed_group
    v = g.word([(1, 1)])
    w = g.word([(0, -1), (1, 1)])
    f = fiber_from_descriptor("Hstar", [(1, 0.5 + 0.2j)], (0.1, 0.8),
                              (0.0, 0.9))
    two_step = translate_fiber(g, v, translate_fiber(g, w, f))
    one_step = translate_fiber(g, v * w, f)
    x = rng.uniform(0, 1, 50)
    c = rng.uniform(-1, 1, 50)
    eta = rng.uniform(-1, 1, 50)
    np.testing.assert_allclose(two_step(x, c, eta), one_step(x, c, eta),
                               atol=1e-10)


def test_delta1_is_derivation(q_kernels):
    a, b, _ = q_kernels
    lhs = delta1(convolve(a, b))
    rhs = convolve(delta1(a), b) + convolve(a, delta1(b))
    assert kernel_max_defect(lhs, rhs, seed=6) < 1e-8


def test_delta1_kills_identity_word(mixed_group, rng):
    a = random_kernel("Q", mixed_group, [GroupWord.identity()], rng)
    assert not delta1(a).terms


def test_commutator_B_two_paths(mixed_group, q_kernels, rng):
    a = q_kernels[0]
    rho = random_kernel("Hstar", mixed_group,
                        [GroupWord.identity(), mixed_group.word([(1, 1)])],
                        rng)
    _kernel, rep = commutator_B(a, rho, n_points=200, seed=7)
    assert rep["pass"] and rep["max_defect"] < 1e-9


def test_left_action_is_module_action(mixed_group, q_kernels, rng):
    a, b, _ = q_kernels
    rho = random_kernel("Hstar", mixed_group,
                        [GroupWord.identity(), mixed_group.word([(1, -1)])],
                        rng)
    lhs = left_action(convolve(a, b), rho)
    rhs = left_action(a, left_action(b, rho))
    assert kernel_max_defect(lhs, rhs, seed=8) < 1e-9


def test_apply_B_is_multiplication(mixed_group, rng):
    rho = random_kernel("Hstar", mixed_group, [GroupWord.identity()], rng)
    out = apply_B(rho)
    x = rng.uniform(0, 1, 20)
    c = rng.uniform(-1, 1, 20)
    eta = rng.uniform(-1, 1, 20)
    f = rho.terms[GroupWord.identity()]
    np.testing.assert_allclose(
        out.terms[GroupWord.identity()](x, c, eta),
        np.exp(c) * eta * f(x, c, eta),
        atol=1e-14,
    )


def test_B1_equivariance(mixed_group, rng):
    for _ in range(3):
        u = GroupoidArrow(mixed_group, float(rng.uniform()),
                          random_word(mixed_group, rng, max_len=3))
        rep = check_B1_equivariance(u)
        assert rep["pass"], rep


def test_resolvent_integral_values():
    assert abs(resolvent_integral(2.0) - math.pi) < 1e-10
    assert abs(resolvent_integral(3.0) - 2.0) < 1e-10
    exact = math.sqrt(math.pi) * math.gamma(0.25) / math.gamma(0.75)
    assert abs(resolvent_integral(1.5) - exact) < 1e-9 * exact
    assert abs(resolvent_integral(2.0, half=True) - math.pi / 2) < 1e-10


def test_resolvent_integral_divergence_guard():
    with pytest.raises(ValueError):
        resolvent_integral(1.0)
    with pytest.raises(ValueError):
        resolvent_weighted_trace(None, 0.5)


def test_summability_two_methods(q_kernels):
    a = q_kernels[0]
    for s in (1.5, 2.0, 2.5):
        va = resolvent_weighted_trace(a, s, method="factorized")
        vb = resolvent_weighted_trace(a, s, method="direct")
        assert abs(va - vb) / abs(va) < 1e-6


def test_threads_do_not_change_results(mixed_group, monkeypatch, q_kernels):
    a, b, _ = q_kernels
    val1, _ = trace_Q(convolve(a, b))
    monkeypatch.setenv("GVTRIPLE_THREADS", "4")
    val2, _ = trace_Q(convolve(a, b))
    assert val1 == val2


def test_space_mismatch_rejected(mixed_group, rng):
    a = random_kernel("Q", mixed_group, [GroupWord.identity()], rng)
    rho = random_kernel("Hstar", mixed_group, [GroupWord.identity()], rng)
    with pytest.raises(ValueError):
        convolve(a, rho)
    with pytest.raises(ValueError):
        trace_Q(rho)
    with pytest.raises(ValueError):
        left_action(rho, rho)
