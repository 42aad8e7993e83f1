"""End-to-end acceptance checks with pinned tolerances.

Each test here is a gate: the exact sample sizes and tolerances are part
of the contract and must not be loosened to make a run pass.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from gvtriple import clifford, cocycles, convalg, holonomy, jetforms
from gvtriple.cli import ExperimentConfig, run_suite
from gvtriple.diffeo import GroupWord


# -- 1. Clifford: pushforward square and module actions ---------------------


def test_clifford_functoriality_gate():
    rep = clifford.verify_functoriality(ranks=(1, 2, 3, 4, 5), n_maps=200,
                                        seed=2024, tol=1e-10)
    assert rep["max_defect"] < 1e-10
    assert rep["pass"], rep


# -- 2. Holonomy: modular laws and the log-derivative cocycle ---------------


def test_holonomy_modular_laws_gate(mixed_group):
    reports = holonomy.verify_transformation_laws(mixed_group, n_pairs=500,
                                                  seed=71, tol=1e-8)
    for rep in reports:
        assert rep["max_defect"] < 1e-8, rep


def test_holonomy_ell_cocycle_gate(mixed_group):
    g = mixed_group
    x = (np.arange(64) + 0.5) / 64
    rng = np.random.default_rng(72)
    from gvtriple.diffeo import random_word
    worst = 0.0
    for _ in range(50):
        gw, hw = random_word(g, rng), random_word(g, rng)
        defect = np.max(np.abs(
            g.ell(gw * hw, x) - g.ell(hw, x) - g.ell(gw, g.act(hw.inverse(), x))
        ))
        worst = max(worst, float(defect))
    assert worst < 1e-9


# -- 3. Forms: exact identities and the integer-factor adjudication ---------


def test_forms_exact_identities_gate():
    for name, _res, ok in jetforms.check_jet_equations():
        assert ok, name
    for name, _res, ok in jetforms.check_structure_equations():
        assert ok, name
    gv_conn, gv_triple, ref = jetforms.godbillon_vey_form()
    assert (gv_conn - ref).is_zero()
    assert (gv_triple - ref).is_zero()


def test_forms_adjudication_gate():
    rep = jetforms.adjudicate_dodgys(jetforms.default_dodgys_families())
    assert rep["defect_12"] < 1e-7
    assert rep["defect_23"] > 1e-2


# -- 4. Algebra: convolution calculus, dual Dirac, summability --------------


@pytest.fixture(scope="module")
def algebra_fixtures(mixed_group):
    rng = np.random.default_rng(404)
    e = GroupWord.identity()
    a_w = mixed_group.word([(0, 1)])
    b_w = mixed_group.word([(1, 1)])
    words = [e, a_w, b_w, b_w.inverse(), a_w * b_w]
    a = convalg.random_kernel("Q", mixed_group, words[:3], rng)
    b = convalg.random_kernel("Q", mixed_group, words[1:4], rng)
    c = convalg.random_kernel("Q", mixed_group, words[2:5], rng)
    rho = convalg.random_kernel("Hstar", mixed_group, words[:3], rng)
    return a, b, c, rho


def test_algebra_associativity_gate(algebra_fixtures):
    a, b, c, _ = algebra_fixtures
    defect = convalg.kernel_max_defect(
        convalg.convolve(convalg.convolve(a, b), c),
        convalg.convolve(a, convalg.convolve(b, c)),
        seed=405,
    )
    assert defect < 1e-9


def test_algebra_trace_commutator_gate(algebra_fixtures):
    a, b, _, _ = algebra_fixtures
    t_ab, _ = convalg.trace_Q(convalg.convolve(a, b))
    t_ba, _ = convalg.trace_Q(convalg.convolve(b, a))
    assert abs(t_ab - t_ba) < 5e-8


def test_algebra_delta1_derivation_gate(algebra_fixtures):
    a, b, _, _ = algebra_fixtures
    defect = convalg.kernel_max_defect(
        convalg.delta1(convalg.convolve(a, b)),
        convalg.convolve(convalg.delta1(a), b)
        + convalg.convolve(a, convalg.delta1(b)),
        seed=406,
    )
    assert defect < 1e-8


def test_algebra_commutator_identity_gate(algebra_fixtures):
    a, _, _, rho = algebra_fixtures
    _kernel, rep = convalg.commutator_B(a, rho, n_points=200, seed=407,
                                        tol=1e-9)
    assert rep["max_defect"] < 1e-9


def test_algebra_equivariance_gate(mixed_group):
    rng = np.random.default_rng(408)
    from gvtriple.diffeo import random_word
    for _ in range(5):
        u = holonomy.GroupoidArrow(mixed_group, float(rng.uniform()),
                                   random_word(mixed_group, rng, max_len=3))
        rep = convalg.check_B1_equivariance(u, tol=1e-9)
        assert rep["b_eta_independence"] < 1e-9
        assert rep["max_defect"] < 1e-9


def test_algebra_summability_gate(algebra_fixtures):
    a, _, _, _ = algebra_fixtures
    for s in (1.5, 2.0, 2.5):
        va = convalg.resolvent_weighted_trace(a, s, method="factorized")
        vb = convalg.resolvent_weighted_trace(a, s, method="direct")
        assert abs(va - vb) / abs(va) < 1e-6, s
    assert abs(convalg.resolvent_integral(2.0) - math.pi) < 1e-10


# -- 5. Cocycles: axioms, Chern agreement, residue limit --------------------


@pytest.fixture(scope="module")
def cocycle_fixtures(mixed_group):
    rng = np.random.default_rng(505)
    e = GroupWord.identity()
    a_w = mixed_group.word([(0, 1)])
    b_w = mixed_group.word([(1, 1)])
    v_words = [e, a_w, a_w.inverse(), b_w, b_w.inverse(),
               b_w * b_w, (b_w * b_w).inverse(),
               a_w * b_w, (a_w * b_w).inverse()]
    fs = [convalg.random_kernel("V", mixed_group, v_words, rng, trig_deg=1)
          for _ in range(4)]
    q_words = [e, b_w, b_w.inverse(), a_w]
    qs = [convalg.random_kernel("Q", mixed_group, q_words, rng, trig_deg=1)
          for _ in range(3)]
    return fs, qs, rng


def test_cocycle_2_axioms_gate(cocycle_fixtures):
    fs, _, _ = cocycle_fixtures
    rep = cocycles.check_cyclic2(*fs, tol=1e-6)
    assert abs(rep.value) > 0.0  # nondegenerate fixture
    for chk in rep.checks:
        assert chk["max_defect"] < 1e-6, chk


def test_cocycle_1_axioms_gate(cocycle_fixtures):
    _, qs, _ = cocycle_fixtures
    rep = cocycles.check_cyclic1(*qs, tol=5e-7)
    for chk in rep.checks:
        assert chk["max_defect"] < 5e-7, chk


def test_chern_agreement_gate(mixed_group, cocycle_fixtures):
    _, _, rng = cocycle_fixtures
    e = GroupWord.identity()
    b_w = mixed_group.word([(1, 1)])
    words = [e, b_w, b_w.inverse()]
    for i in range(5):
        a0 = convalg.random_kernel("Q", mixed_group, words, rng, trig_deg=1)
        a1 = convalg.random_kernel("Q", mixed_group, words, rng, trig_deg=1)
        rep = cocycles.chern_character(a0, a1, agreement_tol=0.01)
        assert rep.checks[0]["max_defect"] < 0.01, (i, rep.checks)


def test_residue_limit_gate():
    rep = cocycles.residue_limit_check(tol=1e-4)
    assert abs(rep.value - 1.0) < 1e-4


# -- 6. Negative controls: perturbed identities must fail -------------------


def test_negative_controls_fail():
    status, report = run_suite(ExperimentConfig(suite="negative"))
    assert status != 0
    assert report["checks"], "negative suite must contain checks"
    assert all(not chk["pass"] for chk in report["checks"]), report["checks"]


def test_negative_dropped_bracket_term(cocycle_fixtures):
    fs, _, _ = cocycle_fixtures
    rep = cocycles.check_cyclic2(*fs, drop_term=True)
    assert any(chk["max_defect"] > 1e-3 for chk in rep.checks)


def test_negative_structure_equation_perturbation():
    results = dict(
        (name, ok)
        for name, _res, ok in jetforms.check_structure_equations(perturb=True)
    )
    assert not results["dw0 + w1^w0"]


# -- 7. Determinism of the CLI under a fixed seed ----------------------------


def test_full_verify_run_is_bitwise_deterministic(tmp_path):
    outs = []
    for name in ("run1", "run2"):
        out = tmp_path / f"{name}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "gvtriple.cli", "verify", "--suite",
             "all", "--seed", "7", "--out", str(out)],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr.decode()
        outs.append(out)
    assert outs[0].read_bytes() == outs[1].read_bytes()
    csvs = [out.with_suffix(".csv") for out in outs]
    assert csvs[0].read_bytes() == csvs[1].read_bytes()
    report = json.loads(outs[0].read_text())
    assert report["pass"]
