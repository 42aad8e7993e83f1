"""Godbillon-Vey cyclic cocycles on the crossed products and the residue
Chern character.

Three evaluators on shared group data:

- the 2-cocycle on C_c(V) x| Gamma,

      phi(f0, f1, f2) = sum over g0 g1 g2 = 1 of
          integral over the circle of
          f0_{g0}(x) f1_{g1}(x . g0) f2_{g2}(x . g0 g1)
          (ell'(g1 g2) ell(g2) - ell(g1 g2) ell'(g2))(x) dx,

  with ell(g)(x) = log d(x . g^{-1})/dx;
- the 1-cocycle on Q-kernels, phi1(a0, a1) = trace_Q(a0 * delta_1(a1));
- the Chern character of the dual-Dirac weight, computed both analytically
  (the trace formula above, prefactor (2 pi i)^{1/2} kept symbolic) and as
  a numeric residue at z = 0 of z tau_{H*}(a0 [B, a1] (1 + B^2)^{-1/2-z})
  by Richardson extrapolation.

No conversion constant between the 2-cocycle and 1-cocycle values is
asserted; both are reported on shared data as-is.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .convalg import (
    Kernel,
    convolve,
    delta1,
    resolvent_integral,
    resolvent_weighted_trace,
    trace_Q,
)
from .holonomy import word_delta_inv, word_log_Delta

N_CIRCLE = 2048

SQRT_2PI_I = cmath.sqrt(2j * math.pi)


class ResidueFailure(RuntimeError):
    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = estimates


class CocycleReport:
    """Value of a cocycle evaluation plus its verification trail."""

    __slots__ = ("value", "method", "quadrature_error", "checks", "extra")

    def __init__(self, value, method, quadrature_error=0.0, checks=None,
                 extra=None):
        self.value = complex(value)
        self.method = method
        self.quadrature_error = float(quadrature_error)
        self.checks = list(checks or [])
        self.extra = dict(extra or {})

    def add_check(self, name, defect, tol):
        self.checks.append(
            {
                "identity": name,
                "max_defect": float(defect),
                "tolerance": float(tol),
                "pass": bool(defect < tol),
            }
        )

    def all_pass(self):
        return all(c["pass"] for c in self.checks)

    def to_json(self):
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "method": self.method,
            "quadrature_error": self.quadrature_error,
            "checks": self.checks,
            "pass": bool(self.all_pass()),
            **self.extra,
        }


# ---------------------------------------------------------------------------
# the 2-cocycle on C_c(V) x| Gamma
# ---------------------------------------------------------------------------


def _circle_grid(n=N_CIRCLE):
    return np.arange(n) / n


def eval_cgv(f0: Kernel, f1: Kernel, f2: Kernel, n_grid=N_CIRCLE,
             equality_mode="free", drop_term=False) -> CocycleReport:
    """The transverse-fundamental 2-cocycle on V-kernels.

    Pairs (g0, g1) are enumerated over the supports of f0, f1 in
    lexicographic word order; g2 = (g0 g1)^{-1} contributes when it matches
    a support word of f2 under the declared word-equality mode.  The circle
    integral uses the periodic trapezoid rule (spectrally accurate here).

    drop_term=True drops the second term of the bracket; this breaks
    cyclicity and exists as a negative control.
    """
    for f in (f0, f1, f2):
        if f.space != "V":
            raise ValueError("eval_cgv expects kernels on V")
    f0._check_compatible(f1)
    f0._check_compatible(f2)
    group = f0.group
    x = _circle_grid(n_grid)
    total = 0j
    n_terms = 0
    for g0 in f0.words():
        x_g0 = group.act(g0, x)
        v0 = f0.terms[g0].fn(x)
        for g1 in f1.words():
            g2 = (g0 * g1).inverse()
            match = None
            for w in f2.words():
                if group.word_equal(g2, w, equality_mode):
                    match = w
                    break
            if match is None:
                continue
            x_g0g1 = group.act(g1, x_g0)
            v1 = f1.terms[g1].fn(np.mod(x_g0, 1.0))
            v2 = f2.terms[match].fn(np.mod(x_g0g1, 1.0))
            g1g2 = g1 * g2
            bracket = group.d_ell(g1g2, x) * group.ell(g2, x)
            if not drop_term:
                bracket = bracket - group.ell(g1g2, x) * group.d_ell(g2, x)
            total = total + np.mean(v0 * v1 * v2 * bracket)
            n_terms += 1
    report = CocycleReport(total, "trapezoid-2048", extra={"terms": n_terms})
    return report


def check_cyclic2(f0, f1, f2, f3, tol=1e-6, drop_term=False) -> CocycleReport:
    """Cyclicity and Hochschild closedness of the 2-cocycle.

    b phi(f0,f1,f2,f3) = phi(f0*f1,f2,f3) - phi(f0,f1*f2,f3)
                         + phi(f0,f1,f2*f3) - phi(f3*f0,f1,f2).
    """
    phi = lambda a, b, c: eval_cgv(a, b, c, drop_term=drop_term).value
    base = phi(f0, f1, f2)
    scale = max(abs(base), 1.0)
    cyc = abs(base - phi(f2, f0, f1)) / scale
    hochschild = (
        abs(
            phi(convolve(f0, f1), f2, f3)
            - phi(f0, convolve(f1, f2), f3)
            + phi(f0, f1, convolve(f2, f3))
            - phi(convolve(f3, f0), f1, f2)
        )
        / scale
    )
    report = CocycleReport(base, "trapezoid-2048")
    report.add_check("lambda-cyclicity of the 2-cocycle", cyc, tol)
    report.add_check("Hochschild closedness of the 2-cocycle", hochschild, tol)
    return report


# ---------------------------------------------------------------------------
# the 1-cocycle on Q-kernels
# ---------------------------------------------------------------------------


def eval_cmgv(a0: Kernel, a1: Kernel, rel_tol=1e-9, cross_check=True,
              tol=1e-8) -> CocycleReport:
    """phi1(a0, a1) = trace_Q(a0 * delta_1(a1)).

    The group sum over g0 g1 = 1 against the invariant weight is exactly
    the identity-word component of the convolution, so the trace formula
    is the definition.  With cross_check=True an independent direct double
    sum (explicit pullbacks, no convolution code path) is evaluated and
    compared.  The (2 pi i)^{1/2} prefactor of the Chern normalization is
    not included here.
    """
    if a0.space != "Q" or a1.space != "Q":
        raise ValueError("eval_cmgv expects kernels on Q")
    a0._check_compatible(a1)
    value, qerr = trace_Q(convolve(a0, delta1(a1)), rel_tol=rel_tol)
    report = CocycleReport(value, "trace-of-convolution", quadrature_error=qerr)
    if cross_check:
        direct = _cmgv_direct(a0, a1, rel_tol=rel_tol)
        defect = abs(value - direct) / max(abs(value), 1.0)
        report.add_check("trace formula vs direct double sum", defect, tol)
        report.extra["direct_value"] = {"re": direct.real, "im": direct.imag}
    return report


def _cmgv_direct(a0: Kernel, a1: Kernel, rel_tol=1e-9):
    """Direct evaluation of the double sum over g0 g1 = 1:

    sum_v integral of a0_v(x, c) e^c' delta(u_v^{-1})(x . v) a1_{v^{-1}}
    evaluated at the translated point (x . v, c - log Delta_v(x)), against
    the invariant weight e^{-c} dx dc.
    """
    from .convalg import adaptive_quad

    group = a0.group
    total = 0j
    qerr = 0.0
    for v in a0.words():
        if v.is_identity():
            continue  # delta_1 kills the identity word
        w = v.inverse()
        f1 = a1.terms.get(w)
        if f1 is None:
            continue
        f0 = a0.terms[v]
        if f0.c_box is None or f1.c_box is None:
            raise ValueError("direct double sum needs declared c supports")
        x_probe = (np.arange(1024) + 0.5) / 1024
        ld_vals = word_log_Delta(group, v, x_probe)
        c_lo = min(f0.c_box[0], f1.c_box[0] + float(ld_vals.min()) - 1e-6)
        c_hi = max(f0.c_box[1], f1.c_box[1] + float(ld_vals.max()) + 1e-6)

        def integrand(x, c, v=v, w=w, f0=f0, f1=f1):
            xv = group.act(v, x)
            ld = word_log_Delta(group, v, x)
            cp = c - ld
            return (
                f0.fn(x, c)
                * np.exp(cp)
                * word_delta_inv(group, w, xv)
                * f1.fn(np.mod(xv, 1.0), cp)
                * np.exp(-c)
            )

        val, err = adaptive_quad(integrand, [(0.0, 1.0), (c_lo, c_hi)],
                                 rel_tol=rel_tol)
        total += val
        qerr += err
    return total


def check_cyclic1(a0, a1, a2, tol=5e-7) -> CocycleReport:
    """Antisymmetry and b-closedness of the 1-cocycle:

    phi1(a0, a1) + phi1(a1, a0) = 0   (trace kills delta_1 of products),
    phi1(a0*a1, a2) - phi1(a0, a1*a2) + phi1(a2*a0, a1) = 0.
    """
    phi = lambda a, b: eval_cmgv(a, b, cross_check=False).value
    base = phi(a0, a1)
    scale = max(abs(base), 1.0)
    anti = abs(base + phi(a1, a0)) / scale
    bclosed = (
        abs(
            phi(convolve(a0, a1), a2)
            - phi(a0, convolve(a1, a2))
            + phi(convolve(a2, a0), a1)
        )
        / scale
    )
    report = CocycleReport(base, "trace-of-convolution")
    report.add_check("antisymmetry of the 1-cocycle", anti, tol)
    report.add_check("Hochschild closedness of the 1-cocycle", bclosed, tol)
    return report


# ---------------------------------------------------------------------------
# residue Chern character
# ---------------------------------------------------------------------------


def richardson_limit(zs, values):
    """Extrapolate g(z) -> g(0) from samples at a geometric z-sequence.

    zs must decrease by a constant ratio; the standard Richardson table
    for a power-series remainder in z is returned as its diagonal.
    """
    zs = [float(z) for z in zs]
    if len(zs) < 2:
        raise ValueError("need at least two samples to extrapolate")
    ratio = zs[0] / zs[1]
    for k in range(1, len(zs) - 1):
        if abs(zs[k] / zs[k + 1] - ratio) > 1e-12 * ratio:
            raise ValueError("z samples must form a geometric sequence")
    table = [list(values)]
    diag = [values[0]]
    for j in range(1, len(values)):
        prev = table[-1]
        r = ratio ** j
        table.append([(r * prev[i + 1] - prev[i]) / (r - 1.0)
                      for i in range(len(prev) - 1)])
        diag.append(table[-1][-1])
    return diag


DEFAULT_ZS = (0.2, 0.1, 0.05, 0.025)


def chern_character(a0: Kernel, a1: Kernel, zs=DEFAULT_ZS, rel_tol=1e-8,
                    agreement_tol=0.01) -> CocycleReport:
    """Chern character pairing of the dual-Dirac weight, two ways.

    Method A (analytic): (2 pi i)^{1/2} trace_Q(a0 * delta_1(a1)), using
    [B, a1] = delta_1(a1) and the exact residue of the fiberwise weight.

    Method B (numeric residue): F(z) = tau_{H*}(a0 [B, a1] (1+B^2)^{-1/2-z})
    by direct 3-D quadrature (the eta half-line, matching the
    Gamma(1/2)Gamma(z)/(2 Gamma(1/2+z)) residue convention whose residue at
    z = 0 is 1/2), then 2 (2 pi i)^{1/2} lim z F(z) by Richardson
    extrapolation on a geometric z-sequence.

    The (2 pi i)^{1/2} prefactor is reported separately; `value` carries it.
    """
    b = convolve(a0, delta1(a1))
    tq, qerr = trace_Q(b, rel_tol=rel_tol)
    analytic = SQRT_2PI_I * tq

    estimates = []
    samples = []
    for z in zs:
        F = resolvent_weighted_trace(b, 1.0 + 2.0 * z, method="direct",
                                     rel_tol=rel_tol, half=True)
        samples.append(z * F)
    diag = richardson_limit(zs, samples)
    L = diag[-1]
    cauchy = abs(diag[-1] - diag[-2])
    if cauchy > 10.0 * agreement_tol * max(abs(L), 1e-30):
        raise ResidueFailure(
            f"residue extrapolation not Cauchy: last steps differ by "
            f"{cauchy:.3e} against estimate {abs(L):.3e}",
            estimates=diag,
        )
    numeric = 2.0 * SQRT_2PI_I * L

    rel_gap = abs(analytic - numeric) / max(abs(analytic), 1e-30)
    report = CocycleReport(
        analytic,
        "analytic-trace",
        quadrature_error=qerr,
        extra={
            "prefactor": {"re": SQRT_2PI_I.real, "im": SQRT_2PI_I.imag},
            "value_without_prefactor": {"re": tq.real, "im": tq.imag},
            "numeric_residue_value": {"re": numeric.real, "im": numeric.imag},
            "z_samples": list(zs),
            "extrapolation_diagonal": [
                {"re": d.real, "im": d.imag} for d in diag
            ],
        },
    )
    report.add_check("analytic vs residue-extrapolated Chern value",
                     rel_gap, agreement_tol)
    return report


def residue_limit_check(zs=DEFAULT_ZS, rel_tol=1e-10, tol=1e-4) -> CocycleReport:
    """Numeric check that lim_{z->0} z * integral over R of
    (1+t^2)^{-1/2-z} dt equals 1 (so the half-line residue is 1/2)."""
    samples = [z * resolvent_integral(1.0 + 2.0 * z, rel_tol=rel_tol)
               for z in zs]
    diag = richardson_limit(zs, samples)
    limit = diag[-1]
    report = CocycleReport(
        limit,
        "richardson",
        extra={"z_samples": list(zs),
               "extrapolation_diagonal": [float(np.real(d)) for d in diag]},
    )
    report.add_check("residue of the full-line resolvent integral equals 1",
                     abs(limit - 1.0), tol)
    return report
