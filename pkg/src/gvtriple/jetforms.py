"""Exact exterior calculus in the jet coordinates u0, u1, u2, u3.

Coefficients live in the field of rational functions over Q in the four
variables, stored exactly (``fractions.Fraction`` coefficients), so the
tautological-form identities are verified as equalities of canonical forms
rather than as numerical approximations.

The numeric adjudication of the first-order jet equations (the lines
du1 = u2 w0 + a*u1 w1 and du2 = u3 w0 + b*u2 w1 + u1 w2, with disputed
integer factors a, b) lives in :func:`adjudicate_dodgys`.
"""

from __future__ import annotations

from fractions import Fraction
import math

NVARS = 4
VAR_NAMES = ("u0", "u1", "u2", "u3")

_ZERO_EXP = (0, 0, 0, 0)


class Poly:
    """Sparse polynomial in u0..u3 over Q.

    coeffs maps exponent tuples (e0, e1, e2, e3) to nonzero Fractions.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for exp, c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    self.coeffs[tuple(exp)] = c

    @staticmethod
    def const(c) -> "Poly":
        return Poly({_ZERO_EXP: Fraction(c)})

    @staticmethod
    def var(i: int, power: int = 1) -> "Poly":
        exp = [0] * NVARS
        exp[i] = power
        return Poly({tuple(exp): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            s = out.get(exp, Fraction(0)) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        p = Poly()
        p.coeffs = out
        return p

    def __neg__(self) -> "Poly":
        p = Poly()
        p.coeffs = {exp: -c for exp, c in self.coeffs.items()}
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        p = Poly()
        p.coeffs = out
        return p

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly()
        p = Poly()
        p.coeffs = {exp: k * c for exp, k in self.coeffs.items()}
        return p

    def derivative(self, i: int) -> "Poly":
        out = {}
        for exp, c in self.coeffs.items():
            if exp[i] == 0:
                continue
            new = list(exp)
            new[i] -= 1
            out[tuple(new)] = c * exp[i]
        p = Poly()
        p.coeffs = out
        return p

    def content(self) -> Fraction:
        """gcd of the coefficients, signed by the lex-leading coefficient."""
        if not self.coeffs:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.coeffs.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        g = Fraction(num, den)
        if self.leading_coeff() < 0:
            g = -g
        return g

    def leading_exp(self):
        return max(self.coeffs) if self.coeffs else None

    def leading_coeff(self) -> Fraction:
        return self.coeffs[max(self.coeffs)] if self.coeffs else Fraction(0)

    def monomial_gcd(self):
        """Componentwise min of exponent tuples; (0,..) for the zero poly."""
        if not self.coeffs:
            return _ZERO_EXP
        mins = [min(exp[i] for exp in self.coeffs) for i in range(NVARS)]
        return tuple(mins)

    def shift_down(self, mono) -> "Poly":
        p = Poly()
        p.coeffs = {
            tuple(a - b for a, b in zip(exp, mono)): c
            for exp, c in self.coeffs.items()
        }
        return p

    def divide(self, d: "Poly"):
        """Exact multivariate division: return q with self == d*q, else None."""
        if d.is_zero():
            return None
        rem = Poly()
        rem.coeffs = dict(self.coeffs)
        q = Poly()
        d_lead = d.leading_exp()
        d_lc = d.coeffs[d_lead]
        while not rem.is_zero():
            r_lead = rem.leading_exp()
            exp = tuple(a - b for a, b in zip(r_lead, d_lead))
            if any(e < 0 for e in exp):
                return None
            term = Poly({exp: rem.coeffs[r_lead] / d_lc})
            q = q + term
            rem = rem - term * d
        return q

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exp in sorted(self.coeffs, reverse=True):
            c = self.coeffs[exp]
            mono = "*".join(
                f"{VAR_NAMES[i]}^{e}" if e > 1 else VAR_NAMES[i]
                for i, e in enumerate(exp)
                if e
            )
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


class RationalFunction:
    """Quotient of two Polys, normalized by content, monomial gcd and a
    divisibility probe (full multivariate gcd is not needed at this scale:
    equality is always decided by cross-multiplication, which is exact)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        if den is None:
            den = Poly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den
        self._normalize()

    def _normalize(self):
        if self.num.is_zero():
            self.den = Poly.const(1)
            return
        # strip common monomial factor
        mono = tuple(
            min(a, b)
            for a, b in zip(self.num.monomial_gcd(), self.den.monomial_gcd())
        )
        if any(mono):
            self.num = self.num.shift_down(mono)
            self.den = self.den.shift_down(mono)
        # exact-division probes catch the frequent full cancellations
        q = self.num.divide(self.den)
        if q is not None:
            self.num, self.den = q, Poly.const(1)
        else:
            q = self.den.divide(self.num)
            if q is not None:
                self.num, self.den = Poly.const(1), q
        # make denominator content 1 with positive leading coefficient
        g = self.den.content()
        self.num = self.num.scale(1 / g)
        self.den = self.den.scale(1 / g)

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(Poly.const(c))

    @staticmethod
    def var(i: int) -> "RationalFunction":
        return RationalFunction(Poly.var(i))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self, i: int) -> "RationalFunction":
        # quotient rule; normalization trims the square where possible
        return RationalFunction(
            self.num.derivative(i) * self.den - self.num * self.den.derivative(i),
            self.den * self.den,
        )

    def __repr__(self):
        if self.den == Poly.const(1):
            return f"({self.num})"
        return f"({self.num}) / ({self.den})"


class ExtForm:
    """Exterior form on the u0..u3 chart.

    coeffs maps ascending index tuples S (len(S) == degree) to
    RationalFunction; antisymmetry is structural.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs=None):
        if not 0 <= degree <= NVARS:
            raise ValueError("degree out of range")
        self.degree = degree
        self.coeffs = {}
        if coeffs:
            for S, rf in coeffs.items():
                S = tuple(S)
                if len(S) != degree or list(S) != sorted(set(S)):
                    raise ValueError(f"bad blade index set {S}")
                if not rf.is_zero():
                    self.coeffs[S] = rf

    @staticmethod
    def zero(degree: int = 0) -> "ExtForm":
        return ExtForm(degree)

    @staticmethod
    def function(rf: RationalFunction) -> "ExtForm":
        return ExtForm(0, {(): rf})

    @staticmethod
    def d_var(i: int) -> "ExtForm":
        """The coordinate 1-form du_i."""
        return ExtForm(1, {(i,): RationalFunction.const(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtForm):
            return NotImplemented
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        keys = set(self.coeffs) | set(other.coeffs)
        zero = RationalFunction.const(0)
        return all(
            self.coeffs.get(S, zero) == other.coeffs.get(S, zero) for S in keys
        )

    def __add__(self, other: "ExtForm") -> "ExtForm":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("degree mismatch in form addition")
        out = dict(self.coeffs)
        for S, rf in other.coeffs.items():
            s = out.get(S)
            s = rf if s is None else s + rf
            if s.is_zero():
                out.pop(S, None)
            else:
                out[S] = s
        f = ExtForm(self.degree)
        f.coeffs = out
        return f

    def __neg__(self) -> "ExtForm":
        f = ExtForm(self.degree)
        f.coeffs = {S: -rf for S, rf in self.coeffs.items()}
        return f

    def __sub__(self, other: "ExtForm") -> "ExtForm":
        return self + (-other)

    def scale(self, rf: RationalFunction) -> "ExtForm":
        f = ExtForm(self.degree)
        if not rf.is_zero():
            f.coeffs = {S: rf * c for S, c in self.coeffs.items()}
        return f


def _merge_sign(S, T):
    """Merge two ascending tuples; return (merged, sign) or (None, 0)."""
    if set(S) & set(T):
        return None, 0
    merged = sorted(S + T)
    inversions = sum(1 for s in S for t in T if t < s)
    return tuple(merged), (-1) ** inversions


def wedge(a: ExtForm, b: ExtForm) -> ExtForm:
    """Exterior product; degree overflow beyond the chart yields zero."""
    deg = a.degree + b.degree
    if deg > NVARS:
        return ExtForm.zero(min(deg, NVARS))
    out = ExtForm(deg)
    acc = {}
    for S, rf in a.coeffs.items():
        for T, rg in b.coeffs.items():
            merged, sign = _merge_sign(S, T)
            if merged is None:
                continue
            term = rf * rg
            if sign < 0:
                term = -term
            cur = acc.get(merged)
            cur = term if cur is None else cur + term
            if cur.is_zero():
                acc.pop(merged, None)
            else:
                acc[merged] = cur
    out.coeffs = acc
    return out


def exterior_derivative(a: ExtForm) -> ExtForm:
    if a.degree >= NVARS:
        return ExtForm.zero(NVARS)
    out = ExtForm(a.degree + 1)
    acc = {}
    for S, rf in a.coeffs.items():
        for i in range(NVARS):
            if i in S:
                continue
            drf = rf.derivative(i)
            if drf.is_zero():
                continue
            merged, sign = _merge_sign((i,), S)
            term = drf if sign > 0 else -drf
            cur = acc.get(merged)
            cur = term if cur is None else cur + term
            if cur.is_zero():
                acc.pop(merged, None)
            else:
                acc[merged] = cur
    out.coeffs = acc
    return out


def tautological_forms():
    """The 1-forms w0, w1, w2 solving the triangular jet equations

        du0 = u1 w0
        du1 = u2 w0 + u1 w1
        du2 = u3 w0 + 2 u2 w1 + u1 w2
    """
    u1 = RationalFunction.var(1)
    u2 = RationalFunction.var(2)
    u3 = RationalFunction.var(3)
    du0, du1, du2 = ExtForm.d_var(0), ExtForm.d_var(1), ExtForm.d_var(2)
    w0 = du0.scale(RationalFunction.const(1) / u1)
    w1 = (du1 - w0.scale(u2)).scale(RationalFunction.const(1) / u1)
    w2 = (du2 - w0.scale(u3) - w1.scale(RationalFunction.const(2) * u2)).scale(
        RationalFunction.const(1) / u1
    )
    return w0, w1, w2


def check_jet_equations():
    """Substitute the tautological forms back into the defining equations.

    Returns a list of (name, residual ExtForm, pass flag); every residual
    must be the zero form.
    """
    u1 = RationalFunction.var(1)
    u2 = RationalFunction.var(2)
    u3 = RationalFunction.var(3)
    w0, w1, w2 = tautological_forms()
    eqs = [
        ("du0 - u1*w0", ExtForm.d_var(0) - w0.scale(u1)),
        ("du1 - u2*w0 - u1*w1", ExtForm.d_var(1) - w0.scale(u2) - w1.scale(u1)),
        (
            "du2 - u3*w0 - 2*u2*w1 - u1*w2",
            ExtForm.d_var(2)
            - w0.scale(u3)
            - w1.scale(RationalFunction.const(2) * u2)
            - w2.scale(u1),
        ),
    ]
    return [(name, res, res.is_zero()) for name, res in eqs]


def check_structure_equations(perturb: bool = False):
    """Verify dw0 + w1^w0 = 0 and dw1 + w2^w0 = 0 exactly.

    With perturb=True a coefficient of w1 is bumped by 1, which must break
    the identities (negative control).
    """
    w0, w1, w2 = tautological_forms()
    if perturb:
        w1 = w1 + ExtForm.d_var(1)
    eqs = [
        ("dw0 + w1^w0", exterior_derivative(w0) + wedge(w1, w0)),
        ("dw1 + w2^w0", exterior_derivative(w1) + wedge(w2, w0)),
    ]
    return [(name, res, res.is_zero()) for name, res in eqs]


def gv_reference_form() -> ExtForm:
    """(1/u1^3) du0 ^ du1 ^ du2, the coordinate Godbillon-Vey volume."""
    u1 = RationalFunction.var(1)
    coeff = RationalFunction.const(1) / (u1 * u1 * u1)
    return ExtForm(3, {(0, 1, 2): coeff})


def godbillon_vey_form():
    """The Godbillon-Vey 3-form computed two ways.

    Returns (gv_conn, gv_triple, reference) where
    gv_conn = -w1 ^ dw1, gv_triple = w0 ^ w1 ^ w2; both must equal the
    reference (1/u1^3) du0^du1^du2 exactly.
    """
    w0, w1, w2 = tautological_forms()
    gv_conn = -wedge(w1, exterior_derivative(w1))
    gv_triple = wedge(wedge(w0, w1), w2)
    return gv_conn, gv_triple, gv_reference_form()


# ---------------------------------------------------------------------------
# numeric adjudication of the disputed integer factors
# ---------------------------------------------------------------------------


def _poly_eval_jet(coeffs, x, order):
    """Taylor coefficients (not derivatives) of a 1-variable polynomial at x.

    coeffs are monomial coefficients c0 + c1 y + c2 y^2 + ...; x may be
    complex (complex-step differentiation relies on this).
    """
    out = [0] * (order + 1)
    # repeated synthetic shift: p(x + h) expanded in h
    work = list(coeffs)
    n = len(work)
    for k in range(order + 1):
        if k >= n:
            break
        # k-th Taylor coefficient of p at x is p^{(k)}(x)/k!
        acc = 0
        for j in range(n - 1, k - 1, -1):
            acc = acc * x + work[j] * _binom(j, k)
        out[k] = acc
    return out


def _binom(n, k):
    return math.comb(n, k)


def _poly_derivs_at(coeffs, x, order):
    """Derivatives p(x), p'(x), ..., p^(order)(x) of a polynomial."""
    taylor = _poly_eval_jet(coeffs, x, order)
    return [taylor[k] * math.factorial(k) for k in range(order + 1)]


def _compose_derivs(outer_coeffs, inner_derivs, order):
    """Derivatives at 0 of p(h(y)) where p is a polynomial (monomial
    coefficients) and h is given by its derivatives at 0."""
    # Taylor coefficients of h at 0
    h_taylor = [inner_derivs[k] / math.factorial(k) for k in range(order + 1)]
    p_taylor_at_h0 = _poly_eval_jet(outer_coeffs, h_taylor[0], order)
    # Horner in the nilpotent part of h
    nil = [0] + h_taylor[1:]
    result = [p_taylor_at_h0[order]] + [0] * order
    for k in range(order - 1, -1, -1):
        # result = result * nil + p_k  (truncated Cauchy product)
        new = [0] * (order + 1)
        for i in range(order + 1):
            if result[i] == 0:
                continue
            for j in range(order + 1 - i):
                new[i + j] += result[i] * nil[j]
        new[0] += p_taylor_at_h0[k]
        result = new
    return [result[k] * math.factorial(k) for k in range(order + 1)]


def adjudicate_dodgys(families, step=1e-150):
    """Fit the integer factors on the w1 terms of the jet equations.

    Each family is a pair (phi_coeffs, v_coeffs) of 1-variable polynomial
    coefficient lists: the base jet phi (phi'(0) > 0 required) and the test
    field v defining h_t(y) = y + t*v(y).  For the family phi_t = phi o h_t
    the curve of 3-jets has coordinates u_k(t) = (phi o h_t)^(k)(0); their
    t-derivatives at 0 are computed by complex-step differentiation of the
    jet composition, while the tautological forms evaluate on the family
    velocity as w^k(X) = v^(k)(0).

    Returns a report with least-squares factors (a, b) in

        udot1 = u2 w0(X) + a * u1 w1(X)
        udot2 = u3 w0(X) + b * u2 w1(X) + u1 w2(X)

    together with the max defects of the forced fits (1, 2) and (2, 3).
    """
    rows_a, rows_b = [], []
    flagged = 0
    for phi_coeffs, v_coeffs in families:
        u = _poly_derivs_at(phi_coeffs, 0.0, 4)
        if u[1] <= 0:
            raise ValueError("family base jet must have positive u1")
        w = _poly_derivs_at(v_coeffs, 0.0, 3)  # w[k] = w^k(X) = v^(k)(0)
        # h_t derivatives at 0 with t = i*step (complex step)
        t = 1j * step
        h_derivs = [w[0] * t, 1.0 + w[1] * t, w[2] * t, w[3] * t]
        comp = _compose_derivs(phi_coeffs, h_derivs, 3)
        udot = [comp[k].imag / step for k in range(4)]
        if abs(u[1] * w[1]) < 1e-9 or abs(u[2] * w[1]) < 1e-9:
            flagged += 1
            continue
        # line 2: udot1 - u2*w0 = a * (u1*w1)
        rows_a.append((u[1] * w[1], udot[1] - u[2] * w[0]))
        # line 3: udot2 - u3*w0 - u1*w2 = b * (u2*w1)
        rows_b.append((u[2] * w[1], udot[2] - u[3] * w[0] - u[1] * w[2]))

    def lsq(rows):
        sxx = sum(x * x for x, _ in rows)
        sxy = sum(x * y for x, y in rows)
        return sxy / sxx

    def defect(rows, coeff):
        return max(abs(y - coeff * x) for x, y in rows) if rows else float("nan")

    if not rows_a or not rows_b:
        return {
            "identifiable": False,
            "flagged_families": flagged,
            "n_families": len(families),
        }
    a_fit, b_fit = lsq(rows_a), lsq(rows_b)
    report = {
        "identifiable": True,
        "flagged_families": flagged,
        "n_families": len(families),
        "fit": (a_fit, b_fit),
        "defect_12": max(defect(rows_a, 1.0), defect(rows_b, 2.0)),
        "defect_23": max(defect(rows_a, 2.0), defect(rows_b, 3.0)),
    }
    report["pass"] = report["defect_12"] < 1e-7 and report["defect_23"] > 1e-2
    return report


def default_dodgys_families():
    """A small spread of polynomial families with identifiable factors."""
    return [
        ([0.0, 1.0, 0.5], [0.0, 0.0, 1.0]),
        ([0.1, 1.2, -0.3, 0.2], [0.3, -0.4, 0.7, 0.1]),
        ([-0.2, 0.8, 0.4, -0.1, 0.05], [0.1, 0.6, -0.2, 0.3]),
        ([0.0, 2.0, 1.0, 0.3], [1.0, 1.0, 1.0, 1.0]),
        ([0.5, 1.5, -0.7, 0.25, -0.1], [-0.3, 0.9, 0.5, -0.6]),
    ]
