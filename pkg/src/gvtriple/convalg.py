"""Crossed-product convolution calculus on V, Q = V x R_c and
H* = V x R_c x R_eta.

Kernels are finitely supported maps from group words to analytic fiber
functions; products and pullbacks are composed evaluators (pointwise
identities stay exact-evaluation tests), and only the traces discretize,
via adaptive tensor Gauss-Legendre quadrature.

The groupoid-translation of a fiber function f by a word v is

    (v . f)(x, c, eta) = f(x . v, c - log Delta_v(x), Delta_v(x) eta + delta_v(x)),

with Delta_v, delta_v the modular data of the arrow (x, v); this is the
pullback W_v, and specializes to Q (drop eta) and V (drop c too).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .diffeo import DiffeoGroup, GroupWord
from .holonomy import word_delta, word_delta_inv, word_log_Delta

SPACES = ("V", "Q", "Hstar")

GAUSS_RADIUS = 8.2  # exp(-r^2/2) < 5e-15 beyond this many sigmas


class QuadratureError(RuntimeError):
    def __init__(self, message, best=None, err=None):
        super().__init__(message)
        self.best = best
        self.err = err


class IdentityViolation(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GVTRIPLE_THREADS", "1")))
    except ValueError:
        return 1


def _panel_nodes(lo, hi, level, order):
    """Gauss-Legendre nodes/weights over 2^level uniform panels of [lo, hi]."""
    base_x, base_w = np.polynomial.legendre.leggauss(order)
    n = 2 ** level
    edges = np.linspace(lo, hi, n + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    weights = (half[:, None] * base_w[None, :]).ravel()
    return nodes, weights


def _tensor_eval(fn, axes, chunk=1 << 22):
    """Sum fn over a tensor grid with weights, chunking along axis 0.

    axes is a list of (nodes, weights); summation order is fixed (panel
    order along each axis) so results are bitwise reproducible.
    """
    dims = len(axes)
    total = 1
    for nodes, _ in axes:
        total *= nodes.size
    n0 = axes[0][0].size
    rows_per_chunk = max(1, min(n0, chunk // max(1, total // n0)))
    starts = list(range(0, n0, rows_per_chunk))

    def eval_rows(start):
        stop = min(start + rows_per_chunk, n0)
        grids = []
        for d, (nodes, _) in enumerate(axes):
            shape = [1] * dims
            sub = nodes[start:stop] if d == 0 else nodes
            shape[d] = sub.size
            grids.append(sub.reshape(shape))
        vals = np.asarray(fn(*grids))
        vals = np.broadcast_to(
            vals, tuple(g.size for g in grids)
        )
        out = vals
        for d in range(dims - 1, 0, -1):
            out = out @ axes[d][1]  # contract trailing axes one at a time
        return out, start, stop

    w0 = axes[0][1]
    nthreads = _threads()
    partial = np.zeros(n0, dtype=complex)
    if nthreads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            for out, start, stop in pool.map(eval_rows, starts):
                partial[start:stop] = out
    else:
        for s in starts:
            out, start, stop = eval_rows(s)
            partial[start:stop] = out
    return complex(partial @ w0)


def adaptive_quad(fn, ranges, rel_tol=1e-9, max_levels=12, order=32):
    """Dyadic panel refinement until successive values differ by rel_tol."""
    prev = None
    best = None
    err = math.inf
    for level in range(max_levels + 1):
        axes = [_panel_nodes(lo, hi, level, order) for lo, hi in ranges]
        val = _tensor_eval(fn, axes)
        if prev is not None:
            err = abs(val - prev)
            best = val
            if err <= rel_tol * abs(val) + 1e-14:
                return val, err
        prev = val
    raise QuadratureError(
        f"quadrature did not converge after {max_levels} refinements",
        best=best,
        err=err,
    )


def _log_cosh(w):
    aw = np.abs(w)
    return aw + np.log1p(np.exp(-2.0 * aw)) - math.log(2.0)


def resolvent_integral(s, rel_tol=1e-9, half=False):
    """I(s) = integral over R of (1+t^2)^(-s/2) dt, via t = sinh(w).

    With half=True only the t > 0 half is taken, matching the residue
    convention Gamma(1/2)Gamma(z)/(2 Gamma(1/2+z)) at s = 1+2z (the
    symmetric integral carries twice that residue).
    """
    s = complex(s)
    if s.real <= 1:
        raise ValueError("resolvent integral diverges for Re(s) <= 1")
    W = min(700.0, 40.0 / (s.real - 1.0))
    lo = 0.0 if half else -W
    val, err = adaptive_quad(
        lambda w: np.exp((1.0 - s) * _log_cosh(w)), [(lo, W)], rel_tol=rel_tol
    )
    return val.real if abs(val.imag) < 1e-30 else val


# ---------------------------------------------------------------------------
# fiber functions
# ---------------------------------------------------------------------------


def _ndim(space: str) -> int:
    return {"V": 1, "Q": 2, "Hstar": 3}[space]


class FiberFunction:
    """Evaluator on a fiber space with a declared numerical support box.

    fn takes (x[, c[, eta]]) broadcasting arrays and returns complex values;
    c_box/eta_box are (lo, hi) pairs or None for "no declared bound" (the
    eta-independent case stores None there).
    """

    __slots__ = ("space", "fn", "c_box", "eta_box")

    def __init__(self, space, fn, c_box=None, eta_box=None):
        if space not in SPACES:
            raise ValueError(f"unknown space {space!r}")
        self.space = space
        self.fn = fn
        self.c_box = c_box
        self.eta_box = eta_box

    def __call__(self, x, c=None, eta=None):
        if self.space == "V":
            return self.fn(x)
        if self.space == "Q":
            return self.fn(x, c)
        return self.fn(x, c, eta)


def trig_evaluator(terms):
    """Trig polynomial sum_k a_k exp(2 pi i k x); terms is [(k, complex)]."""
    terms = [(int(k), complex(a)) for k, a in terms]
    for k, _ in terms:
        if abs(k) > 8:
            raise ValueError("trig degree bounded by 8")

    def fn(x):
        out = 0.0 + 0.0j
        for k, a in terms:
            out = out + a * np.exp(2j * math.pi * k * np.asarray(x))
        return out

    return fn


def gaussian_bump(center, width):
    center = float(center)
    width = float(width)
    if width <= 0:
        raise ValueError("bump width must be positive")

    def fn(t):
        u = (np.asarray(t) - center) / width
        return np.exp(-0.5 * u * u)

    box = (center - GAUSS_RADIUS * width, center + GAUSS_RADIUS * width)
    return fn, box


def fiber_from_descriptor(space, trig, c_bump=None, eta_bump=None):
    """Build a separable fiber function: trig(x) * bump(c) * bump(eta).

    eta_bump may be the string "const" (eta-independent kernel).
    """
    tfn = trig_evaluator(trig)
    if space == "V":
        return FiberFunction("V", tfn)
    cfn, c_box = gaussian_bump(*c_bump)
    if space == "Q":
        return FiberFunction("Q", lambda x, c: tfn(x) * cfn(c), c_box=c_box)
    if eta_bump in (None, "const"):
        return FiberFunction(
            "Hstar", lambda x, c, eta: tfn(x) * cfn(c) + 0.0 * eta, c_box=c_box
        )
    efn, e_box = gaussian_bump(*eta_bump)
    return FiberFunction(
        "Hstar",
        lambda x, c, eta: tfn(x) * cfn(c) * efn(eta),
        c_box=c_box,
        eta_box=e_box,
    )


def _box_union(a, b):
    if a is None or b is None:
        return None
    return (min(a[0], b[0]), max(a[1], b[1]))


def _box_intersect(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return (max(a[0], b[0]), min(a[1], b[1]))


def _fiber_add(space, f, g):
    return FiberFunction(
        space,
        lambda *p: f(*p) + g(*p),
        c_box=_box_union(f.c_box, g.c_box),
        eta_box=_box_union(f.eta_box, g.eta_box),
    )


def _fiber_scale(space, f, scalar):
    return FiberFunction(
        space, lambda *p: scalar * f(*p), c_box=f.c_box, eta_box=f.eta_box
    )


# ---------------------------------------------------------------------------
# word geometry bounds (conservative support bookkeeping under pullbacks)
# ---------------------------------------------------------------------------

_BOUNDS_GRID = 1024


def word_bounds(group: DiffeoGroup, word: GroupWord):
    """Conservative (min, max) of log Delta and delta over the circle for
    the arrows (x, word); sampled with a curvature pad, cached per word."""
    cache = group.__dict__.setdefault("_gv_word_bounds", {})
    key = word.letters
    if key not in cache:
        x = (np.arange(_BOUNDS_GRID) + 0.5) / _BOUNDS_GRID
        ld = word_log_Delta(group, word, x)
        dl = word_delta(group, word, x)
        pad_ld = float(np.max(np.abs(np.diff(ld))) if ld.size > 1 else 0.0) + 1e-9
        pad_dl = float(np.max(np.abs(np.diff(dl))) if dl.size > 1 else 0.0) + 1e-9
        cache[key] = (
            (float(np.min(ld)) - pad_ld, float(np.max(ld)) + pad_ld),
            (float(np.min(dl)) - pad_dl, float(np.max(dl)) + pad_dl),
        )
    return cache[key]


def translate_fiber(group: DiffeoGroup, v: GroupWord, f: FiberFunction) -> FiberFunction:
    """The pullback W_v f, i.e. p -> f(v^{-1} . p)."""
    if v.is_identity():
        return f
    space = f.space

    if space == "V":
        return FiberFunction("V", lambda x: f.fn(group.act(v, x)))

    (ld_lo, ld_hi), (dl_lo, dl_hi) = word_bounds(group, v)
    c_box = None
    if f.c_box is not None:
        c_box = (f.c_box[0] + ld_lo, f.c_box[1] + ld_hi)

    if space == "Q":

        def fnq(x, c):
            xv = group.act(v, x)
            ld = word_log_Delta(group, v, x)
            return f.fn(xv, c - ld)

        return FiberFunction("Q", fnq, c_box=c_box)

    eta_box = None
    if f.eta_box is not None:
        corners = [
            (f.eta_box[i] - dl) / math.exp(ld)
            for i in (0, 1)
            for dl in (dl_lo, dl_hi)
            for ld in (ld_lo, ld_hi)
        ]
        eta_box = (min(corners), max(corners))

    def fnh(x, c, eta):
        xv = group.act(v, x)
        ld = word_log_Delta(group, v, x)
        dl = word_delta(group, v, x)
        return f.fn(xv, c - ld, np.exp(ld) * eta + dl)

    return FiberFunction("Hstar", fnh, c_box=c_box, eta_box=eta_box)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


class Kernel:
    """A crossed-product element: finitely supported word -> fiber function."""

    def __init__(self, space, group: DiffeoGroup, terms=None):
        if space not in SPACES:
            raise ValueError(f"unknown space {space!r}")
        self.space = space
        self.group = group
        self.terms = {}
        if terms:
            for w, f in terms.items():
                if f.space != space:
                    raise ValueError("fiber function space mismatch")
                self.terms[w] = f

    @staticmethod
    def unit(space, group) -> "Kernel":
        one = FiberFunction(space, lambda *p: np.ones_like(np.asarray(p[0], float)) + 0j)
        return Kernel(space, group, {GroupWord.identity(): one})

    def words(self):
        return sorted(self.terms)

    def _check_compatible(self, other: "Kernel"):
        if self.space != other.space or self.group is not other.group:
            raise ValueError("kernels live on different spaces or groups")

    def evaluate(self, word: GroupWord, *point):
        f = self.terms.get(word)
        if f is None:
            return np.zeros(np.broadcast(*point).shape, dtype=complex) if point else 0j
        return f(*point)

    def __add__(self, other: "Kernel") -> "Kernel":
        self._check_compatible(other)
        terms = dict(self.terms)
        for w, f in other.terms.items():
            terms[w] = _fiber_add(self.space, terms[w], f) if w in terms else f
        return Kernel(self.space, self.group, terms)

    def scale(self, scalar) -> "Kernel":
        return Kernel(
            self.space,
            self.group,
            {w: _fiber_scale(self.space, f, scalar) for w, f in self.terms.items()},
        )

    def __sub__(self, other: "Kernel") -> "Kernel":
        return self + other.scale(-1.0)


def convolve(a: Kernel, b: Kernel) -> Kernel:
    """(a * b)_u(p) = sum_v a_v(p) b_{v^{-1} u}(v^{-1} . p)."""
    a._check_compatible(b)
    space, group = a.space, a.group
    out = {}
    for v in a.words():
        fv = a.terms[v]
        for w in b.words():
            gw = translate_fiber(group, v, b.terms[w])
            u = v * w

            def term(*p, fv=fv, gw=gw):
                return fv(*p) * gw(*p)

            f = FiberFunction(
                space,
                term,
                c_box=_box_intersect(fv.c_box, gw.c_box),
                eta_box=_box_intersect(fv.eta_box, gw.eta_box),
            )
            out[u] = _fiber_add(space, out[u], f) if u in out else f
    return Kernel(space, group, out)


def involution(a: Kernel) -> Kernel:
    """(a^*)_u(p) = conj(a_{u^{-1}}(u^{-1} . p))."""
    out = {}
    for w in a.words():
        f = translate_fiber(a.group, w.inverse(), a.terms[w])
        conj = FiberFunction(
            a.space,
            lambda *p, f=f: np.conj(f(*p)),
            c_box=f.c_box,
            eta_box=f.eta_box,
        )
        out[w.inverse()] = conj
    return Kernel(a.space, a.group, out)


def _identity_fiber(a: Kernel):
    return a.terms.get(GroupWord.identity())


def _require_box(box, what):
    if box is None:
        raise ValueError(f"kernel has no declared {what} support; trace undefined")
    return box


def trace_Q(a: Kernel, rel_tol=1e-9, max_levels=12, order=32):
    """Integral of the identity-word component against e^{-c} dx dc."""
    if a.space != "Q":
        raise ValueError("trace_Q expects a kernel on Q")
    f = _identity_fiber(a)
    if f is None:
        return 0j, 0.0
    c_box = _require_box(f.c_box, "c")
    val, err = adaptive_quad(
        lambda x, c: f.fn(x, c) * np.exp(-c),
        [(0.0, 1.0), c_box],
        rel_tol=rel_tol,
        max_levels=max_levels,
        order=order,
    )
    return val, err


def trace_Hstar(a: Kernel, rel_tol=1e-9, max_levels=12, order=32):
    """Integral of the identity-word component against dx dc deta."""
    if a.space != "Hstar":
        raise ValueError("trace_Hstar expects a kernel on H*")
    f = _identity_fiber(a)
    if f is None:
        return 0j, 0.0
    c_box = _require_box(f.c_box, "c")
    e_box = _require_box(f.eta_box, "eta")
    val, err = adaptive_quad(
        f.fn,
        [(0.0, 1.0), c_box, e_box],
        rel_tol=rel_tol,
        max_levels=max_levels,
        order=order,
    )
    return val, err


def apply_B(rho: Kernel) -> Kernel:
    """(B rho)_u(x, c, eta) = e^c eta rho_u(x, c, eta)."""
    if rho.space != "Hstar":
        raise ValueError("apply_B expects a kernel on H*")
    out = {}
    for w, f in rho.terms.items():
        out[w] = FiberFunction(
            "Hstar",
            lambda x, c, eta, f=f: np.exp(c) * eta * f.fn(x, c, eta),
            c_box=f.c_box,
            eta_box=f.eta_box,
        )
    return Kernel("Hstar", rho.group, out)


def left_action(a: Kernel, rho: Kernel) -> Kernel:
    """(pi(a) rho)_u = sum_v a_v . W_v(rho_{v^{-1} u})."""
    if a.space != "Q" or rho.space != "Hstar":
        raise ValueError("left_action expects a Q-kernel acting on an H*-kernel")
    if a.group is not rho.group:
        raise ValueError("kernels live on different groups")
    group = a.group
    out = {}
    for v in a.words():
        fv = a.terms[v]
        for w in rho.words():
            gw = translate_fiber(group, v, rho.terms[w])
            u = v * w

            def term(x, c, eta, fv=fv, gw=gw):
                return fv.fn(x, c) * gw(x, c, eta)

            f = FiberFunction(
                "Hstar",
                term,
                c_box=_box_intersect(fv.c_box, gw.c_box),
                eta_box=gw.eta_box,
            )
            out[u] = _fiber_add("Hstar", out[u], f) if u in out else f
    return Kernel("Hstar", group, out)


def delta1(a: Kernel) -> Kernel:
    """delta_1(a)_u(x, c) = e^c delta(u^{-1}) a_u(x, c)."""
    if a.space != "Q":
        raise ValueError("delta1 expects a kernel on Q")
    group = a.group
    out = {}
    for w, f in a.terms.items():
        if w.is_identity():
            continue  # delta of a unit arrow vanishes

        def fn(x, c, w=w, f=f):
            return np.exp(c) * word_delta_inv(group, w, x) * f.fn(x, c)

        out[w] = FiberFunction("Q", fn, c_box=f.c_box)
    return Kernel("Q", group, out)


def _sample_points(space, c_box, eta_box, rng, n):
    x = rng.uniform(0.0, 1.0, n)
    if space == "V":
        return (x,)
    c_box = c_box or (-1.0, 1.0)
    c = rng.uniform(c_box[0], c_box[1], n)
    if space == "Q":
        return x, c
    eta_box = eta_box or (-1.0, 1.0)
    eta = rng.uniform(eta_box[0], eta_box[1], n)
    return x, c, eta


def kernel_max_defect(a: Kernel, b: Kernel, n_points=200, seed=0):
    """Max pointwise |a - b| over the union of word supports, sampled on
    the union support boxes."""
    a._check_compatible(b)
    rng = np.random.default_rng(seed)
    words = sorted(set(a.terms) | set(b.terms))
    worst = 0.0
    for w in words:
        fa, fb = a.terms.get(w), b.terms.get(w)
        c_box = _box_union(
            fa.c_box if fa else None, fb.c_box if fb else None
        )
        e_box = _box_union(
            fa.eta_box if fa else None, fb.eta_box if fb else None
        )
        pts = _sample_points(a.space, c_box, e_box, rng, n_points)
        va = fa(*pts) if fa else 0.0
        vb = fb(*pts) if fb else 0.0
        worst = max(worst, float(np.max(np.abs(va - vb))))
    return worst


def commutator_B(a: Kernel, rho: Kernel, n_points=200, seed=0, tol=1e-9):
    """[B, pi(a)] rho computed two ways: directly, and as pi(delta_1 a) rho.

    Returns (kernel, report); raises IdentityViolation when the two paths
    disagree beyond tol (that signals a convention bug upstream).
    """
    direct = apply_B(left_action(a, rho)) - left_action(a, apply_B(rho))
    via_delta1 = left_action(delta1(a), rho)
    defect = kernel_max_defect(direct, via_delta1, n_points=n_points, seed=seed)
    report = {
        "identity": "[B, a] = delta_1(a) as operators",
        "samples": n_points,
        "max_defect": defect,
        "pass": bool(defect < tol),
    }
    if defect >= tol:
        raise IdentityViolation(
            f"[B, a] != delta_1(a): max pointwise defect {defect:.3e}"
        )
    return direct, report


def resolvent_weighted_trace(a: Kernel, s, method="factorized", rel_tol=1e-9,
                             order=32, half=False):
    """trace of a (1 + B^2)^{-s/2} for a Q-kernel a, Re(s) > 1.

    method "factorized": trace_Q(a) * I(s) with I(s) the 1-D resolvent
    integral.  method "direct": joint 3-D quadrature over (x, c, w) after
    the compactifying substitution eta = e^{-c} sinh(w) at the identity
    word.  half=True integrates the eta half-line only (see
    resolvent_integral).
    """
    s = complex(s)
    if s.real <= 1:
        raise ValueError("resolvent-weighted trace diverges for Re(s) <= 1")
    if a.space != "Q":
        raise ValueError("resolvent_weighted_trace expects a kernel on Q")
    if method == "factorized":
        tq, _ = trace_Q(a, rel_tol=rel_tol, order=order)
        return tq * resolvent_integral(s, rel_tol=rel_tol, half=half)
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    f = _identity_fiber(a)
    if f is None:
        return 0j
    c_box = _require_box(f.c_box, "c")
    # second substitution w = sinh(v) compresses the slowly decaying
    # w-range (long for s near 1) to a few units in v
    W = min(700.0, 40.0 / (s.real - 1.0))
    V = math.asinh(W)
    lo = 0.0 if half else -V

    def integrand(x, c, v):
        w = np.sinh(v)
        return (
            f.fn(x, c)
            * np.exp(-c)
            * np.exp((1.0 - s) * _log_cosh(w))
            * np.cosh(v)
        )

    val, _ = adaptive_quad(
        integrand, [(0.0, 1.0), c_box, (lo, V)], rel_tol=rel_tol, order=order
    )
    return val


def check_B1_equivariance(u, n_grid=21, tol=1e-9):
    """Grid check of the two dual-Dirac equivariance statements for an
    arrow u:

    (i) B1 - W_u B1 W_{u^{-1}} is multiplication by the constant
        log Delta(u) (with the trivial bound |log Delta(u)| <=
        sqrt(2) |log Delta(u)|);
    (ii) B - W_u B W_{u^{-1}} is multiplication by e^c delta(u^{-1}),
        in particular eta-independent.
    """
    from . import holonomy as H

    ld = float(H.log_Delta(u))
    dlu = float(H.delta_small(u))
    dlu_inv = float(H.delta_small(u.inverse()))
    Dl = math.exp(ld)

    def W(fn, ld_, Dl_, dl_):
        return lambda c, eta: fn(c - ld_, Dl_ * eta + dl_)

    def test_fn(c, eta):
        return np.exp(-0.5 * (c * c + eta * eta) + 0.1 * c - 0.2 * eta)

    c = np.linspace(-1.5, 1.5, n_grid)[:, None]
    eta = np.linspace(-1.5, 1.5, n_grid)[None, :]

    # (i) B1 = multiplication by c, acting on the c-dependence only
    b1 = lambda fn: (lambda cc, ee: cc * fn(cc, ee))
    inner = W(b1(W(test_fn, -ld, 1.0 / Dl, dlu_inv)), ld, Dl, dlu)
    diff1 = (b1(test_fn)(c, eta) - inner(c, eta)) / test_fn(c, eta)
    defect_b1 = float(np.max(np.abs(diff1 - ld)))
    bound_ok = abs(ld) <= math.sqrt(2.0) * abs(ld) + 1e-15

    # (ii) B = multiplication by e^c eta
    bb = lambda fn: (lambda cc, ee: np.exp(cc) * ee * fn(cc, ee))
    inner2 = W(bb(W(test_fn, -ld, 1.0 / Dl, dlu_inv)), ld, Dl, dlu)
    ratio = (bb(test_fn)(c, eta) - inner2(c, eta)) / test_fn(c, eta)
    eta_dep = float(np.max(ratio.max(axis=1) - ratio.min(axis=1)))
    match = float(np.max(np.abs(ratio - np.exp(c) * dlu_inv)))

    return {
        "identity": "dual-Dirac equivariance (B1 and B)",
        "samples": n_grid * n_grid,
        "b1_constant_defect": defect_b1,
        "b1_bound_ok": bool(bound_ok),
        "b_eta_independence": eta_dep,
        "b_constant_match": match,
        "max_defect": max(defect_b1, eta_dep, match),
        "pass": bool(max(defect_b1, eta_dep, match) < tol),
    }


def random_kernel(space, group: DiffeoGroup, words, rng, trig_deg=2,
                  with_eta=True):
    """Random test kernel with trig x-dependence and Gaussian bumps."""
    terms = {}
    for w in words:
        trig = []
        for k in range(-trig_deg, trig_deg + 1):
            re, im = rng.normal(size=2) / (1 + abs(k))
            trig.append((k, complex(re, im)))
        if space == "V":
            terms[w] = fiber_from_descriptor("V", trig)
            continue
        c_bump = (float(rng.uniform(-0.3, 0.3)), float(rng.uniform(0.6, 1.0)))
        if space == "Q":
            terms[w] = fiber_from_descriptor("Q", trig, c_bump)
        else:
            eta_bump = (
                (float(rng.uniform(-0.3, 0.3)), float(rng.uniform(0.6, 1.0)))
                if with_eta
                else "const"
            )
            terms[w] = fiber_from_descriptor("Hstar", trig, c_bump, eta_bump)
    return Kernel(space, group, terms)
