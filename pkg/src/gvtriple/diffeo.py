"""Jet-exact circle diffeomorphisms and finitely generated groups thereof.

Diffeomorphisms of V = S^1 (parametrized by R/Z) are stored through their
lifts F: R -> R with F(x+1) = F(x) + 1, and every derived quantity (the
log-derivative cocycle ell, its differential, the holonomy modular data)
is computed from truncated Taylor jets of those lifts.  All evaluators
accept scalars or numpy arrays in the position argument.

Conventions: the group acts on the right, x . g, with (x . g) . h = x . (gh);
a word acts by applying its letters' lifts left to right.
"""

from __future__ import annotations

import math

import numpy as np

MAX_ORDER = 6

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# truncated Taylor series utilities
#
# A jet of order K at a point x is the list [c0, c1, ..., cK] of Taylor
# coefficients (c_k = f^(k)(x) / k!); entries are floats or ndarrays.
# ---------------------------------------------------------------------------


def series_mul(a, b, order):
    out = [0.0] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if isinstance(ai, float) and ai == 0.0:
            continue
        for j in range(min(len(b), order + 1 - i)):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def series_compose(outer, inner, order):
    """Taylor coefficients of g(f(.)) where outer is the jet of g at f(x)
    and inner the jet of f at x.  inner[0] is ignored (outer is already
    based at the inner value)."""
    nil = [0.0] + list(inner[1 : order + 1])
    result = [outer[order] if order < len(outer) else 0.0]
    result = result + [0.0] * order
    for k in range(order - 1, -1, -1):
        result = series_mul(result, nil, order)
        ck = outer[k] if k < len(outer) else 0.0
        result[0] = result[0] + ck
    return result


def series_recip(a, order):
    """Taylor coefficients of 1/f from those of f; f(x) must be nonzero."""
    inv0 = 1.0 / a[0]
    out = [inv0] + [0.0] * order
    for k in range(1, order + 1):
        acc = 0.0
        for j in range(1, k + 1):
            aj = a[j] if j < len(a) else 0.0
            acc = acc + aj * out[k - j]
        out[k] = -inv0 * acc
    return out


def series_invert(a, order):
    """Jet of the inverse function at the image point.

    Given the jet [f(x), c1, ...] with c1 != 0, returns [x_like_zero..]:
    the Taylor coefficients b_k of f^{-1} at f(x), with b_0 = 0 placeholder
    (callers supply the base point themselves).
    """
    c1 = a[1]
    b = [0.0, 1.0 / c1] + [0.0] * (order - 1)
    for k in range(2, order + 1):
        # coefficient of h^k in f(f^{-1}) must vanish
        comp = series_compose([0.0] + list(a[1 : order + 1]), b, order)
        b[k] = -comp[k] / c1
    return b


def jet_to_derivs(taylor):
    return [c * math.factorial(k) for k, c in enumerate(taylor)]


def derivs_to_jet(derivs):
    return [d / math.factorial(k) for k, d in enumerate(derivs)]


class TaylorJet:
    """Truncated Taylor expansion of a real function at a base point.

    derivs[k] is the k-th derivative at base_point; entries may be numpy
    arrays for vectorized evaluation.
    """

    __slots__ = ("base_point", "order", "derivs")

    def __init__(self, base_point, derivs):
        order = len(derivs) - 1
        if order > MAX_ORDER:
            raise ValueError(f"jet order {order} exceeds {MAX_ORDER}")
        self.base_point = base_point
        self.order = order
        self.derivs = list(derivs)

    @property
    def value(self):
        return self.derivs[0]

    def taylor(self):
        return derivs_to_jet(self.derivs)

    def compose(self, inner: "TaylorJet") -> "TaylorJet":
        """Jet of (self o inner) at inner.base_point; requires that
        self.base_point equals inner.value (the caller guarantees this)."""
        order = min(self.order, inner.order)
        coeffs = series_compose(self.taylor(), inner.taylor(), order)
        coeffs[0] = self.derivs[0]
        return TaylorJet(inner.base_point, jet_to_derivs(coeffs))

    def invert(self) -> "TaylorJet":
        """Jet of the inverse function at the image point."""
        if self.order < 1:
            raise ValueError("cannot invert an order-0 jet")
        d1 = self.derivs[0] * 0 + self.derivs[1]
        if np.any(np.abs(d1) < 1e-12):
            raise ValueError("singular jet: |f'| < 1e-12")
        b = series_invert(self.taylor(), self.order)
        derivs = jet_to_derivs(b)
        derivs[0] = self.base_point
        return TaylorJet(self.value, derivs)

    @staticmethod
    def identity(x, order):
        derivs = [x, np.ones_like(np.asarray(x, dtype=float))] + [0.0] * (order - 1)
        if order == 0:
            derivs = [x]
        return TaylorJet(x, derivs)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


class Generator:
    """Base class: a lift F with F(x+1) = F(x)+1 and closed-form jets."""

    def lift(self, x):
        raise NotImplementedError

    def jet(self, x, order) -> TaylorJet:
        raise NotImplementedError

    def lift_inverse(self, y):
        """Solve F(x) = y by monotone bisection then two Newton steps."""
        y = np.asarray(y, dtype=float)
        lo = y - 1.0
        hi = y + 1.0
        # expand until bracketed (F - id is bounded, so this terminates)
        for _ in range(64):
            bad = self.lift(lo) > y
            if not np.any(bad):
                break
            lo = np.where(bad, lo - 1.0, lo)
        for _ in range(64):
            bad = self.lift(hi) < y
            if not np.any(bad):
                break
            hi = np.where(bad, hi + 1.0, hi)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            below = self.lift(mid) < y
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        x = 0.5 * (lo + hi)
        for _ in range(2):
            j = self.jet(x, 1)
            x = x - (j.value - y) / j.derivs[1]
        return x

    def jet_inverse(self, y, order) -> TaylorJet:
        x = self.lift_inverse(y)
        if order == 0:
            return TaylorJet(np.asarray(y, dtype=float), [x])
        return self.jet(x, order).invert()


class Rotation(Generator):
    def __init__(self, alpha: float):
        self.alpha = float(alpha)

    def lift(self, x):
        return np.asarray(x, dtype=float) + self.alpha

    def jet(self, x, order):
        x = np.asarray(x, dtype=float)
        derivs = [x + self.alpha]
        if order >= 1:
            derivs.append(np.ones_like(x))
        derivs.extend([np.zeros_like(x)] * (order - 1))
        return TaylorJet(x, derivs)

    def lift_inverse(self, y):
        return np.asarray(y, dtype=float) - self.alpha


class Perturbation(Generator):
    """x -> x + (eps / 2 pi m) sin(2 pi m x); a diffeomorphism iff |eps| < 1."""

    def __init__(self, eps: float, m: int = 1):
        if abs(eps) >= 1:
            raise ValueError("perturbation requires |eps| < 1")
        if int(m) < 1:
            raise ValueError("perturbation frequency m must be a positive integer")
        self.eps = float(eps)
        self.m = int(m)

    def lift(self, x):
        x = np.asarray(x, dtype=float)
        w = TWO_PI * self.m
        return x + (self.eps / w) * np.sin(w * x)

    def jet(self, x, order):
        x = np.asarray(x, dtype=float)
        w = TWO_PI * self.m
        s, c = np.sin(w * x), np.cos(w * x)
        cycle = [s, c, -s, -c]
        derivs = [x + (self.eps / w) * s]
        for k in range(1, order + 1):
            d = self.eps * (w ** (k - 1)) * cycle[k % 4]
            if k == 1:
                d = d + 1.0
            derivs.append(d)
        return TaylorJet(x, derivs)


class Mobius(Generator):
    """Projective action of a matrix [[a, b], [c, d]], ad - bc = 1, lifted
    to R/Z via the coordinate w = tan(pi x) on RP^1.

    The lift value uses a continuous branch selection; derivatives come from
    F'(x) = 1 / ((a sin + b cos)^2 + (c sin + d cos)^2) evaluated at pi x,
    which is smooth across the tan poles.
    """

    def __init__(self, a, b, c, d):
        if abs(a * d - b * c - 1.0) > 1e-12:
            raise ValueError("mobius requires ad - bc = 1")
        self.a, self.b, self.c, self.d = map(float, (a, b, c, d))
        self._branch_shift()

    def _raw_displacement(self, x):
        """(theta' - theta)/pi reduced to (-1/2, 1/2]."""
        theta = math.pi * np.asarray(x, dtype=float)
        s, c = np.sin(theta), np.cos(theta)
        num = self.a * s + self.b * c
        den = self.c * s + self.d * c
        disp = (np.arctan2(num, den) - theta) / math.pi
        return disp - np.round(disp)

    def _branch_shift(self):
        # unwrap the periodic displacement once on a fine grid to choose the
        # integer branch making the lift continuous
        grid = np.linspace(0.0, 1.0, 4097)
        raw = self._raw_displacement(grid)
        unwrapped = raw.copy()
        offset = 0.0
        for i in range(1, len(raw)):
            step = raw[i] - raw[i - 1]
            offset -= np.round(step)
            unwrapped[i] = raw[i] + offset
        center = 0.5 * (unwrapped.min() + unwrapped.max())
        self._center = center
        return center

    def lift(self, x):
        disp = self._raw_displacement(x)
        # recentre into the window (center - 1/2, center + 1/2]
        disp = disp + np.round(self._center - disp)
        return np.asarray(x, dtype=float) + disp

    def jet(self, x, order):
        x = np.asarray(x, dtype=float)
        value = self.lift(x)
        if order == 0:
            return TaylorJet(x, [value])
        theta = math.pi * x
        s, c = np.sin(theta), np.cos(theta)
        # P(theta) = A^2 + B^2 with A = a sin + b cos, B = c sin + d cos;
        # F^(k)(x) = pi^(k-1) d^(k-1)/dtheta^(k-1) [1/P]
        A = [self.a * s + self.b * c, self.a * c - self.b * s]
        B = [self.c * s + self.d * c, self.c * c - self.d * s]
        for k in range(2, order):
            A.append(-A[k - 2])
            B.append(-B[k - 2])
        A = derivs_to_jet(A[:order])
        B = derivs_to_jet(B[:order])
        P = [pa + pb for pa, pb in zip(series_mul(A, A, order - 1),
                                       series_mul(B, B, order - 1))]
        Q = series_recip(P, order - 1)  # Taylor coeffs of 1/P at theta
        q_derivs = jet_to_derivs(Q)
        derivs = [value]
        for k in range(1, order + 1):
            derivs.append((math.pi ** (k - 1)) * q_derivs[k - 1])
        return TaylorJet(x, derivs)


def make_generator(spec: dict) -> Generator:
    kind = spec["kind"]
    if kind == "rotation":
        return Rotation(spec["alpha"])
    if kind == "perturbation":
        return Perturbation(spec["eps"], spec.get("m", 1))
    if kind == "mobius":
        return Mobius(spec["a"], spec["b"], spec["c"], spec["d"])
    raise ValueError(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# words and groups
# ---------------------------------------------------------------------------


def _reduce(letters):
    out = []
    for gi, e in letters:
        if e not in (1, -1):
            raise ValueError("letter exponents must be +1 or -1")
        if out and out[-1][0] == gi and out[-1][1] == -e:
            out.pop()
        else:
            out.append((gi, e))
    return tuple(out)


class GroupWord:
    """A freely reduced word in the group generators."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        self.letters = _reduce(letters)

    @staticmethod
    def identity() -> "GroupWord":
        return GroupWord(())

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((gi, -e) for gi, e in reversed(self.letters)))

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        return self.letters < other.letters

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        if not self.letters:
            return "e"
        return ".".join(f"g{gi}" if e == 1 else f"g{gi}^-1" for gi, e in self.letters)


class DiffeoGroup:
    """A finitely generated group of circle diffeomorphisms.

    Provides right-action evaluation and jets for arbitrary words; positions
    are lift coordinates (callers reduce mod 1 when they need circle points).
    """

    def __init__(self, generators):
        self.generators = list(generators)
        self._fingerprints = {}

    def word(self, letters) -> GroupWord:
        for gi, _ in letters:
            if not 0 <= gi < len(self.generators):
                raise ValueError(f"generator index {gi} out of range")
        return GroupWord(letters)

    def act(self, word: GroupWord, x):
        """Right action x . word on lift coordinates."""
        x = np.asarray(x, dtype=float)
        for gi, e in word.letters:
            gen = self.generators[gi]
            x = gen.lift(x) if e == 1 else gen.lift_inverse(x)
        return x

    def act_jet(self, word: GroupWord, x, order) -> TaylorJet:
        """Jet of y -> y . word at x."""
        jet = TaylorJet.identity(np.asarray(x, dtype=float), order)
        for gi, e in word.letters:
            gen = self.generators[gi]
            step = gen.jet(jet.value, order) if e == 1 else gen.jet_inverse(jet.value, order)
            jet = step.compose(jet)
        return jet

    def ell(self, word: GroupWord, x):
        """ell(g)(x) = log d(x . g^{-1})/dx."""
        j = self.act_jet(word.inverse(), x, 1)
        return np.log(j.derivs[1])

    def d_ell(self, word: GroupWord, x):
        """Coefficient of the 1-form d ell(g) at x, i.e. (log f')' = f''/f'
        along the 2-jet of y -> y . g^{-1}."""
        j = self.act_jet(word.inverse(), x, 2)
        return j.derivs[2] / j.derivs[1]

    # fixed sample points for fingerprint equality (pseudo-random but frozen)
    _FP_POINTS = np.array(
        [0.0917, 0.2043, 0.3361, 0.4289, 0.5531, 0.6623, 0.7719, 0.9137]
    )

    def _fingerprint(self, word: GroupWord):
        key = word.letters
        fp = self._fingerprints.get(key)
        if fp is None:
            j = self.act_jet(word, self._FP_POINTS, 3)
            fp = np.concatenate(
                [np.mod(j.derivs[0], 1.0)] + [np.asarray(d) for d in j.derivs[1:]]
            )
            self._fingerprints[key] = fp
        return fp

    def word_equal(self, g: GroupWord, h: GroupWord, mode: str = "free") -> bool:
        if mode == "free":
            return g == h
        if mode == "fingerprint":
            return bool(
                np.max(np.abs(self._fingerprint(g) - self._fingerprint(h))) < 1e-9
            )
        raise ValueError(f"unknown word equality mode {mode!r}")

    def eval_jet(self, word: GroupWord, x, order) -> TaylorJet:
        """Alias for act_jet (the jet of the right action at x)."""
        return self.act_jet(word, x, order)


def invert_jet(j: TaylorJet) -> TaylorJet:
    return j.invert()


def random_word(group: DiffeoGroup, rng, max_len=4) -> GroupWord:
    n = int(rng.integers(1, max_len + 1))
    letters = [
        (int(rng.integers(0, len(group.generators))), int(rng.choice([-1, 1])))
        for _ in range(n)
    ]
    return group.word(letters)
