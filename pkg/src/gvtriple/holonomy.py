"""Action groupoid V x| Gamma and its modular data.

An arrow u = (x, g) has range r(u) = x and source s(u) = x . g.  The
holonomy map of u carries a neighbourhood of the source to the range via
y -> y . g^{-1}; its derivative at the source point is the modular scaling

    Delta(u) = d(y . g^{-1})/dy |_{y = s(u)},

which is multiplicative on composable pairs.  The off-diagonal part of the
triangular action on the lifted bundle is delta(u) = d/dy log Delta at the
source point (flat transverse frame, no e^c weight: those weights enter
only through the operator B and the derivation delta_1 downstream), and
theta(u) = Delta(u^{-1}).  These satisfy

    theta(uv) = theta(u) theta(v),
    delta(uv) = delta(v) + theta(v^{-1}) delta(u),
    theta(u) delta(u) = -delta(u^{-1}).

Positions are circle points; base-point bookkeeping is done mod 1.
"""

from __future__ import annotations

import numpy as np

from .diffeo import DiffeoGroup, GroupWord, random_word

BASE_TOL = 1e-9


def circle_dist(a, b):
    d = np.mod(np.asarray(a) - np.asarray(b), 1.0)
    return np.minimum(d, 1.0 - d)


class GroupoidArrow:
    """Arrow (x, g) with range x and source x . g."""

    __slots__ = ("group", "base", "word")

    def __init__(self, group: DiffeoGroup, base, word: GroupWord):
        self.group = group
        self.base = np.mod(np.asarray(base, dtype=float), 1.0)
        self.word = word

    def range(self):
        return self.base

    def source(self):
        return np.mod(self.group.act(self.word, self.base), 1.0)

    def inverse(self) -> "GroupoidArrow":
        return GroupoidArrow(self.group, self.source(), self.word.inverse())

    def compose(self, other: "GroupoidArrow") -> "GroupoidArrow":
        """Product self * other, defined when s(self) = r(other)."""
        if np.max(circle_dist(self.source(), other.base)) > BASE_TOL:
            raise ValueError("arrows not composable: source/range mismatch")
        return GroupoidArrow(self.group, self.base, self.word * other.word)

    def __repr__(self):
        return f"GroupoidArrow(base={self.base!r}, word={self.word!r})"


def Delta(u: GroupoidArrow):
    """Derivative of the holonomy y -> y . g^{-1} at the source point."""
    j = u.group.act_jet(u.word.inverse(), u.source(), 1)
    return j.derivs[1]


def log_Delta(u: GroupoidArrow):
    return np.log(Delta(u))


def delta_small(u: GroupoidArrow):
    """Transverse derivative of log Delta at the source point."""
    j = u.group.act_jet(u.word.inverse(), u.source(), 2)
    return j.derivs[2] / j.derivs[1]


def theta(u: GroupoidArrow):
    return Delta(u.inverse())


def act_Q(u: GroupoidArrow, point):
    """u . (s(u), c) = (r(u), c + log Delta(u)) on Q = V x R_c."""
    x, c = point
    if np.max(circle_dist(x, u.source())) > BASE_TOL:
        raise ValueError("point does not lie over the source of the arrow")
    return u.range(), c + log_Delta(u)


def act_Hstar(u: GroupoidArrow, point):
    """u . (s(u), c, eta) = (r(u), c + log Delta(u), theta(u) eta + delta(u^{-1}))."""
    x, c, eta = point
    if np.max(circle_dist(x, u.source())) > BASE_TOL:
        raise ValueError("point does not lie over the source of the arrow")
    uinv = u.inverse()
    return u.range(), c + log_Delta(u), theta(u) * eta + delta_small(uinv)


# vectorized helpers keyed by word, used by the convolution calculus -------


def word_log_Delta(group: DiffeoGroup, word: GroupWord, x_range):
    """log Delta of the arrow (x, word) as a function of the range point x."""
    s = group.act(word, np.asarray(x_range, dtype=float))
    j = group.act_jet(word.inverse(), s, 1)
    return np.log(j.derivs[1])


def word_delta(group: DiffeoGroup, word: GroupWord, x_range):
    """delta of the arrow (x, word) as a function of the range point x."""
    s = group.act(word, np.asarray(x_range, dtype=float))
    j = group.act_jet(word.inverse(), s, 2)
    return j.derivs[2] / j.derivs[1]


def word_delta_inv(group: DiffeoGroup, word: GroupWord, x_range):
    """delta of the inverse arrow (x, word)^{-1} = (x . word, word^{-1}).

    The holonomy of the inverse arrow is y -> y . word, and its source is x
    itself, so this is the 2-jet ratio of the forward action at x.
    """
    j = group.act_jet(word, np.asarray(x_range, dtype=float), 2)
    return j.derivs[2] / j.derivs[1]


def random_composable_pair(group: DiffeoGroup, rng, max_len=4):
    x = float(rng.uniform(0.0, 1.0))
    u = GroupoidArrow(group, x, random_word(group, rng, max_len))
    v = GroupoidArrow(group, u.source(), random_word(group, rng, max_len))
    return u, v


def verify_transformation_laws(group: DiffeoGroup, n_pairs=500, seed=0, max_len=4,
                               tol=1e-8):
    """Check Delta multiplicativity and the twisted cocycle laws on random
    composable pairs; returns a JSON-ready report per identity."""
    rng = np.random.default_rng(seed)
    defects = {
        "Delta(uv) = Delta(u)Delta(v)": 0.0,
        "theta(uv) = theta(u)theta(v)": 0.0,
        "delta(uv) = delta(v) + theta(v^-1)delta(u)": 0.0,
        "theta(u)delta(u) = -delta(u^-1)": 0.0,
    }
    for _ in range(n_pairs):
        u, v = random_composable_pair(group, rng, max_len)
        uv = u.compose(v)
        d = abs(Delta(uv) - Delta(u) * Delta(v)) / abs(Delta(uv))
        defects["Delta(uv) = Delta(u)Delta(v)"] = max(
            defects["Delta(uv) = Delta(u)Delta(v)"], float(d)
        )
        d = abs(theta(uv) - theta(u) * theta(v)) / abs(theta(uv))
        defects["theta(uv) = theta(u)theta(v)"] = max(
            defects["theta(uv) = theta(u)theta(v)"], float(d)
        )
        d = abs(delta_small(uv) - (delta_small(v) + theta(v.inverse()) * delta_small(u)))
        defects["delta(uv) = delta(v) + theta(v^-1)delta(u)"] = max(
            defects["delta(uv) = delta(v) + theta(v^-1)delta(u)"], float(d)
        )
        d = abs(theta(u) * delta_small(u) + delta_small(u.inverse()))
        defects["theta(u)delta(u) = -delta(u^-1)"] = max(
            defects["theta(u)delta(u) = -delta(u^-1)"], float(d)
        )
    return [
        {
            "identity": name,
            "samples": n_pairs,
            "max_defect": defect,
            "pass": defect < tol,
        }
        for name, defect in defects.items()
    ]


def verify_action_laws(group: DiffeoGroup, n_pairs=100, seed=1, tol=1e-9):
    """Groupoid action laws for act_Q and act_Hstar: associativity on
    composable pairs and triviality of unit arrows."""
    rng = np.random.default_rng(seed)
    max_defect = 0.0
    for _ in range(n_pairs):
        u, v = random_composable_pair(group, rng)
        c = float(rng.normal())
        eta = float(rng.normal())
        p = (v.source(), c, eta)
        two_step = act_Hstar(u, act_Hstar(v, p))
        one_step = act_Hstar(u.compose(v), p)
        d = max(
            float(circle_dist(two_step[0], one_step[0])),
            abs(two_step[1] - one_step[1]),
            abs(two_step[2] - one_step[2]),
        )
        max_defect = max(max_defect, d)
        unit = GroupoidArrow(group, p[0], GroupWord.identity())
        q = act_Q(unit, (p[0], c))
        d = max(float(circle_dist(q[0], p[0])), abs(q[1] - c))
        max_defect = max(max_defect, d)
    return {
        "identity": "groupoid action laws (act_Q, act_Hstar)",
        "samples": n_pairs,
        "max_defect": float(max_defect),
        "pass": bool(max_defect < tol),
    }


def verify_ell_consistency(group: DiffeoGroup, words, n_grid=64, tol=1e-9):
    """ell(g)(x) equals log Delta of the arrow with source x and word g.

    Both are the log-derivative of y -> y . g^{-1} at x; this pins the
    derivative convention shared by the cocycle integrand and the modular
    function.
    """
    x = (np.arange(n_grid) + 0.5) / n_grid
    max_defect = 0.0
    for w in words:
        ell = group.ell(w, x)
        base = np.mod(group.act(w.inverse(), x), 1.0)  # range point of the arrow
        u = GroupoidArrow(group, base, w)
        max_defect = max(max_defect, float(np.max(np.abs(ell - log_Delta(u)))))
    return {
        "identity": "ell(g)(x) = log Delta(arrow with source x)",
        "samples": n_grid * len(words),
        "max_defect": max_defect,
        "pass": max_defect < tol,
    }
