"""Finite-rank exterior and Clifford algebra over an orthonormal frame.

Elements are stored as sparse maps from ascending blade index tuples
S subset of {1..n} to scalars; the same container carries both the
Clifford product (relations e_i e_j + e_j e_i = 2 delta_ij, Euclidean
metric) and the wedge product, with the blade identification

    psi: e_{i1} ^ ... ^ e_{ir}  ->  e_{i1} ... e_{ir}

acting as the identity on coefficients.  Orthogonal maps push forward
both structures, and the two pushforwards agree through psi.
"""

from __future__ import annotations

import numpy as np

MAX_RANK = 6

_EPS = 1e-12


def _sort_with_sign(indices):
    """Bubble-sort a tuple of indices; returns (sorted tuple, parity sign)."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return tuple(idx), sign


def _blade_product(s, t):
    """Clifford product of basis blades: (blade, sign) with e_i^2 = 1."""
    idx, sign = _sort_with_sign(s + t)
    out = []
    for i in idx:
        if out and out[-1] == i:
            out.pop()  # e_i e_i = 1; adjacent after sorting
        else:
            out.append(i)
    return tuple(out), sign


_PRODUCT_TABLE = {}


def _product_table(rank):
    """Structure constants for the given rank, computed once and cached."""
    table = _PRODUCT_TABLE.get(rank)
    if table is None:
        blades = _all_blades(rank)
        table = {(s, t): _blade_product(s, t) for s in blades for t in blades}
        _PRODUCT_TABLE[rank] = table
    return table


def _all_blades(rank):
    out = []
    for mask in range(1 << rank):
        out.append(tuple(i + 1 for i in range(rank) if mask >> i & 1))
    return sorted(out, key=lambda s: (len(s), s))


class CliffordElement:
    """Element of the rank-n Clifford (or exterior) algebra.

    coeffs maps ascending index tuples to scalars; absent blades are zero.
    field is "real" or "complex"; real elements reject imaginary parts.
    """

    __slots__ = ("rank", "field", "coeffs")

    def __init__(self, rank, field="real", coeffs=None):
        if not 1 <= rank <= MAX_RANK:
            raise ValueError(f"rank must lie in 1..{MAX_RANK}")
        if field not in ("real", "complex"):
            raise ValueError("field must be 'real' or 'complex'")
        self.rank = rank
        self.field = field
        self.coeffs = {}
        if coeffs:
            for blade, a in coeffs.items():
                blade = tuple(blade)
                if blade != tuple(sorted(set(blade))) or (
                    blade and not (1 <= blade[0] and blade[-1] <= rank)
                ):
                    raise ValueError(f"bad blade {blade!r} for rank {rank}")
                a = complex(a)
                if field == "real" and a.imag != 0.0:
                    raise ValueError("imaginary coefficient in a real element")
                if a != 0:
                    self.coeffs[blade] = a

    @staticmethod
    def scalar(rank, value, field="real"):
        return CliffordElement(rank, field, {(): value})

    @staticmethod
    def vector(rank, components, field="real"):
        components = list(components)
        if len(components) != rank:
            raise ValueError("component count must equal rank")
        return CliffordElement(
            rank, field, {(i + 1,): a for i, a in enumerate(components)}
        )

    @staticmethod
    def blade(rank, indices, value=1.0, field="real"):
        return CliffordElement(rank, field, {tuple(indices): value})

    def _check(self, other):
        if self.rank != other.rank or self.field != other.field:
            raise ValueError("rank or scalar field mismatch")

    def __add__(self, other):
        self._check(other)
        coeffs = dict(self.coeffs)
        for b, a in other.coeffs.items():
            coeffs[b] = coeffs.get(b, 0j) + a
        return CliffordElement(self.rank, self.field, coeffs)

    def __sub__(self, other):
        return self + other.scale(-1.0)

    def scale(self, scalar):
        scalar = complex(scalar)
        if self.field == "real" and scalar.imag != 0.0:
            raise ValueError("imaginary scalar on a real element")
        return CliffordElement(
            self.rank, self.field, {b: scalar * a for b, a in self.coeffs.items()}
        )

    def grade_part(self, r):
        return CliffordElement(
            self.rank,
            self.field,
            {b: a for b, a in self.coeffs.items() if len(b) == r},
        )

    def even_part(self):
        return CliffordElement(
            self.rank,
            self.field,
            {b: a for b, a in self.coeffs.items() if len(b) % 2 == 0},
        )

    def odd_part(self):
        return CliffordElement(
            self.rank,
            self.field,
            {b: a for b, a in self.coeffs.items() if len(b) % 2 == 1},
        )

    def norm_inf(self):
        return max((abs(a) for a in self.coeffs.values()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.field == other.field
            and (self - other).norm_inf() == 0.0
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for b in sorted(self.coeffs, key=lambda s: (len(s), s)):
            name = "1" if not b else "e" + "".join(str(i) for i in b)
            parts.append(f"({self.coeffs[b]:g})*{name}")
        return " + ".join(parts)

    def to_json(self):
        blades = [
            {"indices": list(b), "re": a.real, "im": a.imag}
            for b, a in sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]
        return {"rank": self.rank, "field": self.field, "blades": blades}

    @staticmethod
    def from_json(data):
        coeffs = {
            tuple(b["indices"]): complex(b["re"], b.get("im", 0.0))
            for b in data["blades"]
        }
        return CliffordElement(data["rank"], data["field"], coeffs)


def geometric_product(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    a._check(b)
    table = _product_table(a.rank)
    coeffs = {}
    for s, x in a.coeffs.items():
        for t, y in b.coeffs.items():
            blade, sign = table[(s, t)]
            coeffs[blade] = coeffs.get(blade, 0j) + sign * x * y
    return CliffordElement(a.rank, a.field, coeffs)


def wedge_product(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    a._check(b)
    coeffs = {}
    for s, x in a.coeffs.items():
        for t, y in b.coeffs.items():
            if set(s) & set(t):
                continue  # repeated index kills the wedge
            blade, sign = _sort_with_sign(s + t)
            coeffs[blade] = coeffs.get(blade, 0j) + sign * x * y
    return CliffordElement(a.rank, a.field, coeffs)


def psi(w: CliffordElement) -> CliffordElement:
    """Blade identification from the exterior to the Clifford picture.

    On the orthonormal frame this is the identity on coefficients; kept as
    an explicit map so the two algebra structures never mix silently.
    """
    return CliffordElement(w.rank, w.field, dict(w.coeffs))


def psi_inverse(a: CliffordElement) -> CliffordElement:
    return CliffordElement(a.rank, a.field, dict(a.coeffs))


def clifford_left(a: CliffordElement, w: CliffordElement) -> CliffordElement:
    """c_L(a) w = psi^{-1}(a . psi(w)) on exterior elements."""
    return psi_inverse(geometric_product(a, psi(w)))


def clifford_right(a: CliffordElement, w: CliffordElement) -> CliffordElement:
    """c_R(a) w = psi^{-1}(psi(w) . a); an anti-action commuting with c_L."""
    return psi_inverse(geometric_product(psi(w), a))


class OrthogonalMap:
    """An n x n real orthogonal matrix acting on the frame."""

    __slots__ = ("rank", "matrix")

    def __init__(self, matrix):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("matrix must be square")
        rank = matrix.shape[0]
        if not 1 <= rank <= MAX_RANK:
            raise ValueError(f"rank must lie in 1..{MAX_RANK}")
        gram_defect = np.max(np.abs(matrix.T @ matrix - np.eye(rank)))
        if gram_defect > _EPS:
            raise ValueError(f"matrix is not orthogonal: M^T M defect {gram_defect:.3e}")
        det = float(np.linalg.det(matrix))
        if min(abs(det - 1.0), abs(det + 1.0)) > _EPS:
            raise ValueError(f"determinant {det} is not +-1")
        self.rank = rank
        self.matrix = matrix

    def image_vector(self, i, field="real"):
        """The frame vector e_i pushed through the map, as an element."""
        return CliffordElement.vector(self.rank, self.matrix[:, i - 1], field)

    @staticmethod
    def random(rank, rng):
        """Haar-ish orthogonal map: QR of a Gaussian matrix, R-sign fixed."""
        m = rng.normal(size=(rank, rank))
        q, r = np.linalg.qr(m)
        q = q * np.sign(np.diag(r))
        return OrthogonalMap(q)


def pushforward_exterior(A: OrthogonalMap, w: CliffordElement) -> CliffordElement:
    """A_Lambda: algebra homomorphism of the wedge, e_S -> /\\ A e_i."""
    if A.rank != w.rank:
        raise ValueError("rank mismatch")
    out = CliffordElement(w.rank, w.field)
    for blade, a in w.coeffs.items():
        term = CliffordElement.scalar(w.rank, a, w.field)
        for i in blade:
            term = wedge_product(term, A.image_vector(i, w.field))
        out = out + term
    return out


def pushforward_clifford(A: OrthogonalMap, a: CliffordElement) -> CliffordElement:
    """A_Cliff: algebra homomorphism of the Clifford product, e_S -> prod A e_i."""
    if A.rank != a.rank:
        raise ValueError("rank mismatch")
    out = CliffordElement(a.rank, a.field)
    for blade, x in a.coeffs.items():
        term = CliffordElement.scalar(a.rank, x, a.field)
        for i in blade:
            term = geometric_product(term, A.image_vector(i, a.field))
        out = out + term
    return out


def random_element(rank, rng, field="complex"):
    coeffs = {}
    for blade in _all_blades(rank):
        re, im = rng.normal(size=2)
        coeffs[blade] = complex(re, im if field == "complex" else 0.0)
    return CliffordElement(rank, field, coeffs)


def verify_functoriality(ranks=(1, 2, 3, 4, 5), n_maps=200, seed=0, tol=1e-10):
    """Pushforward compatibility on all blades for random orthogonal maps:

    - the square A_Cliff o psi = psi o A_Lambda commutes on every blade;
    - A_*(c_L(a) e) = c_L(A_. a)(A_* e) and the c_R analogue, on random
      elements.
    """
    rng = np.random.default_rng(seed)
    max_square = 0.0
    max_action = 0.0
    for rank in ranks:
        blades = _all_blades(rank)
        for _ in range(n_maps):
            A = OrthogonalMap.random(rank, rng)
            for blade in blades:
                w = CliffordElement.blade(rank, blade, 1.0, "complex")
                lhs = pushforward_clifford(A, psi(w))
                rhs = psi(pushforward_exterior(A, w))
                max_square = max(max_square, (lhs - rhs).norm_inf())
            a = random_element(rank, rng)
            e = random_element(rank, rng)
            lhs = pushforward_exterior(A, clifford_left(a, e))
            rhs = clifford_left(pushforward_clifford(A, a), pushforward_exterior(A, e))
            max_action = max(max_action, (lhs - rhs).norm_inf())
            lhs = pushforward_exterior(A, clifford_right(a, e))
            rhs = clifford_right(pushforward_clifford(A, a), pushforward_exterior(A, e))
            max_action = max(max_action, (lhs - rhs).norm_inf())
    defect = max(max_square, max_action)
    return {
        "identity": "orthogonal pushforward square and module actions",
        "samples": n_maps * len(ranks),
        "square_defect": max_square,
        "action_defect": max_action,
        "max_defect": defect,
        "pass": bool(defect < tol),
    }
