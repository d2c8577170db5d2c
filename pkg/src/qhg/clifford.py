"""Real Clifford algebra of R^7 acting on the 8-dimensional spin module.

Generators are built from octonion left multiplication (Cayley-Dickson
doubling of the quaternions), which gives real 8x8 matrices with
entries in {-1, 0, 1} satisfying g_i g_j + g_j g_i = -2 delta_ij.  Of
the two inequivalent irreducible choices (they differ by the sign of
the volume element) we fix the one whose volume element acts as +Id:
it is the choice for which the canonical torsion acts on its invariant
spinor with eigenvalue -2*lam and the generalized Killing eigenvalues
come out with the signs of the 7-dimensional verification suite.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import quat_mul
from .exterior import Endo, KForm, Vector, endo_two_form
from .scalars import ONE, ZERO, Scalar

SPIN_DIM = 8
AMBIENT_DIM = 7


def _oct_mul(a: int, b: int) -> tuple[int, int]:
    """Product of octonion basis units 0..7 (0 is the real unit)."""
    if a < 4 and b < 4:
        return quat_mul(a, b)
    if a < 4 and b >= 4:
        s, c = quat_mul(b - 4, a)  # (0,d)(q,0) ... (q,0)(0,d) = (0, d q)
        return s, 4 + c
    if a >= 4 and b < 4:
        s, c = quat_mul(a - 4, b)  # (0,r)(c,0) = (0, r conj(c))
        if b != 0:
            s = -s
        return s, 4 + c
    s, c = quat_mul(b - 4, a - 4)  # (0,r)(0,d) = (-conj(d) r, 0)
    if b - 4 != 0:
        s = -s
    return -s, c


class SpinEndo:
    """Dense 8x8 matrix of exact scalars acting on spinors."""

    __slots__ = ("m",)

    def __init__(self, rows: list[list[Scalar]]):
        self.m = rows

    @staticmethod
    def zero() -> "SpinEndo":
        return SpinEndo([[ZERO] * SPIN_DIM for _ in range(SPIN_DIM)])

    @staticmethod
    def identity() -> "SpinEndo":
        return SpinEndo(
            [[ONE if i == j else ZERO for j in range(SPIN_DIM)] for i in range(SPIN_DIM)]
        )

    def __add__(self, other: "SpinEndo") -> "SpinEndo":
        return SpinEndo(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.m, other.m)]
        )

    def __sub__(self, other: "SpinEndo") -> "SpinEndo":
        return SpinEndo(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.m, other.m)]
        )

    def __neg__(self) -> "SpinEndo":
        return self.scale(-1)

    def scale(self, c) -> "SpinEndo":
        c = c if isinstance(c, Scalar) else Scalar(c)
        return SpinEndo([[c * a for a in row] for row in self.m])

    def compose(self, other: "SpinEndo") -> "SpinEndo":
        out = [[ZERO] * SPIN_DIM for _ in range(SPIN_DIM)]
        for i in range(SPIN_DIM):
            row = self.m[i]
            for k in range(SPIN_DIM):
                c = row[k]
                if c.is_zero():
                    continue
                ok = other.m[k]
                oi = out[i]
                for j in range(SPIN_DIM):
                    if not ok[j].is_zero():
                        oi[j] = oi[j] + c * ok[j]
        return SpinEndo(out)

    def commutator(self, other: "SpinEndo") -> "SpinEndo":
        return self.compose(other) - other.compose(self)

    def apply(self, s: Vector) -> Vector:
        out = []
        for i in range(SPIN_DIM):
            acc = ZERO
            for j in range(SPIN_DIM):
                c = self.m[i][j]
                if not c.is_zero():
                    acc = acc + c * s[j]
            out.append(acc)
        return Vector(out)

    def trace(self) -> Scalar:
        t = ZERO
        for i in range(SPIN_DIM):
            t = t + self.m[i][i]
        return t

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.m for c in row)

    def __eq__(self, other):
        return isinstance(other, SpinEndo) and self.m == other.m

    def __repr__(self):
        return "SpinEndo(" + "; ".join(" ".join(str(c) for c in row) for row in self.m) + ")"


def build_gamma() -> list[SpinEndo]:
    """The seven Clifford generators, indexed like the ambient frame.

    Generator i is minus the left multiplication by the i-th imaginary
    octonion unit; the minus sign selects the irreducible module with
    volume element +Id.
    """
    gammas = []
    for i in range(1, 8):
        rows = [[ZERO] * SPIN_DIM for _ in range(SPIN_DIM)]
        for b in range(SPIN_DIM):
            s, c = _oct_mul(i, b)
            rows[c][b] = Scalar(-s)
        gammas.append(SpinEndo(rows))
    return gammas


_GAMMA: list[SpinEndo] | None = None
_PRODUCTS: dict[tuple[int, ...], SpinEndo] = {}


def gamma() -> list[SpinEndo]:
    global _GAMMA
    if _GAMMA is None:
        _GAMMA = build_gamma()
    return _GAMMA


def gamma_product(indices: tuple[int, ...]) -> SpinEndo:
    """Ordered product of generators for an increasing index tuple."""
    if indices in _PRODUCTS:
        return _PRODUCTS[indices]
    g = gamma()
    out = SpinEndo.identity()
    for i in indices:
        out = out.compose(g[i])
    _PRODUCTS[indices] = out
    return out


def clifford_matrix(a: KForm) -> SpinEndo:
    """Clifford action of a form: basis tuples become ordered products."""
    if a.dim != AMBIENT_DIM:
        raise ValueError(f"Clifford action needs ambient dimension 7, got {a.dim}")
    out = SpinEndo.zero()
    for idx, c in a.comps.items():
        out = out + gamma_product(idx).scale(c)
    return out


def clifford_action(a: KForm, s: Vector) -> Vector:
    return clifford_matrix(a).apply(s)


def vector_action(x: Vector, s: Vector) -> Vector:
    """Clifford product of an ambient vector with a spinor."""
    if x.dim != AMBIENT_DIM:
        raise ValueError(f"Clifford action needs ambient dimension 7, got {x.dim}")
    g = gamma()
    out = Vector.zero(SPIN_DIM)
    for i, c in enumerate(x):
        if not c.is_zero():
            out = out + g[i].apply(s).scale(c)
    return out


def spin_lift(a: Endo) -> SpinEndo:
    """Lift of a skew endomorphism, (1/2) sum_{i<j} a_ij g_i g_j.

    This is the unique normalization with [lift(A), g(X)] = g(AX).
    """
    two_form = endo_two_form(a)  # rejects non-skew input
    out = SpinEndo.zero()
    for (i, j), c in two_form.comps.items():
        out = out + gamma_product((i, j)).scale(c)
    return out.scale(Fraction(1, 2))


def volume_sign() -> int:
    """Sign s with g_1 g_2 ... g_7 = s * Id (central, squares to +Id)."""
    prod = gamma_product(tuple(range(AMBIENT_DIM)))
    if prod == SpinEndo.identity():
        return 1
    if prod == SpinEndo.identity().scale(-1):
        return -1
    raise ArithmeticError("volume element is not proportional to the identity")
