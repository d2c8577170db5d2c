"""Dimension-7 specialization: the cocalibrated 3-form and spinor fields.

Everything here requires p = 1.  The generic 3-form reproduces the
canonical torsion through the characteristic-torsion formula, its
characteristic connection admits a one-dimensional space of parallel
spinors, and the derived spinor fields satisfy generalized Killing
equations with direction-dependent eigenvalues.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .algebra import QHAlgebra
from .clifford import clifford_matrix, gamma, spin_lift, vector_action
from .connections import Connection, levi_civita
from .exterior import (
    KForm,
    Vector,
    ce_differential,
    form_inner,
    hodge_star,
    interior,
    wedge,
)
from .linalg import FractionSpan, nullspace
from .scalars import ZERO, Scalar


def _require_p1(alg: QHAlgebra):
    if alg.p != 1:
        raise ValueError(f"7-dimensional structure needs p = 1, got p = {alg.p}")


def build_omega(alg: QHAlgebra) -> KForm:
    """The generic 3-form of the 7-dimensional group.

    -eta_1^(th_12+th_34) - eta_2^(th_13-th_24) - eta_3^(th_14+th_23) + eta_123,
    where the middle sign follows the orientation of the second
    quaternionic pairing (th_42 = -th_24).
    """
    _require_p1(alg)
    th = alg.theta
    eta = alg.eta
    pair = lambda a, b: wedge(th(a), th(b))
    omega = (
        wedge(eta(1), pair(1, 2) + pair(3, 4)).scale(-1)
        + wedge(eta(2), pair(1, 3) - pair(2, 4)).scale(-1)
        + wedge(eta(3), pair(1, 4) + pair(2, 3)).scale(-1)
        + wedge(wedge(eta(1), eta(2)), eta(3))
    )
    return omega


def cocalibrated_check(alg: QHAlgebra, omega: KForm) -> bool:
    """d(star omega) = 0, exactly."""
    return ce_differential(hodge_star(omega), alg).is_zero()


def characteristic_torsion(alg: QHAlgebra, omega: KForm) -> KForm:
    """(1/6) (d omega, star omega) omega - star d omega."""
    d_omega = ce_differential(omega, alg)
    star_omega = hodge_star(omega)
    pairing = form_inner(d_omega, star_omega)
    return omega.scale(pairing * Fraction(1, 6)) - hodge_star(d_omega)


def hitchin_form(alg: QHAlgebra, omega: KForm) -> list[list[Scalar]]:
    """Matrix B with B(X,Y) vol = (X . omega)^(Y . omega)^omega."""
    n = alg.dim
    top = tuple(range(n))
    rows = []
    for i in range(n):
        xi = interior(alg.basis_vector(i), omega)
        row = []
        for j in range(n):
            yj = interior(alg.basis_vector(j), omega)
            row.append(wedge(wedge(xi, yj), omega).coeff(top))
        rows.append(row)
    return rows


def genericity_check(alg: QHAlgebra, omega: KForm) -> bool:
    """Definiteness (up to overall sign) of the Hitchin form.

    Checked by Sylvester's criterion over exact rationals at parameter
    values 1 and 2.
    """
    b = hitchin_form(alg, omega)
    n = alg.dim
    for value in (Fraction(1), Fraction(2)):
        m = [[c.specialize(value) for c in row] for row in b]
        if m[0][0] == 0:
            return False
        if m[0][0] < 0:
            m = [[-x for x in row] for row in m]
        for k in range(1, n + 1):
            if _leading_minor(m, k) <= 0:
                return False
    return True


def _leading_minor(m: list[list[Fraction]], k: int) -> Fraction:
    sub = [row[:k] for row in m[:k]]
    # fraction-free elimination is unnecessary at this size
    det = Fraction(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if sub[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            sub[col], sub[pivot] = sub[pivot], sub[col]
            det = -det
        det *= sub[col][col]
        inv = 1 / sub[col][col]
        for r in range(col + 1, k):
            f = sub[r][col] * inv
            if f:
                sub[r] = [x - f * y for x, y in zip(sub[r], sub[col])]
    return det


class SpinorSplitting:
    """Invariant spinor and the two Clifford-translate subspaces."""

    __slots__ = ("psi0", "vertical", "horizontal")

    def __init__(self, psi0: Vector, vertical: list[Vector], horizontal: list[Vector]):
        self.psi0 = psi0
        self.vertical = vertical
        self.horizontal = horizontal


def parallel_spinor(alg: QHAlgebra, conn: Connection) -> SpinorSplitting:
    """Joint kernel of the lifted connection forms, with its splitting.

    Aborts when the kernel is not one-dimensional, which would signal a
    convention mismatch between the Clifford module and the connection.
    """
    _require_p1(alg)
    rows = []
    for i in range(alg.dim):
        om = conn.form(i)
        if om.is_zero():
            continue
        lift = spin_lift(om)
        for row in lift.m:
            rows.append([c.specialize(Fraction(1)) for c in row])
        if not alg.lam.is_rational():
            for row in lift.m:
                rows.append([c.specialize(Fraction(2)) for c in row])
    kernel = nullspace(rows, 8)
    if len(kernel) != 1:
        raise ArithmeticError(
            f"joint kernel of the lifted connection is {len(kernel)}-dimensional, "
            "expected 1 (Clifford convention mismatch?)"
        )
    psi0 = _normalize_spinor(kernel[0])
    vertical = [vector_action(alg.xi(i), psi0) for i in (1, 2, 3)]
    horizontal = [vector_action(alg.tau(l), psi0) for l in range(1, 5)]
    return SpinorSplitting(psi0, vertical, horizontal)


def _normalize_spinor(comps: list[Fraction]) -> Vector:
    """Primitive integer components, first nonzero positive, unit norm
    whenever the norm is rational."""
    den = math.lcm(*(c.denominator for c in comps))
    ints = [c * den for c in comps]
    g = 0
    for c in ints:
        g = math.gcd(g, int(c))
    ints = [c / g for c in ints]
    lead = next(c for c in ints if c)
    if lead < 0:
        ints = [-c for c in ints]
    norm2 = sum(c * c for c in ints)
    root = _rational_sqrt(norm2)
    if root is not None:
        ints = [c / root for c in ints]
    return Vector([Scalar(c) for c in ints])


def _rational_sqrt(q: Fraction) -> Fraction | None:
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def splitting_dimensions(split: SpinorSplitting) -> tuple[int, int, int]:
    """Dimensions of the three summands (checked to be a direct sum)."""
    span = FractionSpan(8)
    span.add([c.specialize(Fraction(1)) for c in split.psi0])
    d0 = span.dim
    for v in split.vertical:
        span.add([c.specialize(Fraction(1)) for c in v])
    dv = span.dim - d0
    for v in split.horizontal:
        span.add([c.specialize(Fraction(1)) for c in v])
    dh = span.dim - d0 - dv
    return d0, dv, dh


def splitting_orthogonal(split: SpinorSplitting) -> bool:
    groups = [[split.psi0], split.vertical, split.horizontal]
    for a in range(3):
        for b in range(a + 1, 3):
            for x in groups[a]:
                for y in groups[b]:
                    if not x.dot(y).is_zero():
                        return False
    return True


def torsion_spectrum(alg: QHAlgebra, t: KForm, split: SpinorSplitting) -> dict:
    """Eigenvalues of the Clifford action of t on the three summands.

    Returns None entries when some summand is not an eigenspace.
    """
    tm = clifford_matrix(t)

    def common_eigenvalue(vectors: list[Vector]) -> Scalar | None:
        value = None
        for v in vectors:
            image = tm.apply(v)
            s = _eigen_ratio(image, v)
            if s is None or (value is not None and s != value):
                return None
            value = s
        return value

    return {
        "psi0": common_eigenvalue([split.psi0]),
        "vertical": common_eigenvalue(split.vertical),
        "horizontal": common_eigenvalue(split.horizontal),
        "multiplicities": (1, len(split.vertical), len(split.horizontal)),
        "trace": tm.trace(),
    }


def _eigen_ratio(image: Vector, v: Vector) -> Scalar | None:
    """Scalar s with image = s*v, or None."""
    s = None
    for a, b in zip(image, v):
        if not b.is_zero():
            try:
                s = a / b
            except ValueError:
                return None
            break
    if s is None:
        return None if not image.is_zero() else ZERO
    for a, b in zip(image, v):
        if not (a - s * b).is_zero():
            return None
    return s


def generalized_killing_check(alg: QHAlgebra, psi: Vector) -> list[Scalar | None]:
    """Eigenvalue s(e_i) with nabla^g_{e_i} psi = s(e_i) e_i . psi, per direction.

    A None entry means no scalar works in that direction (the spinor is
    not generalized Killing there).
    """
    _require_p1(alg)
    lc = levi_civita(alg)
    out: list[Scalar | None] = []
    for i in range(alg.dim):
        derivative = spin_lift(lc.form(i)).apply(psi)
        clifford_image = gamma()[i].apply(psi)
        out.append(_eigen_ratio(derivative, clifford_image))
    return out


def proof_identities_check(alg: QHAlgebra, split: SpinorSplitting) -> bool:
    """The two exact identities behind the generalized Killing equations.

    (X . d eta_i) acts on the invariant spinor as -lam X xi_i for
    horizontal X and as zero for vertical X; and the Leibniz expansion
    of nabla^g_X (xi_i . psi0) matches its direct evaluation.
    """
    _require_p1(alg)
    psi0 = split.psi0
    lc = levi_civita(alg)
    g = gamma()
    for i in (1, 2, 3):
        d_eta = ce_differential(alg.eta(i), alg)
        xi_psi = vector_action(alg.xi(i), psi0)
        for idx in alg.horizontal_indices:
            x = alg.basis_vector(idx)
            lhs = clifford_matrix(interior(x, d_eta)).apply(psi0)
            rhs = g[idx].apply(xi_psi).scale(-alg.lam)
            if lhs != rhs:
                return False
        for idx in alg.vertical_indices:
            x = alg.basis_vector(idx)
            if not clifford_matrix(interior(x, d_eta)).apply(psi0).is_zero():
                return False
        # product rule: nabla^g_X(xi_i psi0) = (nabla^g_X xi_i) psi0 + xi_i nabla^g_X psi0
        for idx in range(alg.dim):
            om = lc.form(idx)
            direct = spin_lift(om).apply(xi_psi)
            term1 = vector_action(om.apply(alg.xi(i)), psi0)
            term2 = vector_action(alg.xi(i), spin_lift(om).apply(psi0))
            if direct != term1 + term2:
                return False
    return True
