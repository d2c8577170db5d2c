import random
from fractions import Fraction

import pytest

from qhg import algebra, clifford as cl, connections as cn
from qhg.exterior import Endo, KForm, Vector, random_form, two_form_endo
from qhg.scalars import Scalar


def rand_spinor(rng):
    return Vector([Scalar(Fraction(rng.randint(-4, 4))) for _ in range(8)])


def rand_skew(rng, n=7):
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = Fraction(rng.randint(-3, 3))
            if c:
                entries[(i, j)] = Scalar(-c)
                entries[(j, i)] = Scalar(c)
    return Endo(n, entries)


def test_clifford_relations():
    g = cl.gamma()
    minus_two = cl.SpinEndo.identity().scale(-2)
    for i in range(7):
        for j in range(7):
            anti = g[i].compose(g[j]) + g[j].compose(g[i])
            assert anti == (minus_two if i == j else cl.SpinEndo.zero())


def test_entries_are_signs():
    for g in cl.build_gamma():
        for row in g.m:
            for c in row:
                assert c.is_rational() and c.rational_value() in (-1, 0, 1)


def test_volume_element_is_plus_identity():
    assert cl.volume_sign() == 1
    prod = cl.gamma_product(tuple(range(7)))
    assert prod.compose(prod) == cl.SpinEndo.identity()


def test_one_form_squares_to_minus_norm():
    rng = random.Random(41)
    for _ in range(10):
        a = random_form(rng, 7, 1)
        s = rand_spinor(rng)
        m = cl.clifford_matrix(a)
        norm2 = sum(
            (c * c for c in (a.coeff((i,)) for i in range(7))), Scalar(0)
        )
        assert m.apply(m.apply(s)) == s.scale(-norm2)


def test_vertical_volume_action_is_triple_product():
    rng = random.Random(42)
    alg = algebra.build(1)
    eta123 = KForm.basis(7, (0, 1, 2))
    g = cl.gamma()
    triple = g[0].compose(g[1]).compose(g[2])
    for _ in range(5):
        s = rand_spinor(rng)
        assert cl.clifford_action(eta123, s) == triple.apply(s)


def test_clifford_action_needs_dimension_7():
    a = KForm.basis(11, (0, 1))
    with pytest.raises(ValueError):
        cl.clifford_matrix(a)


def test_spin_lift_zero():
    assert cl.spin_lift(Endo.zero(7)) == cl.SpinEndo.zero()


def test_spin_lift_rejects_non_skew():
    with pytest.raises(ValueError):
        cl.spin_lift(Endo.identity(7))


def test_spin_lift_homomorphism_random():
    rng = random.Random(43)
    for _ in range(50):
        a = rand_skew(rng)
        b = rand_skew(rng)
        lhs = cl.spin_lift(a.commutator(b))
        rhs = cl.spin_lift(a).commutator(cl.spin_lift(b))
        assert lhs == rhs


def test_spin_lift_commutes_with_vector_action():
    rng = random.Random(44)
    g = cl.gamma()
    for _ in range(20):
        a = rand_skew(rng)
        lift = cl.spin_lift(a)
        for i in range(7):
            x = Vector.basis(7, i)
            lhs = lift.commutator(g[i])
            ax = a.apply(x)
            rhs = cl.SpinEndo.zero()
            for k, c in enumerate(ax):
                if not c.is_zero():
                    rhs = rhs + g[k].scale(c)
            assert lhs == rhs


def test_su2_lift_bracket():
    alg = algebra.build(1)
    h = [two_form_endo(f) for f in cn.su2_generators(alg)]
    rho = [cl.spin_lift(e) for e in h]
    assert cl.spin_lift(h[0].commutator(h[1])) == rho[0].commutator(rho[1])
    assert rho[0].commutator(rho[1]) == rho[2].scale(2)


def test_two_form_action_doubles_lift():
    rng = random.Random(45)
    for _ in range(10):
        a = random_form(rng, 7, 2)
        assert cl.clifford_matrix(a) == cl.spin_lift(two_form_endo(a)).scale(2)


def test_action_is_skew_for_invariant_product():
    rng = random.Random(46)
    g = cl.gamma()
    for i in range(7):
        s = rand_spinor(rng)
        t = rand_spinor(rng)
        assert g[i].apply(s).dot(t) == -s.dot(g[i].apply(t))
