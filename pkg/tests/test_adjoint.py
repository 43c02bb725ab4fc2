"""Operator calculus: primitives, balanced maps, shift maps, certificates."""

import random

import pytest

from qonsager.adjoint import (
    AdjointOperator,
    FORWARD,
    INVERSE,
    StandardnessCertificate,
    DIRECT_VANISH,
    apply_ad,
    apply_bad,
    apply_badprod,
    apply_S,
    certify_product,
    truncated_sum,
)
from qonsager.errors import ContextMismatch
from qonsager.freealg import Alphabet, NcPoly
from qonsager.qcoeff import SYMBOLIC as m

AXY = Alphabet(["A", "X", "Y"])
A = NcPoly.generator(AXY, "A")
X = NcPoly.generator(AXY, "X")
Y = NcPoly.generator(AXY, "Y")


class TestPrimitive:
    def test_plain_commutator(self):
        assert apply_ad(0, A, X) == A * X - X * A

    def test_on_identity(self):
        one = NcPoly.one(AXY)
        assert apply_ad(1, A, one) == m.qnum(1) * A

    def test_on_base_itself(self):
        for r in (-2, 1, 3):
            assert apply_ad(r, A, A) == m.qnum(r) * (A * A)


class TestBalanced:
    def test_order_zero(self):
        assert apply_bad(0, A, X) == (m.one() / m.qnum(1)) * (A * X - X * A)

    def test_order_one_against_expansion_oracle(self):
        # oracle: expand the twist pair by plain free-algebra products
        s, t = m.qnum(2), m.qnum(3)
        oracle = (m.one() / (s * t)) * (
            (s * s) * X + A * A * X - (m.q_pow(2) + m.q_pow(-2)) * (A * X * A) + X * A * A
        )
        assert apply_bad(1, A, X) == oracle

    def test_order_two_on_identity(self):
        one = NcPoly.one(AXY)
        s, t = m.qnum(4), m.qnum(5)
        expected = (m.one() / (s * t)) * (
            (s * s) * one - (m.qnum(2) * m.qnum(2)) * (A * A)
        )
        assert apply_bad(2, A, one) == expected

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            apply_bad(-1, A, X)


class TestBalancedProduct:
    def test_order_zero_is_identity_map(self):
        assert apply_badprod(0, A, X) == X

    def test_single_factor(self):
        assert apply_badprod(1, A, X) == apply_bad(0, A, X)

    def test_order_two_is_relation_defect(self):
        th = m.qint(3)
        rho = m.qnum(2) * m.qnum(2)
        den = m.qnum(1) * m.qnum(2) * m.qnum(3)
        defect = (
            A * A * A * X
            - th * (A * A * X * A)
            + th * (A * X * A * A)
            - X * A * A * A
            + rho * (A * X - X * A)
        )
        assert apply_badprod(2, A, X) == (m.one() / den) * defect

    def test_factorization(self):
        for n in range(5):
            assert apply_badprod(n + 1, A, X) == apply_bad(
                n, A, apply_badprod(n, A, X)
            )


class TestShift:
    def test_order_zero(self):
        assert apply_S(0, A, X, FORWARD) == X

    def test_order_one_forward_closed_form(self):
        den = m.qnum(1) * m.qnum(2)
        expected = (m.one() / den) * (
            m.q_pow(1) * (A * A * X)
            - (m.q_pow(1) + m.q_pow(-1)) * (A * X * A)
            + m.q_pow(-1) * (X * A * A)
        )
        assert apply_S(1, A, X, FORWARD) == expected

    def test_order_one_inverse_closed_form(self):
        den = m.qnum(1) * m.qnum(2)
        expected = (m.one() / den) * (
            m.q_pow(-1) * (A * A * X)
            - (m.q_pow(1) + m.q_pow(-1)) * (A * X * A)
            + m.q_pow(1) * (X * A * A)
        )
        assert apply_S(1, A, X, INVERSE) == expected

    def test_direction_validation(self):
        with pytest.raises(ValueError):
            apply_S(1, A, X, "sideways")


class TestTruncatedSum:
    def test_bound_zero(self):
        assert truncated_sum(A, X, 0, FORWARD) == X

    def test_bound_one_matches_shift_sum(self):
        assert truncated_sum(A, X, 1, FORWARD) == X + apply_S(1, A, X, FORWARD)

    def test_fixes_base_element(self):
        assert truncated_sum(A, A, 3, FORWARD) == A
        assert truncated_sum(A, A, 3, INVERSE) == A


def random_poly(rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        w = tuple(rng.randint(0, 2) for _ in range(rng.randint(0, 3)))
        terms[w] = m.from_fraction(rng.randint(1, 3))
    return NcPoly(AXY, terms)


class TestCommutation:
    def test_primitives_commute(self):
        rng = random.Random(20240)
        for _ in range(6):
            V = random_poly(rng)
            for r in range(-3, 4):
                for s in range(-3, 4):
                    lhs = apply_ad(r, A, apply_ad(s, A, V))
                    rhs = apply_ad(s, A, apply_ad(r, A, V))
                    assert lhs == rhs

    def test_operator_composition_order_is_immaterial(self):
        op = AdjointOperator.shift(A, 2, FORWARD)
        reversed_op = op.permuted(lambda n: list(reversed(range(n))))
        rotated_op = op.permuted(lambda n: [(i + 1) % n for i in range(n)] if n else [])
        assert op.apply(X) == reversed_op.apply(X) == rotated_op.apply(X)


class TestOperatorForm:
    def test_formal_operators_match_eager_application(self):
        for n in range(4):
            assert AdjointOperator.badprod(A, n).apply(X) == apply_badprod(n, A, X)
            assert AdjointOperator.shift(A, n, FORWARD).apply(X) == apply_S(n, A, X, FORWARD)
            assert AdjointOperator.shift(A, n, INVERSE).apply(X) == apply_S(n, A, X, INVERSE)

    def test_sum_and_scale(self):
        op = AdjointOperator.ad(A, 1) + AdjointOperator.ad(A, -1)
        expected = (m.q_pow(1) + m.q_pow(-1)) * apply_ad(0, A, X)
        assert op.apply(X) == expected


class TestCertificates:
    def test_product_rule_adds_bounds(self):
        c1 = StandardnessCertificate(X, 1, DIRECT_VANISH)
        c2 = StandardnessCertificate(Y, 2, DIRECT_VANISH)
        c = certify_product(c1, c2)
        assert c.bound == 3
        assert c.element == X * Y
        assert c.parents == (c1, c2)

    def test_context_mismatch(self):
        other = NcPoly.generator(Alphabet(["Z"]), "Z")
        with pytest.raises(ContextMismatch):
            certify_product(
                StandardnessCertificate(X, 1, DIRECT_VANISH),
                StandardnessCertificate(other, 1, DIRECT_VANISH),
            )

    def test_invalid_construction(self):
        with pytest.raises(ValueError):
            StandardnessCertificate(X, -1, DIRECT_VANISH)
        with pytest.raises(ValueError):
            StandardnessCertificate(X, 1, "hearsay")
