"""Current algebra: presentation instances, membership, automorphism images."""

import random

import pytest

from qonsager.currentalg import (
    GENERATOR_CLASSES,
    aq_system,
    closed_image,
    proof_chain,
    replay_proof,
    verify_S_images,
    verify_generator_class,
)
from qonsager.errors import IndexOutOfRange, InvalidCutoff
from qonsager.freealg import NcPoly
from qonsager.qcoeff import NumericQ, SYMBOLIC as m


@pytest.fixture(scope="module")
def ctx():
    return aq_system(3)


class TestConstruction:
    def test_cutoff_validation(self):
        with pytest.raises(InvalidCutoff):
            aq_system(0)

    def test_k1_alphabet(self):
        ctx1 = aq_system(1)
        assert set(ctx1.alphabet.names) == {
            "W-1", "W0", "W1", "W2", "G1", "G2", "Gt1", "Gt2",
        }

    def test_k1_oriented_instance_count(self):
        assert aq_system(1).oriented_instances >= 8

    def test_rho_at_two(self):
        from fractions import Fraction

        ctx = aq_system(1, NumericQ(2))
        assert ctx.rho == Fraction(-225, 16)

    def test_rules_are_order_compatible(self, ctx):
        order = ctx.system.order
        for rule in ctx.system.rules:
            for w in rule.rhs.support():
                assert order.less(w, rule.lhs)

    def test_index_guards(self, ctx):
        with pytest.raises(IndexOutOfRange):
            ctx.W(ctx.K + 2)
        with pytest.raises(IndexOutOfRange):
            ctx.G(0)
        with pytest.raises(IndexOutOfRange):
            verify_generator_class(ctx, "G", ctx.K)
        with pytest.raises(IndexOutOfRange):
            verify_S_images(ctx, ctx.K)


class TestGeneratorClasses:
    @pytest.mark.parametrize("gen", GENERATOR_CLASSES)
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_membership(self, ctx, gen, k):
        assert verify_generator_class(ctx, gen, k).status == "pass"

    def test_commutant_family_at_full_cutoff(self, ctx):
        assert verify_generator_class(ctx, "Wminus", ctx.K).status == "pass"


class TestNestedBracketEquivalence:
    def test_scaled_balanced_product_vs_brackets(self, ctx):
        # exact in the free algebra, no relations: clearing the balanced
        # denominators leaves the triple bracket shifted by rho times the
        # commutator
        from qonsager.adjoint import apply_badprod

        W0 = ctx.W(0)
        X = ctx.Gt(2)  # any free symbol distinct from W0
        scale = m.qnum(1) * m.qnum(2) * m.qnum(3)
        lhs = scale * apply_badprod(2, W0, X, m)
        nested = ctx.br(W0, ctx.qbr(W0, ctx.qbr(W0, X, 1), -1))
        assert lhs == nested - ctx.rho * ctx.br(W0, X)

    def test_bracket_expansion_closed_form(self, ctx):
        W0, X = ctx.W(0), ctx.G(1)
        th = m.qint(3)
        nested = ctx.br(W0, ctx.qbr(W0, ctx.qbr(W0, X, 1), -1))
        expected = (
            W0 * W0 * W0 * X
            - th * (W0 * W0 * X * W0)
            + th * (W0 * X * W0 * W0)
            - X * W0 * W0 * W0
        )
        assert nested == expected


class TestImages:
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_automorphism_images(self, ctx, k):
        rec = verify_S_images(ctx, k)
        assert rec.status == "pass"

    def test_image_of_commuting_generator_is_exact(self, ctx):
        from qonsager.adjoint import FORWARD, truncated_sum

        assert truncated_sum(ctx.W(0), ctx.W(-2), 0, FORWARD, m) == ctx.W(-2)

    def test_closed_image_shape(self, ctx):
        from qonsager.adjoint import FORWARD

        img = closed_image(ctx, ctx.W(1), FORWARD)
        assert img.coeff(ctx.alphabet.word(["W1"])) == m.one()
        assert img.coeff(ctx.alphabet.word(["W0", "W0", "W1"])) is not None


class TestProofReplay:
    @pytest.mark.parametrize("gen", ["Wplus", "G", "Gt"])
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_chains(self, ctx, gen, k):
        assert replay_proof(ctx, gen, k).status == "pass"

    def test_chain_endpoints(self, ctx):
        chain = proof_chain(ctx, "Wplus", 0)
        first, last = chain[0][0], chain[-1][0]
        assert not first.is_zero and not last.is_zero
        # the whole chain certifies: triple bracket == rho * commutator
        assert ctx.system.is_zero_mod(first - last).is_zero


class TestTermination:
    def test_random_reductions_halt(self, ctx):
        rng = random.Random(51)
        letters = len(ctx.alphabet.names)
        for _ in range(15):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                w = tuple(rng.randrange(letters) for _ in range(rng.randint(0, 6)))
                terms[w] = m.from_fraction(rng.randint(-2, 2))
            nf = ctx.system.normal_form(NcPoly(ctx.alphabet, terms))
            for w in nf.support():
                assert ctx.system._find(w) is None
