"""The infinitely presented current algebra, instantiated up to a cutoff.

Generators W(n) for n in -K..K+1 (W(0) and W(1) play the roles of the two
presentation generators), G(k+1) and Gt(k+1) for k in 0..K, subject to the
eleven relation families with rho = -(q^2 - q^-2)^2.  The relations are
uniform in their indices, so every claim is checked per instantiated index.

Orientation pushes W(0) to the right past W(k+1), W(-k) and G(k+1); the
tilde family brackets W(0) from the other side, so that rule is oriented by
giving the tilde generators precedence over W(0).  The remaining relation
families are stored for membership checking and proof replay but are not
oriented.  Zero normal forms are sound regardless of completeness.
"""

from __future__ import annotations

from .adjoint import FORWARD, INVERSE, apply_badprod, truncated_sum
from .errors import IndexOutOfRange, InvalidCutoff
from .freealg import Alphabet, NcPoly
from .qcoeff import SYMBOLIC
from .report import CheckRecord, FAIL, PASS
from .rewrite import MonomialOrder, RewriteSystem, make_system


def _w(n: int) -> str:
    return f"W{n}"


def _g(k: int) -> str:
    return f"G{k}"


def _gt(k: int) -> str:
    return f"Gt{k}"


class AqContext:
    """Instantiated presentation with oriented fragment and relation store."""

    def __init__(self, K: int, mode=SYMBOLIC):
        if K < 1:
            raise InvalidCutoff("cutoff must be at least 1")
        self.K = K
        self.mode = mode
        self.rho = -(mode.qnum(2) * mode.qnum(2))
        names = (
            [_gt(k + 1) for k in range(K + 1)]
            + [_w(0)]
            + [_g(k + 1) for k in range(K + 1)]
            + [_w(n) for n in range(1, K + 2)]
            + [_w(-n) for n in range(1, K + 1)]
        )
        self.alphabet = Alphabet(names)
        self.relations: list[tuple[str, tuple[int, ...], NcPoly]] = []
        self._build_relations()
        oriented = [
            (rid, idx, rel)
            for rid, idx, rel in self.relations
            if rid in ("3p1a", "3p1b", "3p2a", "3p2b", "3p4a", "3p4b")
        ]
        self.oriented_instances = len(oriented)
        seen: dict = {}
        for rid, idx, rel in oriented:
            lead = rel.leading_word()
            if lead not in seen:
                seen[lead] = rel
        self.system = make_system(
            self.alphabet,
            MonomialOrder(self.alphabet),
            list(seen.values()),
            list(seen.keys()),
        )

    # -- generators ----------------------------------------------------------

    def W(self, n: int) -> NcPoly:
        if not -self.K <= n <= self.K + 1:
            raise IndexOutOfRange(f"W({n}) not instantiated at cutoff {self.K}")
        return NcPoly.generator(self.alphabet, _w(n), self.mode)

    def G(self, k: int) -> NcPoly:
        if not 1 <= k <= self.K + 1:
            raise IndexOutOfRange(f"G({k}) not instantiated at cutoff {self.K}")
        return NcPoly.generator(self.alphabet, _g(k), self.mode)

    def Gt(self, k: int) -> NcPoly:
        if not 1 <= k <= self.K + 1:
            raise IndexOutOfRange(f"Gt({k}) not instantiated at cutoff {self.K}")
        return NcPoly.generator(self.alphabet, _gt(k), self.mode)

    # -- brackets -------------------------------------------------------------

    def br(self, x: NcPoly, y: NcPoly) -> NcPoly:
        return x * y - y * x

    def qbr(self, x: NcPoly, y: NcPoly, sign: int = 1) -> NcPoly:
        q = self.mode.q_pow
        return q(sign) * (x * y) - q(-sign) * (y * x)

    # -- relation instances ----------------------------------------------------

    def _build_relations(self):
        K, rho = self.K, self.rho
        inv_p = self.mode.one() / (self.mode.q_pow(1) + self.mode.q_pow(-1))
        rel = self.relations.append
        for k in range(K + 1):
            gdiff = inv_p * (self.Gt(k + 1) - self.G(k + 1))
            rel(("3p1a", (k,), self.br(self.W(0), self.W(k + 1)) - gdiff))
            rel(("3p1b", (k,), self.br(self.W(-k), self.W(1)) - gdiff))
        for k in range(K):
            wdiff = rho * self.W(-k - 1) - rho * self.W(k + 1)
            rel(("3p2a", (k,), self.qbr(self.W(0), self.G(k + 1)) - wdiff))
            rel(("3p2b", (k,), self.qbr(self.Gt(k + 1), self.W(0)) - wdiff))
        for k in range(K):
            wdiff = rho * self.W(k + 2) - rho * self.W(-k)
            rel(("3p3a", (k,), self.qbr(self.G(k + 1), self.W(1)) - wdiff))
            rel(("3p3b", (k,), self.qbr(self.W(1), self.Gt(k + 1)) - wdiff))
        for k in range(K + 1):
            for l in range(k + 1, K + 1):
                rel(("3p4a", (k, l), self.br(self.W(-k), self.W(-l))))
                rel(("3p4b", (k, l), self.br(self.W(k + 1), self.W(l + 1))))
        for k in range(K + 1):
            for l in range(K + 1):
                if k < l:
                    rel(("3p5", (k, l),
                         self.br(self.W(-k), self.W(l + 1)) + self.br(self.W(k + 1), self.W(-l))))
                rel(("3p6", (k, l),
                     self.br(self.W(-k), self.G(l + 1)) + self.br(self.G(k + 1), self.W(-l))))
                rel(("3p7", (k, l),
                     self.br(self.W(-k), self.Gt(l + 1)) + self.br(self.Gt(k + 1), self.W(-l))))
                rel(("3p8", (k, l),
                     self.br(self.W(k + 1), self.G(l + 1)) + self.br(self.G(k + 1), self.W(l + 1))))
                rel(("3p9", (k, l),
                     self.br(self.W(k + 1), self.Gt(l + 1)) + self.br(self.Gt(k + 1), self.W(l + 1))))
                if k < l:
                    rel(("3p10a", (k, l), self.br(self.G(k + 1), self.G(l + 1))))
                    rel(("3p10b", (k, l), self.br(self.Gt(k + 1), self.Gt(l + 1))))
                    rel(("3p11", (k, l),
                         self.br(self.Gt(k + 1), self.G(l + 1)) + self.br(self.G(k + 1), self.Gt(l + 1))))
        self.relations = [(rid, idx, p) for rid, idx, p in self.relations if not p.is_zero]

    def relation_instances(self, *ids: str):
        return [(rid, idx, p) for rid, idx, p in self.relations if rid in ids]

    def subsystem(self, *ids: str) -> RewriteSystem:
        """Rewrite system using only the named relation families."""
        rels = {}
        for rid, idx, p in self.relation_instances(*ids):
            lead = p.leading_word()
            if lead not in rels:
                rels[lead] = p
        return make_system(
            self.alphabet, MonomialOrder(self.alphabet), list(rels.values()), list(rels.keys())
        )


def aq_system(K: int, mode=SYMBOLIC) -> AqContext:
    return AqContext(K, mode)


GENERATOR_CLASSES = ("Wminus", "Wplus", "G", "Gt")


def verify_generator_class(ctx: AqContext, gen: str, k: int) -> CheckRecord:
    """Class membership of one generator family at index k.

    W(-k) must visibly commute with W(0).  The others are shown to satisfy
    the degree-1 membership in two equivalent ways, both reduced to zero:
    the nested-bracket identity against rho times the commutator, and the
    order-2 balanced product; the two agree exactly in the free algebra.
    """
    if gen not in GENERATOR_CLASSES:
        raise ValueError(f"unknown generator class {gen!r}")
    name = f"class-{gen}-k{k}"
    if gen == "Wminus":
        if not 0 <= k <= ctx.K:
            raise IndexOutOfRange(f"W(-{k}) not instantiated")
        res = ctx.system.is_zero_mod(ctx.br(ctx.W(0), ctx.W(-k)))
        return CheckRecord(
            name=name, params=(k,), status=PASS if res.is_zero else FAIL,
            anchor="generator-class", witness=None if res.is_zero else res.residue,
        )
    if not 0 <= k <= ctx.K - 1:
        raise IndexOutOfRange(f"index k={k} needs k+1 arithmetic inside the cutoff")
    X = {"Wplus": ctx.W(k + 1), "G": ctx.G(k + 1), "Gt": ctx.Gt(k + 1)}[gen]
    W0 = ctx.W(0)
    nested = ctx.br(W0, ctx.qbr(W0, ctx.qbr(W0, X, 1), -1))
    bracket_diff = ctx.system.is_zero_mod(nested - ctx.rho * ctx.br(W0, X))
    balanced = ctx.system.is_zero_mod(apply_badprod(2, W0, X, ctx.mode))
    ok = bracket_diff.is_zero and balanced.is_zero
    return CheckRecord(
        name=name, params=(k,), status=PASS if ok else FAIL,
        anchor="generator-class",
        detail="bracket identity + order-2 balanced product",
        witness=None if ok else (bracket_diff.residue + balanced.residue),
    )


def closed_image(ctx: AqContext, X: NcPoly, direction: str = FORWARD) -> NcPoly:
    """Degree-1 closed form of the automorphism image, as a free element."""
    m = ctx.mode
    W0 = ctx.W(0)
    e = 1 if direction == FORWARD else -1
    num = (
        m.q_pow(e) * (W0 * W0 * X)
        - (m.q_pow(1) + m.q_pow(-1)) * (W0 * X * W0)
        + m.q_pow(-e) * (X * W0 * W0)
    )
    return X + (m.one() / (m.qnum(1) * m.qnum(2))) * num


def verify_S_images(ctx: AqContext, k: int) -> CheckRecord:
    """Automorphism images of the index-k generators.

    (i) the image of G(k+1) reduces to Gt(k+1); (ii) the inverse image of
    Gt(k+1) reduces to G(k+1); (iii) W(-k) is fixed exactly (bound-0
    truncation); (iv) the truncated sum on W(k+1) equals the degree-1
    closed form verbatim in the free algebra.
    """
    if not 0 <= k <= ctx.K - 1:
        raise IndexOutOfRange(f"index k={k} needs k+1 arithmetic inside the cutoff")
    W0 = ctx.W(0)
    failures = []
    img_g = closed_image(ctx, ctx.G(k + 1), FORWARD)
    if not ctx.system.is_zero_mod(img_g - ctx.Gt(k + 1)).is_zero:
        failures.append("image-of-G")
    img_gt = closed_image(ctx, ctx.Gt(k + 1), INVERSE)
    if not ctx.system.is_zero_mod(img_gt - ctx.G(k + 1)).is_zero:
        failures.append("inverse-image-of-Gt")
    if truncated_sum(W0, ctx.W(-k), 0, FORWARD, ctx.mode) != ctx.W(-k):
        failures.append("fixed-Wminus")
    via_sum = truncated_sum(W0, ctx.W(k + 1), 1, FORWARD, ctx.mode)
    if via_sum != closed_image(ctx, ctx.W(k + 1), FORWARD):
        failures.append("closed-form-of-Wplus")
    return CheckRecord(
        name=f"automorphism-images-k{k}",
        params=(k,),
        status=FAIL if failures else PASS,
        anchor="automorphism-images",
        detail="; ".join(failures) if failures else "G -> Gt, Gt -> G, fixed W(-k), closed form",
    )


# ---------------------------------------------------------------------------
# proof replay: derivation chains behind the generator-class memberships
# ---------------------------------------------------------------------------

def proof_chain(ctx: AqContext, gen: str, k: int):
    """Displayed derivation lines with the relation families justifying each step.

    Returns a list of (expression, justification) where justification is
    None for the first line, "exact" for a pure free-algebra rearrangement,
    or a tuple of relation family ids whose instances carry the step.  Each
    chain starts at the triple bracket of the generator and ends at rho
    times its commutator with W(0), mirroring the membership derivations.
    """
    if not 0 <= k <= ctx.K - 1:
        raise IndexOutOfRange(f"index k={k} needs k+1 arithmetic inside the cutoff")
    W0 = ctx.W(0)
    m = ctx.mode
    inv_p = m.one() / (m.q_pow(1) + m.q_pow(-1))
    br, qbr, rho = ctx.br, ctx.qbr, ctx.rho
    G, Gt, Wp, Wm = ctx.G(k + 1), ctx.Gt(k + 1), ctx.W(k + 1), ctx.W(-k - 1)
    if gen == "Wplus":
        return [
            (qbr(W0, qbr(W0, br(W0, Wp), 1), -1), None),
            (inv_p * qbr(W0, qbr(W0, Gt - G, 1), -1), ("3p1a",)),
            (-inv_p * (qbr(W0, qbr(W0, G, 1), 1) + qbr(W0, qbr(W0, G, 1), -1)),
             ("3p2a", "3p2b")),
            (-br(W0, qbr(W0, G, 1)), "exact"),
            (rho * br(W0, Wp - Wm), ("3p2a",)),
            (rho * br(W0, Wp), ("3p4a",)),
        ]
    if gen == "G":
        return [
            (qbr(W0, qbr(W0, br(W0, G), 1), -1), None),
            (qbr(W0, br(W0, qbr(W0, G, 1)), -1), "exact"),
            (rho * qbr(W0, br(W0, Wm - Wp), -1), ("3p2a",)),
            (-rho * qbr(W0, br(W0, Wp), -1), ("3p4a",)),
            (rho * inv_p * qbr(W0, G - Gt, -1), ("3p1a",)),
            (rho * inv_p * qbr(Gt - G, W0, 1), "exact"),
            (rho * br(W0, G), ("3p2a", "3p2b")),
        ]
    if gen == "Gt":
        return [
            (qbr(W0, qbr(W0, br(W0, Gt), 1), -1), None),
            (qbr(W0, br(W0, qbr(W0, Gt, -1)), 1), "exact"),
            (-qbr(W0, br(W0, qbr(Gt, W0, 1)), 1), "exact"),
            (-rho * qbr(W0, br(W0, Wm - Wp), 1), ("3p2b",)),
            (rho * qbr(W0, br(W0, Wp), 1), ("3p4a",)),
            (rho * inv_p * qbr(W0, Gt - G, 1), ("3p1a",)),
            (rho * br(W0, Gt), ("3p2a", "3p2b")),
        ]
    raise ValueError(f"no replayable chain for generator class {gen!r}")


def replay_proof(ctx: AqContext, gen: str, k: int) -> CheckRecord:
    """Check that each derivation step follows from its cited relations alone."""
    chain = proof_chain(ctx, gen, k)
    failures = []
    for idx in range(1, len(chain)):
        expr_prev = chain[idx - 1][0]
        expr_next, justification = chain[idx]
        diff = expr_prev - expr_next
        if justification == "exact":
            if not diff.is_zero:
                failures.append(f"step-{idx}-not-exact")
            continue
        sub = ctx.subsystem(*justification)
        if not sub.is_zero_mod(diff).is_zero:
            failures.append(f"step-{idx}-not-a-consequence-of-{','.join(justification)}")
    return CheckRecord(
        name=f"proof-replay-{gen}-k{k}",
        params=(k,),
        status=FAIL if failures else PASS,
        anchor="proof-replay",
        detail="; ".join(failures) if failures else f"{len(chain) - 1} steps",
    )
