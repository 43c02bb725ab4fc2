"""Quantum adjoint operator calculus.

For a fixed element A of an associative algebra the primitive map with twist
r sends X to q^r*A*X - q^-r*X*A.  From these primitives the module builds

* the balanced maps: twist 0 is the plain commutator divided by q - q^-1,
  and for n >= 1 the combination
  [(q^2n - q^-2n)^2 X + twist(n, twist(-n, X))] / [(q^2n - q^-2n)(q^2n+1 - q^-2n-1)];
* their running compositions (balanced product of order n applies the
  balanced maps 0 .. n-1 in turn, order 0 being the identity);
* the shift maps: order 0 is the identity, order n composes the balanced
  product of order n with the twist-n primitive (twist -n for the inverse
  direction) divided by q^2n - q^-2n;
* truncated sums of the shift maps, which realize the automorphism on
  elements annihilated by a balanced product.

Everything is applied eagerly and works uniformly for free-algebra
polynomials and exact matrices; only +, -, * and left scalar action are
used.  Primitives with distinct twists commute, which is what makes the
composition order immaterial; the formal operator type below keeps
compositions as data so that this can be tested directly.
"""

from __future__ import annotations

from .errors import ContextMismatch
from .freealg import NcPoly
from .qcoeff import SYMBOLIC

FORWARD = "forward"
INVERSE = "inverse"


def _check_direction(direction: str):
    if direction not in (FORWARD, INVERSE):
        raise ValueError(f"direction must be {FORWARD!r} or {INVERSE!r}")


def apply_ad(r: int, A, X, mode=SYMBOLIC):
    """q^r*A*X - q^-r*X*A."""
    return mode.q_pow(r) * (A * X) - mode.q_pow(-r) * (X * A)


def apply_bad(n: int, A, X, mode=SYMBOLIC):
    """Apply the balanced map of twist n (n >= 0)."""
    if n < 0:
        raise ValueError("balanced map needs n >= 0")
    if n == 0:
        return (mode.one() / mode.qnum(1)) * apply_ad(0, A, X, mode)
    s = mode.qnum(2 * n)
    t = mode.qnum(2 * n + 1)
    inner = apply_ad(n, A, apply_ad(-n, A, X, mode), mode)
    return (mode.one() / (s * t)) * ((s * s) * X + inner)


def apply_badprod(n: int, A, X, mode=SYMBOLIC):
    """Apply the balanced maps 0 .. n-1 in turn; n = 0 is the identity."""
    if n < 0:
        raise ValueError("balanced product needs n >= 0")
    for i in range(n):
        X = apply_bad(i, A, X, mode)
    return X


def apply_S(n: int, A, X, direction: str = FORWARD, mode=SYMBOLIC):
    """Apply the shift map of order n; order 0 is the identity."""
    _check_direction(direction)
    if n < 0:
        raise ValueError("shift map needs n >= 0")
    if n == 0:
        return X
    r = n if direction == FORWARD else -n
    return (mode.one() / mode.qnum(2 * n)) * apply_badprod(
        n, A, apply_ad(r, A, X, mode), mode
    )


def truncated_sum(A, X, N: int, direction: str = FORWARD, mode=SYMBOLIC):
    """Sum of the shift maps of orders 0 .. N applied to X.

    On an element annihilated by the balanced product of order N + 1 this
    equals the full formal sum, since every higher shift map contains that
    balanced product as a factor.
    """
    _check_direction(direction)
    out = X
    for n in range(1, N + 1):
        out = out + apply_S(n, A, X, direction, mode)
    return out


# ---------------------------------------------------------------------------
# formal operators: linear combinations of primitive compositions
# ---------------------------------------------------------------------------

class AdjointOperator:
    """Formal sum of compositions of twist primitives for a fixed base A.

    ``terms`` is a list of (coefficient, composition) pairs where a
    composition is a tuple of twist values; the empty tuple is the identity
    map.  Compositions are data: applying the operator expands them with
    the eager primitives above, and reordering a composition leaves the
    applied value unchanged because primitives commute.
    """

    __slots__ = ("base", "terms", "mode")

    def __init__(self, base, terms, mode=SYMBOLIC):
        self.base = base
        self.terms = [(c, tuple(comp)) for c, comp in terms if c]
        self.mode = mode

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(base, mode=SYMBOLIC) -> "AdjointOperator":
        return AdjointOperator(base, [(mode.one(), ())], mode)

    @staticmethod
    def ad(base, r: int, mode=SYMBOLIC) -> "AdjointOperator":
        return AdjointOperator(base, [(mode.one(), (r,))], mode)

    @staticmethod
    def bad(base, n: int, mode=SYMBOLIC) -> "AdjointOperator":
        if n == 0:
            return AdjointOperator(base, [(mode.one() / mode.qnum(1), (0,))], mode)
        s, t = mode.qnum(2 * n), mode.qnum(2 * n + 1)
        return AdjointOperator(
            base,
            [((s * s) / (s * t), ()), (mode.one() / (s * t), (n, -n))],
            mode,
        )

    @staticmethod
    def badprod(base, n: int, mode=SYMBOLIC) -> "AdjointOperator":
        out = AdjointOperator.identity(base, mode)
        for i in range(n):
            out = out.compose(AdjointOperator.bad(base, i, mode))
        return out

    @staticmethod
    def shift(base, n: int, direction: str = FORWARD, mode=SYMBOLIC) -> "AdjointOperator":
        _check_direction(direction)
        if n == 0:
            return AdjointOperator.identity(base, mode)
        r = n if direction == FORWARD else -n
        op = AdjointOperator.badprod(base, n, mode).compose(
            AdjointOperator.ad(base, r, mode)
        )
        return op.scaled(mode.one() / mode.qnum(2 * n))

    # -- algebra -----------------------------------------------------------

    def _check(self, other: "AdjointOperator"):
        if self.base != other.base:
            raise ContextMismatch("operators over different base elements")

    def compose(self, other: "AdjointOperator") -> "AdjointOperator":
        """self after other (irrelevant up to commutation of primitives)."""
        self._check(other)
        out: dict = {}
        for c1, w1 in self.terms:
            for c2, w2 in other.terms:
                w = w1 + w2
                out[w] = out.get(w, self.mode.zero()) + c1 * c2
        return AdjointOperator(self.base, list((c, w) for w, c in out.items()), self.mode)

    def __add__(self, other: "AdjointOperator") -> "AdjointOperator":
        self._check(other)
        out: dict = {}
        for c, w in self.terms + other.terms:
            out[w] = out.get(w, self.mode.zero()) + c
        return AdjointOperator(self.base, list((c, w) for w, c in out.items()), self.mode)

    def scaled(self, coeff) -> "AdjointOperator":
        return AdjointOperator(
            self.base, [(coeff * c, w) for c, w in self.terms], self.mode
        )

    def apply(self, X):
        out = None
        for c, comp in self.terms:
            val = X
            for r in reversed(comp):
                val = apply_ad(r, self.base, val, self.mode)
            val = c * val
            out = val if out is None else out + val
        if out is None:
            return self.mode.zero() * X
        return out

    def permuted(self, perm) -> "AdjointOperator":
        """Reorder each composition; the applied value must not change."""
        return AdjointOperator(
            self.base,
            [(c, tuple(w[i] for i in perm(len(w)))) for c, w in self.terms],
            self.mode,
        )

    def __repr__(self):
        body = " + ".join(f"({c!r})*ad{list(w)}" for c, w in self.terms) or "0"
        return f"AdjointOperator[{body}]"


# ---------------------------------------------------------------------------
# standardness certificates
# ---------------------------------------------------------------------------

DIRECT_VANISH = "direct-vanish"
PRODUCT_RULE = "product-rule"
GENERATOR_AXIOM = "generator-axiom"


class StandardnessCertificate:
    """Witness that the balanced product of order bound + 1 kills an element.

    Evidence is one of: a recorded direct vanishing check, the product rule
    (bounds add across factors), or an axiom attached to a presentation
    generator.
    """

    __slots__ = ("element", "bound", "evidence", "parents")

    def __init__(self, element: NcPoly, bound: int, evidence: str, parents=()):
        if bound < 0:
            raise ValueError("bound must be a natural number")
        if evidence not in (DIRECT_VANISH, PRODUCT_RULE, GENERATOR_AXIOM):
            raise ValueError(f"unknown evidence kind {evidence!r}")
        self.element = element
        self.bound = bound
        self.evidence = evidence
        self.parents = tuple(parents)

    def __repr__(self):
        return f"Certificate(bound={self.bound}, evidence={self.evidence})"


def certify_product(
    c1: StandardnessCertificate, c2: StandardnessCertificate
) -> StandardnessCertificate:
    """Certificate for a product element; the bounds add."""
    if c1.element.alphabet != c2.element.alphabet:
        raise ContextMismatch("certificates over different alphabets")
    return StandardnessCertificate(
        c1.element * c2.element,
        c1.bound + c2.bound,
        PRODUCT_RULE,
        parents=(c1, c2),
    )
