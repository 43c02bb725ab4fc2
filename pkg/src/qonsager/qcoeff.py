"""Exact arithmetic in the field of rational functions of q over the rationals.

Values are quotients of Laurent polynomials in q with rational coefficients,
kept in a canonical form so that structural equality coincides with equality
in the field:

* the denominator is an ordinary polynomial with nonzero constant term,
  integer coefficients of content 1 and positive leading coefficient;
* any power of q is carried by the numerator's exponent offset;
* numerator and denominator share no polynomial factor.

Internally a Laurent polynomial is a primitive integer coefficient vector
with positive leading entry times one rational scale; products of primitive
vectors stay primitive (Gauss), so multiplication is a single integer
convolution.  Polynomial gcds use a primitive pseudo-remainder sequence,
which keeps coefficient growth tame at the degrees this engine reaches.

A numeric mode is provided in which q is pinned to a fixed rational q0 with
q0 not in {0, 1, -1}; scalars are then plain Fractions.  Symbolic values are
exact and the arithmetic never leaves the rationals, so identity checks made
with this module are proofs, not approximations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd

from .errors import DivisionByZero, InvalidQ, PoleAtPoint

Rat = Fraction
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense lists, index = degree offset)
# ---------------------------------------------------------------------------

def _int_content(cs) -> int:
    g = 0
    for c in cs:
        g = _gcd(g, c if c >= 0 else -c)
        if g == 1:
            return 1
    return g or 1


def _exact_div_int(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials; remainder must be zero."""
    if len(den) == 1:
        d = den[0]
        return [c // d for c in num]
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(den) - 1]
        if c % den[-1]:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        out[k] = q
        if q:
            for i, dc in enumerate(den):
                rem[k + i] -= q * dc
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return out


def _primitive_gcd(a, b) -> list[int]:
    """GCD of integer polynomials via a primitive remainder sequence."""
    u, v = list(a), list(b)
    while v:
        r = list(u)
        lv = v[-1]
        while len(r) >= len(v):
            lr = r[-1]
            shift = len(r) - len(v)
            r = [lv * c for c in r]
            for i, vc in enumerate(v):
                r[shift + i] -= lr * vc
            while r and not r[-1]:
                r.pop()
            if not r:
                break
        c = _int_content(r)
        u, v = v, ([x // c for x in r] if r else [])
    if u and u[-1] < 0:
        u = [-c for c in u]
    return u


def _convolve(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Immutable Laurent polynomial in q with exact rational coefficients.

    Stored as an exponent offset, a primitive integer coefficient tuple with
    nonzero first entry and positive last entry, and one rational scale; the
    empty tuple with scale 1 is zero.  Coefficient k of q^(offset+i) equals
    scale * coeffs[i].
    """

    __slots__ = ("offset", "coeffs", "scale")

    def __init__(self, offset: int, fraction_coeffs):
        """Build from rational coefficients for q^offset, q^(offset+1), ..."""
        fraction_coeffs = [Fraction(c) for c in fraction_coeffs]
        den = 1
        for c in fraction_coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in fraction_coeffs]
        lp = _make(offset, ints, Fraction(1, den))
        object.__setattr__(self, "offset", lp.offset)
        object.__setattr__(self, "coeffs", lp.coeffs)
        object.__setattr__(self, "scale", lp.scale)

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _LP_ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _LP_ONE

    @staticmethod
    def q_power(n: int, coeff=_ONE) -> "LaurentPoly":
        coeff = Fraction(coeff)
        if not coeff:
            return _LP_ZERO
        return _make(n, [1], coeff)

    @staticmethod
    def from_terms(terms) -> "LaurentPoly":
        """Build from an iterable of (exponent, coefficient) pairs."""
        by_exp: dict[int, Rat] = {}
        for e, c in terms:
            by_exp[e] = by_exp.get(e, Fraction(0)) + Fraction(c)
        by_exp = {e: c for e, c in by_exp.items() if c}
        if not by_exp:
            return _LP_ZERO
        lo, hi = min(by_exp), max(by_exp)
        return LaurentPoly(lo, [by_exp.get(e, Fraction(0)) for e in range(lo, hi + 1)])

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> tuple[tuple[int, Rat], ...]:
        """Nonzero (exponent, coefficient) pairs in increasing exponent order."""
        return tuple(
            (self.offset + i, self.scale * c)
            for i, c in enumerate(self.coeffs)
            if c
        )

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.offset + len(self.coeffs) - 1

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return self.offset

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        a, b = self.scale, other.scale
        m1 = a.numerator * b.denominator
        m2 = b.numerator * a.denominator
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.offset - lo + i] += m1 * c
        for i, c in enumerate(other.coeffs):
            out[other.offset - lo + i] += m2 * c
        return _make(lo, out, Fraction(1, a.denominator * b.denominator))

    def __neg__(self) -> "LaurentPoly":
        if self.is_zero:
            return self
        return _raw(self.offset, self.coeffs, -self.scale)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero or other.is_zero:
            return _LP_ZERO
        return _raw(
            self.offset + other.offset,
            tuple(_convolve(self.coeffs, other.coeffs)),
            self.scale * other.scale,
        )

    def scaled(self, f: Rat) -> "LaurentPoly":
        if not f or self.is_zero:
            return _LP_ZERO
        return _raw(self.offset, self.coeffs, self.scale * f)

    def eval_at(self, q0: Rat) -> Rat:
        if not q0:
            raise InvalidQ("q must be nonzero")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc * self.scale * q0 ** self.offset

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.offset == other.offset
            and self.scale == other.scale
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.offset, self.coeffs, self.scale))

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in reversed(self.terms()):
            if e == 0:
                body = str(c)
            else:
                mag = "q" if e == 1 else f"q^{e}"
                if c == 1:
                    body = mag
                elif c == -1:
                    body = f"-{mag}"
                else:
                    body = f"{c}*{mag}"
            if parts and not body.startswith("-"):
                parts.extend(["+", body])
            elif parts:
                parts.extend(["-", body[1:]])
            else:
                parts.append(body)
        return " ".join(parts)


def _raw(offset: int, coeffs: tuple[int, ...], scale: Rat) -> LaurentPoly:
    """Wrap already-primitive positive-leading coefficients without checks."""
    lp = object.__new__(LaurentPoly)
    object.__setattr__(lp, "offset", offset)
    object.__setattr__(lp, "coeffs", coeffs)
    object.__setattr__(lp, "scale", scale)
    return lp


def _make(offset: int, ints: list[int], scale: Rat) -> LaurentPoly:
    """Normalize integer coefficients: trim, extract content, fix lead sign."""
    lo, hi = 0, len(ints)
    while hi > lo and not ints[hi - 1]:
        hi -= 1
    while lo < hi and not ints[lo]:
        lo += 1
    if lo == hi:
        return _LP_ZERO
    ints = ints[lo:hi]
    c = _int_content(ints)
    if ints[-1] < 0:
        c = -c
    if c != 1:
        ints = [x // c for x in ints]
    return _raw(offset + lo, tuple(ints), scale * c)


_LP_ZERO = _raw(0, (), _ONE)
_LP_ONE = _raw(0, (1,), _ONE)


# ---------------------------------------------------------------------------
# rational functions in q
# ---------------------------------------------------------------------------

class RationalFunctionQ:
    """Canonical quotient of Laurent polynomials in q over the rationals."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, _canonical: bool = False):
        if not _canonical:
            num, den = _canonicalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunctionQ is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RationalFunctionQ":
        return RF_ZERO

    @staticmethod
    def one() -> "RationalFunctionQ":
        return RF_ONE

    @staticmethod
    def from_laurent(p: LaurentPoly) -> "RationalFunctionQ":
        return RationalFunctionQ(p, _LP_ONE, _canonical=True)

    @staticmethod
    def from_fraction(f) -> "RationalFunctionQ":
        f = Fraction(f)
        if not f:
            return RF_ZERO
        return RationalFunctionQ(_raw(0, (1,), f), _LP_ONE, _canonical=True)

    @staticmethod
    def q_power(n: int) -> "RationalFunctionQ":
        return RationalFunctionQ(LaurentPoly.q_power(n), _LP_ONE, _canonical=True)

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.den is _LP_ONE and self.num == _LP_ONE

    def __bool__(self) -> bool:
        return not self.num.is_zero

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "RationalFunctionQ":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            s = self.num + other.num
            if s.is_zero:
                return RF_ZERO
            if len(self.den.coeffs) == 1:
                return RationalFunctionQ(s, self.den, _canonical=True)
            return RationalFunctionQ(s, self.den)
        return RationalFunctionQ(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunctionQ":
        return RationalFunctionQ(-self.num, self.den, _canonical=True)

    def __sub__(self, other) -> "RationalFunctionQ":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunctionQ":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RF_ZERO
        # monomial factors need no gcd: they only move the scale and offset
        if len(other.num.coeffs) == 1 and other.den is _LP_ONE:
            return RationalFunctionQ(self.num * other.num, self.den, _canonical=True)
        if len(self.num.coeffs) == 1 and self.den is _LP_ONE:
            return RationalFunctionQ(self.num * other.num, other.den, _canonical=True)
        return RationalFunctionQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunctionQ":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero("division by zero rational function")
        if self.is_zero:
            return RF_ZERO
        return RationalFunctionQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunctionQ":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "RationalFunctionQ":
        out = RF_ONE
        base = self if n >= 0 else RF_ONE / self
        for _ in range(abs(n)):
            out = out * base
        return out

    # -- evaluation --------------------------------------------------------

    def eval_at(self, q0) -> Rat:
        """Exact substitution q -> q0; q0 must avoid 0, 1, -1 and poles."""
        q0 = Fraction(q0)
        if q0 in (0, 1, -1):
            raise InvalidQ(f"q0 = {q0} is forbidden")
        d = self.den.eval_at(q0)
        if not d:
            raise PoleAtPoint(f"denominator vanishes at q = {q0}")
        return self.num.eval_at(q0) / d

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunctionQ.from_fraction(other)
        if not isinstance(other, RationalFunctionQ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den == _LP_ONE:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _coerce(x):
    if isinstance(x, RationalFunctionQ):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunctionQ.from_fraction(x)
    return NotImplemented


def _canonicalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero:
        raise DivisionByZero("zero denominator")
    if num.is_zero:
        return _LP_ZERO, _LP_ONE
    shift = num.offset - den.offset
    na, da = list(num.coeffs), list(den.coeffs)
    if len(na) > 1 and len(da) > 1:
        g = _primitive_gcd(na, da)
        if len(g) > 1:
            na = _exact_div_int(na, g)
            da = _exact_div_int(da, g)
    scale = num.scale / den.scale
    if da == [1]:
        return _make(shift, na, scale), _LP_ONE
    if na[-1] < 0:
        na = [-c for c in na]
        scale = -scale
    return _raw(shift, tuple(na), scale), _raw(0, tuple(da), _ONE)


RF_ZERO = RationalFunctionQ(_LP_ZERO, _LP_ONE, _canonical=True)
RF_ONE = RationalFunctionQ(_LP_ONE, _LP_ONE, _canonical=True)


def qint(n: int) -> RationalFunctionQ:
    """The q-integer (q^n - q^-n)/(q - q^-1) as an explicit Laurent polynomial."""
    if n == 0:
        return RF_ZERO
    sign = 1 if n > 0 else -1
    m = abs(n)
    p = LaurentPoly.from_terms((m - 1 - 2 * k, Fraction(sign)) for k in range(m))
    return RationalFunctionQ.from_laurent(p)


def rf_arith(op: str, x: RationalFunctionQ, y: RationalFunctionQ | None = None):
    """Dispatch exact field arithmetic by name; results are canonical."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    raise ValueError(f"unknown operation {op!r}")


def eval_at(x: RationalFunctionQ, q0) -> Rat:
    """Exact substitution q -> q0 (module-level convenience)."""
    return x.eval_at(q0)


# ---------------------------------------------------------------------------
# coefficient modes
# ---------------------------------------------------------------------------

class SymbolicQ:
    """Coefficient mode with q an indeterminate; scalars are RationalFunctionQ."""

    is_symbolic = True

    def __init__(self):
        self._qpow: dict[int, RationalFunctionQ] = {}
        self._qnum: dict[int, RationalFunctionQ] = {}

    def one(self):
        return RF_ONE

    def zero(self):
        return RF_ZERO

    def from_fraction(self, f):
        return RationalFunctionQ.from_fraction(f)

    def q_pow(self, n: int):
        out = self._qpow.get(n)
        if out is None:
            out = RationalFunctionQ.q_power(n)
            self._qpow[n] = out
        return out

    def qnum(self, n: int):
        """q^n - q^-n."""
        out = self._qnum.get(n)
        if out is None:
            if n == 0:
                out = RF_ZERO
            else:
                out = RationalFunctionQ.from_laurent(
                    LaurentPoly.from_terms([(n, _ONE), (-n, -_ONE)])
                )
            self._qnum[n] = out
        return out

    def qint(self, n: int):
        return qint(n)

    def coeff_is_zero(self, c) -> bool:
        return c.is_zero

    def __repr__(self):
        return "SymbolicQ"


class NumericQ:
    """Coefficient mode with q pinned to a rational q0 not in {0, 1, -1}."""

    is_symbolic = False

    def __init__(self, q0):
        q0 = Fraction(q0)
        if q0 in (0, 1, -1):
            raise InvalidQ(f"q0 = {q0} is forbidden")
        self.q0 = q0

    def one(self):
        return _ONE

    def zero(self):
        return Fraction(0)

    def from_fraction(self, f):
        return Fraction(f)

    def q_pow(self, n: int):
        return self.q0 ** n

    def qnum(self, n: int):
        return self.q0 ** n - self.q0 ** (-n)

    def qint(self, n: int):
        if n == 0:
            return Fraction(0)
        return self.qnum(n) / self.qnum(1)

    def coeff_is_zero(self, c) -> bool:
        return not c

    def __repr__(self):
        return f"NumericQ({self.q0})"


SYMBOLIC = SymbolicQ()


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------

def laurent_to_json(p: LaurentPoly) -> list:
    return [[e, str(c)] for e, c in p.terms()]


def laurent_from_json(data) -> LaurentPoly:
    return LaurentPoly.from_terms((int(e), Fraction(str(c))) for e, c in data)


def rf_to_json(x: RationalFunctionQ) -> dict:
    return {"num": laurent_to_json(x.num), "den": laurent_to_json(x.den)}


def rf_from_json(data) -> RationalFunctionQ:
    return RationalFunctionQ(
        laurent_from_json(data["num"]), laurent_from_json(data["den"])
    )
