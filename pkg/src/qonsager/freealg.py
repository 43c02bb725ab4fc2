"""Noncommutative polynomials over a finite generator alphabet.

Monomials are words (tuples of generator indices); a polynomial is a finite
map from words to nonzero coefficients.  Coefficients may be symbolic
(RationalFunctionQ) or numeric (Fraction); the arithmetic is agnostic.
Words are ordered degree-lexicographically using the alphabet's declaration
order as precedence (earlier name = higher letter), which fixes a
deterministic term order for iteration, display and serialization.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import AlphabetMismatch, MissingImage, ParseError
from .qcoeff import SYMBOLIC, RationalFunctionQ, rf_from_json, rf_to_json

Word = tuple[int, ...]


class Alphabet:
    """Ordered set of distinct generator names; order gives precedence."""

    __slots__ = ("names", "index")

    def __init__(self, names):
        names = tuple(names)
        if not names or len(set(names)) != len(names):
            raise ValueError("generator names must be distinct and nonempty")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "index", {n: i for i, n in enumerate(names)})

    def __setattr__(self, *a):
        raise AttributeError("Alphabet is immutable")

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet{self.names}"

    def word(self, letters: str | list[str]) -> Word:
        """Translate a sequence of generator names into a word."""
        if isinstance(letters, str):
            letters = list(letters)
        try:
            return tuple(self.index[x] for x in letters)
        except KeyError as e:
            raise ParseError(f"unknown generator {e.args[0]!r}")

    def spell(self, w: Word) -> list[str]:
        return [self.names[i] for i in w]


def deglex_key(w: Word):
    """Sort key under which larger means larger in degree-lex order."""
    return (len(w), tuple(-x for x in w))


class NcPoly:
    """Immutable noncommutative polynomial: word -> nonzero coefficient."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: dict):
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "terms", {w: c for w, c in terms.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("NcPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(alphabet: Alphabet) -> "NcPoly":
        return NcPoly(alphabet, {})

    @staticmethod
    def one(alphabet: Alphabet, mode=SYMBOLIC) -> "NcPoly":
        return NcPoly(alphabet, {(): mode.one()})

    @staticmethod
    def generator(alphabet: Alphabet, name: str, mode=SYMBOLIC) -> "NcPoly":
        return NcPoly(alphabet, {(alphabet.index[name],): mode.one()})

    @staticmethod
    def monomial(alphabet: Alphabet, w: Word, coeff) -> "NcPoly":
        return NcPoly(alphabet, {tuple(w): coeff})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self, reverse: bool = True):
        """(word, coeff) pairs in deglex order, leading term first by default."""
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=reverse)

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=deglex_key)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(len(w) for w in self.terms)

    def support(self):
        return self.terms.keys()

    def coeff(self, w: Word):
        return self.terms.get(tuple(w))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "NcPoly"):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(
                f"{self.alphabet!r} vs {other.alphabet!r}"
            )

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NcPoly(self.alphabet, out)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other) -> "NcPoly":
        if not isinstance(other, NcPoly):
            return self.scaled(other)
        self._check(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                if s is None:
                    out[w] = c
                else:
                    s = s + c
                    if s:
                        out[w] = s
                    else:
                        del out[w]
        return NcPoly(self.alphabet, out)

    def __rmul__(self, coeff) -> "NcPoly":
        return self.scaled(coeff)

    def scaled(self, coeff) -> "NcPoly":
        if not coeff:
            return NcPoly(self.alphabet, {})
        return NcPoly(self.alphabet, {w: coeff * c for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NcPoly)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, frozenset(self.terms.items())))

    # -- algebra maps ------------------------------------------------------

    def substitute(self, images: dict[str, "NcPoly"]) -> "NcPoly":
        """Apply the algebra map sending each generator to its image.

        Every generator occurring in the polynomial must have an image; all
        images must live over one common alphabet.
        """
        target = None
        for img in images.values():
            if target is None:
                target = img.alphabet
            elif target != img.alphabet:
                raise AlphabetMismatch("substitution images over mixed alphabets")
        if target is None:
            target = self.alphabet
        imgs: dict[int, NcPoly] = {}
        for name, img in images.items():
            imgs[self.alphabet.index[name]] = img
        out = NcPoly.zero(target)
        for w, c in self.terms.items():
            acc = NcPoly(target, {(): c})
            for letter in w:
                img = imgs.get(letter)
                if img is None:
                    raise MissingImage(
                        f"no image for generator {self.alphabet.names[letter]!r}"
                    )
                acc = acc * img
            out = out + acc
        return out

    def evaluate(self, assignment: dict[str, object], scalar_one):
        """Evaluate in any associative algebra (e.g. exact matrices).

        ``assignment`` maps generator names to algebra elements, and
        ``scalar_one`` is the algebra's identity; coefficients must multiply
        algebra elements from the left.
        """
        values = {self.alphabet.index[n]: v for n, v in assignment.items()}
        out = None
        for w, c in self.terms.items():
            acc = scalar_one
            for letter in w:
                if letter not in values:
                    raise MissingImage(
                        f"no value for generator {self.alphabet.names[letter]!r}"
                    )
                acc = acc * values[letter]
            term = c * acc
            out = term if out is None else out + term
        if out is None:
            return 0 * scalar_one
        return out

    def map_coeffs(self, f) -> "NcPoly":
        return NcPoly(self.alphabet, {w: f(c) for w, c in self.terms.items()})

    # -- display -----------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "*".join(self.alphabet.spell(w)) if w else "1"
            parts.append(f"({c!r})*{mono}" if w else f"({c!r})")
        return " + ".join(parts)


def is_zero(p: NcPoly) -> bool:
    """Exact zero test; canonical form makes this structural."""
    return p.is_zero


def nc_mul(p: NcPoly, r: NcPoly) -> NcPoly:
    """Bilinear concatenation product (module-level convenience)."""
    return p * r


# ---------------------------------------------------------------------------
# JSON expression format
# ---------------------------------------------------------------------------

def _coeff_to_json(c):
    if isinstance(c, RationalFunctionQ):
        return rf_to_json(c)
    return str(c)


def _coeff_from_json(data, mode):
    if isinstance(data, dict):
        x = rf_from_json(data)
        if mode.is_symbolic:
            return x
        return x.eval_at(mode.q0)
    if isinstance(data, (int, str)):
        f = Fraction(str(data))
        return mode.from_fraction(f)
    raise ParseError(f"cannot decode coefficient {data!r}")


def ncpoly_to_json(p: NcPoly) -> dict:
    """Canonical JSON encoding; terms emitted leading-first in deglex order."""
    return {
        "alphabet": list(p.alphabet.names),
        "terms": [
            {"word": p.alphabet.spell(w), "coeff": _coeff_to_json(c)}
            for w, c in p.sorted_terms()
        ],
    }


def ncpoly_from_json(data, mode=SYMBOLIC) -> NcPoly:
    try:
        alphabet = Alphabet(data["alphabet"])
        terms: dict = {}
        for i, t in enumerate(data["terms"]):
            try:
                w = alphabet.word(t["word"])
            except ParseError as e:
                raise ParseError(str(e), location=f"terms[{i}].word")
            c = _coeff_from_json(t["coeff"], mode)
            if w in terms:
                c = terms[w] + c
            if c:
                terms[w] = c
            elif w in terms:
                del terms[w]
        return NcPoly(alphabet, terms)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed expression JSON: {e}")
