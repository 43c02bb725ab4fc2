"""Dense exact matrices and the small amount of linear algebra the engine needs.

Entries are exact scalars: Fractions in numeric mode, rational functions of
q in symbolic mode.  Everything here is elementary and done over the entry
field with no rounding: Gaussian elimination for solving and rank,
Faddeev-LeVerrier for characteristic polynomials, and an incremental
row-echelon basis for the dimension of a generated matrix algebra.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch


class ExactMatrix:
    """Immutable matrix with exact field entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("rows must be nonempty and of equal length")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *a):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int, one=Fraction(1)) -> "ExactMatrix":
        zero = 0 * one
        return ExactMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(n: int, m: int | None = None, zero=Fraction(0)) -> "ExactMatrix":
        m = n if m is None else m
        return ExactMatrix([[zero] * m for _ in range(n)])

    @staticmethod
    def diagonal(values) -> "ExactMatrix":
        values = list(values)
        zero = 0 * values[0]
        n = len(values)
        return ExactMatrix(
            [[values[i] if i == j else zero for j in range(n)] for i in range(n)]
        )

    # -- structure ---------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def dimension(self) -> int:
        if self.nrows != self.ncols:
            raise DimensionMismatch("matrix is not square")
        return self.nrows

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def trace(self):
        n = self.dimension
        out = self.rows[0][0]
        for i in range(1, n):
            out = out + self.rows[i][i]
        return out

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "ExactMatrix"):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch(
                f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}"
            )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        return ExactMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in r] for r in self.rows])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            return ExactMatrix([[a * other for a in r] for r in self.rows])
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.ncols} columns vs {other.nrows} rows")
        cols = list(zip(*other.rows))
        return ExactMatrix(
            [
                [_dot(row, col) for col in cols]
                for row in self.rows
            ]
        )

    def __rmul__(self, scalar) -> "ExactMatrix":
        return ExactMatrix([[scalar * a for a in r] for r in self.rows])

    def __pow__(self, n: int) -> "ExactMatrix":
        if n < 0:
            raise ValueError("negative matrix powers are not supported")
        out = ExactMatrix.identity(self.dimension, _one_like(self.rows[0][0]))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"ExactMatrix[{body}]"


def _dot(u, v):
    out = None
    for a, b in zip(u, v):
        p = a * b
        out = p if out is None else out + p
    return out


def _one_like(x):
    if isinstance(x, Fraction):
        return Fraction(1)
    return x ** 0 if not isinstance(x, int) else Fraction(1)


# ---------------------------------------------------------------------------
# exact linear algebra over Fractions
# ---------------------------------------------------------------------------

def solve_linear(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve rows * x = rhs exactly; None if inconsistent, free vars -> 1."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows, ncols = len(m), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols]:
            return None
    x = [Fraction(1)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols] - sum(
            (m[i][j] * x[j] for j in range(ncols) if j != c and m[i][j]),
            Fraction(0),
        )
    return x


class EchelonBasis:
    """Incremental row-echelon basis over Fractions for span growth."""

    def __init__(self):
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def add(self, vec) -> bool:
        """Reduce vec against the basis; add if independent. True if added."""
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        pivot = next((i for i, a in enumerate(v) if a), None)
        if pivot is None:
            return False
        pv = v[pivot]
        self.rows.append([a / pv for a in v])
        self.pivots.append(pivot)
        return True

    @property
    def dimension(self) -> int:
        return len(self.rows)


def generated_algebra_dimension(mats: list[ExactMatrix], cap: int | None = None) -> int:
    """Dimension of the unital algebra generated by the given matrices."""
    n = mats[0].dimension
    one = _one_like(mats[0].rows[0][0])
    cap = cap if cap is not None else n * n
    basis = EchelonBasis()
    queue = [ExactMatrix.identity(n, one)]
    basis.add([x for row in queue[0].rows for x in row])
    while queue and basis.dimension < cap:
        m = queue.pop()
        for g in mats:
            cand = g * m
            if basis.add([x for row in cand.rows for x in row]):
                queue.append(cand)
    return basis.dimension


def charpoly(mat: ExactMatrix) -> list:
    """Characteristic polynomial coefficients [c0, ..., cn], leading last."""
    n = mat.dimension
    one = _one_like(mat.rows[0][0])
    ident = ExactMatrix.identity(n, one)
    coeffs = [one]
    M = ident
    for k in range(1, n + 1):
        AM = mat * M
        ck = (Fraction(-1, k) * one) * AM.trace()
        coeffs.append(ck)
        M = AM + ck * ident
    return list(reversed(coeffs))


def rational_eigenvalues(mat: ExactMatrix) -> list[Fraction] | None:
    """All eigenvalues if the characteristic polynomial splits over Q.

    Returns None when it does not split with the divisor search used here;
    intended for the small matrices this engine constructs.
    """
    coeffs = charpoly(mat)
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots: list[Fraction] = []
    while len(ints) > 1:
        while ints and ints[0] == 0:
            roots.append(Fraction(0))
            ints = ints[1:]
        if len(ints) <= 1:
            break
        root = _find_rational_root(ints)
        if root is None:
            return None
        roots.append(root)
        ints = _deflate(ints, root)
    return roots if len(roots) == mat.dimension else None


def _gcd_int(a, b):
    from math import gcd

    return gcd(a, b)


def _divisors(n: int, cap: int = 40000) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n and len(out) < cap:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _find_rational_root(ints: list[int]) -> Fraction | None:
    for p in _divisors(ints[0]):
        for qd in _divisors(ints[-1]):
            for sign in (1, -1):
                cand = Fraction(sign * p, qd)
                if not _poly_eval(ints, cand):
                    return cand
    return None


def _poly_eval(ints: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(ints):
        acc = acc * x + c
    return acc


def _deflate(ints: list[int], root: Fraction) -> list[int]:
    """Synthetic division by (x - root); the root must be exact."""
    out = [Fraction(c) for c in ints]
    quot = [Fraction(0)] * (len(out) - 1)
    carry = Fraction(0)
    for k in range(len(out) - 1, 0, -1):
        quot[k - 1] = out[k] + carry
        carry = quot[k - 1] * root
    den = 1
    for c in quot:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    return [int(c * den) for c in quot]
