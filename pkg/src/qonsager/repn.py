"""Exact matrix realizations: eigenvalue arrays, idempotents, twisting.

On a module where the first generator acts diagonalizably with eigenvalue
array theta_i = a*q^(d-2i) + a^(-1)*q^(2i-d), the primitive idempotents E_i
come from Lagrange interpolation, the scalars t_i = a^(2i)*q^(2i(d-i))
assemble the invertible twisting element Psi = sum t_i E_i, and the shift
automorphism acts by conjugation: its image of X equals Psi^(-1) X Psi.
The truncated operator sum, the entrywise scalar sums and the conjugation
are three independent routes to the same map, and the module checks them
against each other exactly.

Tridiagonal pairs are realized with exact rational entries.  The diameter-1
pair has a closed form; larger diameters go through a file import or a
split-form search that solves the first defining relation (linear in the
second generator) for the superdiagonal of an upper-bidiagonal candidate
and then validates every invariant, reporting failure without prejudice.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .adjoint import FORWARD, INVERSE, apply_ad, apply_badprod, truncated_sum
from .errors import (
    DegenerateEigenvalues,
    DimensionMismatch,
    InvalidQ,
    InvariantViolation,
    NotDiagonalizable,
    ParseError,
)
from .matrices import (
    ExactMatrix,
    generated_algebra_dimension,
    rational_eigenvalues,
    solve_linear,
)
from .qcoeff import SYMBOLIC, NumericQ
from .report import CheckRecord, FAIL, PASS


def theta_sequence(d: int, a, q0) -> list[Fraction]:
    """Eigenvalue array a*q0^(d-2i) + a^(-1)*q0^(2i-d) for i = 0..d.

    Rejects forbidden q0 and eigenvalue collisions, and asserts the two
    facts the array is used for downstream: adjacent pairs are roots of
    x^2 - (q^2+q^-2)xy + y^2 + (q^2-q^-2)^2 and the interior satisfies the
    three-term recurrence with coefficient q^2 + q^-2.
    """
    if d < 1:
        raise ValueError("diameter must be at least 1")
    a = Fraction(a)
    if not a:
        raise ValueError("a must be nonzero")
    q0 = Fraction(q0)
    if q0 in (0, 1, -1):
        raise InvalidQ(f"q0 = {q0} is forbidden")
    theta = [a * q0 ** (d - 2 * i) + q0 ** (2 * i - d) / a for i in range(d + 1)]
    if len(set(theta)) != d + 1:
        raise DegenerateEigenvalues(f"eigenvalue collision for a={a}, q0={q0}, d={d}")
    c2 = q0 ** 2 + q0 ** -2
    rho = (q0 ** 2 - q0 ** -2) ** 2
    for i in range(d):
        p = theta[i] ** 2 - c2 * theta[i] * theta[i + 1] + theta[i + 1] ** 2 + rho
        if p:
            raise AssertionError("adjacent eigenvalue constraint violated")
    for j in range(1, d):
        if theta[j - 1] - c2 * theta[j] + theta[j + 1]:
            raise AssertionError("three-term recurrence violated")
    return theta


@dataclass
class SpectralData:
    """Eigenstructure of the first generator plus the twisting element."""

    d: int
    a: Fraction
    q0: Fraction | None
    mode: object
    A: ExactMatrix
    theta: list
    t: list
    E: list[ExactMatrix]
    Psi: ExactMatrix
    PsiInv: ExactMatrix


def spectral_data(d: int, a, q0, A: ExactMatrix | None = None, mode=None) -> SpectralData:
    """Idempotents by Lagrange interpolation, twist scalars, and the twist.

    With A omitted the diagonal model is used, but the Lagrange route is
    kept so that imported non-diagonal matrices (for example split-form
    pairs) are supported identically.  All structural identities are
    validated exactly at construction.
    """
    a = Fraction(a)
    if mode is None:
        mode = NumericQ(q0)
    if mode.is_symbolic:
        theta = [
            a * mode.q_pow(d - 2 * i) + (1 / a) * mode.q_pow(2 * i - d)
            for i in range(d + 1)
        ]
        if len(set(theta)) != d + 1:
            raise DegenerateEigenvalues("eigenvalue collision")
        t = [a ** (2 * i) * mode.q_pow(2 * i * (d - i)) for i in range(d + 1)]
        q0 = None
    else:
        theta = theta_sequence(d, a, q0)
        q0 = Fraction(q0)
        t = [a ** (2 * i) * q0 ** (2 * i * (d - i)) for i in range(d + 1)]
    one = mode.one()
    if A is None:
        A = ExactMatrix.diagonal(theta)
    if A.dimension != d + 1:
        raise DimensionMismatch("matrix dimension must be d + 1")
    ident = ExactMatrix.identity(d + 1, one)
    E = []
    for i in range(d + 1):
        P = ident
        for j in range(d + 1):
            if j != i:
                P = P * (A - theta[j] * ident)
                P = (one / (theta[i] - theta[j])) * P
        E.append(P)
    total = ExactMatrix.zeros(d + 1, zero=0 * one)
    for Ei in E:
        total = total + Ei
    if total != ident:
        raise NotDiagonalizable("idempotents do not resolve the identity")
    for i in range(d + 1):
        if not (A * E[i] - theta[i] * E[i]).is_zero():
            raise NotDiagonalizable("matrix does not act by its eigenvalue array")
        for j in range(d + 1):
            prod = E[i] * E[j]
            expected = E[i] if i == j else ExactMatrix.zeros(d + 1, zero=0 * one)
            if prod != expected:
                raise NotDiagonalizable("idempotent orthogonality fails")
    Psi = ExactMatrix.zeros(d + 1, zero=0 * one)
    PsiInv = ExactMatrix.zeros(d + 1, zero=0 * one)
    for i in range(d + 1):
        Psi = Psi + t[i] * E[i]
        PsiInv = PsiInv + (one / t[i]) * E[i]
    assert Psi * PsiInv == ident
    return SpectralData(d, a, q0, mode, A, theta, t, E, Psi, PsiInv)


# ---------------------------------------------------------------------------
# scalar sums
# ---------------------------------------------------------------------------

def sigma_factor(r: int, i: int, j: int, sd: SpectralData):
    """Scalar of the balanced map of twist r on the (i, j) eigenline."""
    m = sd.mode
    th_i, th_j = sd.theta[i], sd.theta[j]
    num = m.qnum(2 * r) ** 2 + (m.q_pow(r) * th_i - m.q_pow(-r) * th_j) * (
        m.q_pow(-r) * th_i - m.q_pow(r) * th_j
    )
    return num / (m.qnum(2 * r) * m.qnum(2 * r + 1))


def sigma_prefactor(n: int, i: int, j: int, sd: SpectralData):
    """Scalar of the order-n balanced product preceded by the commutator.

    This is the parenthetical factor of the n-th summand; it vanishes for
    n > |i - j|.
    """
    m = sd.mode
    out = (sd.theta[i] - sd.theta[j]) / m.qnum(1)
    for r in range(1, n):
        out = out * sigma_factor(r, i, j, sd)
    return out


def scalar_S_ratio(i: int, j: int, sd: SpectralData, direction: str = FORWARD):
    """Truncated scalar sum on the (i, j) eigenline.

    Forward it equals t_j / t_i and inverse t_i / t_j; truncation at
    n = |i - j| is exact because the prefactor vanishes beyond it.
    """
    m = sd.mode
    th_i, th_j = sd.theta[i], sd.theta[j]
    out = m.one()
    for n in range(1, abs(i - j) + 1):
        if direction == FORWARD:
            last = (m.q_pow(n) * th_i - m.q_pow(-n) * th_j) / m.qnum(2 * n)
        else:
            last = (m.q_pow(-n) * th_i - m.q_pow(n) * th_j) / m.qnum(2 * n)
        out = out + sigma_prefactor(n, i, j, sd) * last
    return out


# ---------------------------------------------------------------------------
# the automorphism on matrices
# ---------------------------------------------------------------------------

def matrix_lusztig(X: ExactMatrix, sd: SpectralData, direction: str = FORWARD) -> ExactMatrix:
    """Truncated shift-map sum computed with matrix products.

    Truncation at the diameter is exact: on each eigenline the summand
    scalar vanishes beyond the index distance, which is at most d.
    """
    if X.dimension != sd.d + 1:
        raise DimensionMismatch("matrix dimension must be d + 1")
    return truncated_sum(sd.A, X, sd.d, direction, sd.mode)


def verify_conjugation(sd: SpectralData, trials: int, seed: int) -> CheckRecord:
    """Seeded random matrices: the operator sum equals twist conjugation."""
    if trials < 1:
        raise ValueError("at least one trial required")
    rng = random.Random(seed)
    n = sd.d + 1
    failures = []
    for k in range(trials):
        X = ExactMatrix(
            [[sd.mode.from_fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(n)]
        )
        fwd = matrix_lusztig(X, sd, FORWARD)
        inv = matrix_lusztig(X, sd, INVERSE)
        if fwd != sd.PsiInv * X * sd.Psi or inv != sd.Psi * X * sd.PsiInv:
            failures.append(k)
    return CheckRecord(
        name="conjugation",
        params=(sd.d, str(sd.a), str(sd.q0), trials, seed),
        status=FAIL if failures else PASS,
        anchor="twist-conjugation",
        detail=f"{trials} random matrices" + (f"; failing trials {failures}" if failures else ""),
    )


def random_a1_matrix(sd: SpectralData, seed: int) -> ExactMatrix:
    """Seeded random tridiagonal matrix with nonzero off-diagonals.

    In the eigenbasis of the diagonal model such a matrix is annihilated by
    the order-2 balanced product; this is asserted at construction.
    """
    rng = random.Random(seed)
    n = sd.d + 1
    f = sd.mode.from_fraction

    def nonzero():
        x = 0
        while not x:
            x = rng.randint(-5, 5)
        return x

    rows = [[f(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = f(rng.randint(-5, 5))
        if i + 1 < n:
            rows[i][i + 1] = f(nonzero())
            rows[i + 1][i] = f(nonzero())
    X = ExactMatrix(rows)
    assert apply_badprod(2, sd.A, X, sd.mode).is_zero()
    return X


def higher_dg_matrix(r: int, sd: SpectralData, seed: int) -> CheckRecord:
    """Order r + 1 balanced product annihilates the r-th power, exactly."""
    if r < 1:
        raise ValueError("order must be a positive integer")
    X = random_a1_matrix(sd, seed)
    value = apply_badprod(r + 1, sd.A, X ** r, sd.mode)
    return CheckRecord(
        name=f"higher-dg-matrix-r{r}",
        params=(r, sd.d, str(sd.a), str(sd.q0), seed),
        status=PASS if value.is_zero() else FAIL,
        anchor="higher-dg",
        detail=f"d={sd.d}",
    )


# ---------------------------------------------------------------------------
# tridiagonal pairs
# ---------------------------------------------------------------------------

@dataclass
class TDPair:
    """Exact matrix pair acting tridiagonally on each other's eigenbases."""

    d: int
    a: Fraction
    b: Fraction
    q0: Fraction
    A: ExactMatrix
    B: ExactMatrix
    theta: list[Fraction]
    theta_star: list[Fraction]


def _dg_defect(first: ExactMatrix, second: ExactMatrix, q0: Fraction) -> ExactMatrix:
    """Defect of the degree-4 relation with the roles (first, second)."""
    c3 = q0 ** 2 + 1 + q0 ** -2
    rho = (q0 ** 2 - q0 ** -2) ** 2
    A, B = first, second
    return (
        A * A * A * B
        - c3 * (A * A * B * A)
        + c3 * (A * B * A * A)
        - B * A * A * A
        - rho * (B * A - A * B)
    )


def _idempotents(M: ExactMatrix, eigs: list[Fraction]) -> list[ExactMatrix] | None:
    """Lagrange idempotents of M for the given simple spectrum, or None."""
    n = M.dimension
    ident = ExactMatrix.identity(n)
    ann = ident
    for lam in eigs:
        ann = ann * (M - lam * ident)
    if not ann.is_zero():
        return None
    out = []
    for i, lam in enumerate(eigs):
        P = ident
        for j, mu in enumerate(eigs):
            if j != i:
                P = (Fraction(1) / (lam - mu)) * (P * (M - mu * ident))
        if P.is_zero():
            return None
        out.append(P)
    return out


def validate_td_pair(tp: TDPair) -> list[str]:
    """All structural invariants; returns the list of violations (empty = ok)."""
    violations = []
    n = tp.d + 1
    if tp.A.dimension != n or tp.B.dimension != n:
        return ["dimension"]
    try:
        theta = theta_sequence(tp.d, tp.a, tp.q0)
        theta_star = theta_sequence(tp.d, tp.b, tp.q0)
    except (DegenerateEigenvalues, InvalidQ) as e:
        return [f"eigenvalue-arrays: {e}"]
    if theta != tp.theta or theta_star != tp.theta_star:
        violations.append("eigenvalue-arrays")
    EA = _idempotents(tp.A, tp.theta)
    if EA is None:
        violations.append("first-generator-diagonalizable")
    EB = _idempotents(tp.B, tp.theta_star)
    if EB is None:
        EB = _idempotents(tp.B, list(reversed(tp.theta_star)))
    if EB is None:
        violations.append("second-generator-diagonalizable")
    if EA is not None and EB is not None:
        for Es, M, label in ((EA, tp.B, "second-on-first"), (EB, tp.A, "first-on-second")):
            for i in range(n):
                for j in range(n):
                    block = Es[i] * M * Es[j]
                    if abs(i - j) > 1 and not block.is_zero():
                        violations.append(f"band-{label}-({i},{j})")
                    if abs(i - j) == 1 and block.is_zero():
                        violations.append(f"offdiagonal-vanishes-{label}-({i},{j})")
    if not _dg_defect(tp.A, tp.B, tp.q0).is_zero():
        violations.append("relation-1")
    if not _dg_defect(tp.B, tp.A, tp.q0).is_zero():
        violations.append("relation-2")
    if generated_algebra_dimension([tp.A, tp.B]) != n * n:
        violations.append("irreducibility")
    return violations


def td_pair_d1(a, b, q0) -> TDPair:
    """Closed-form diameter-1 pair: A diagonal, B symmetric with the dual array."""
    a, b, q0 = Fraction(a), Fraction(b), Fraction(q0)
    theta = theta_sequence(1, a, q0)
    theta_star = theta_sequence(1, b, q0)
    A = ExactMatrix.diagonal(theta)
    mid = (theta_star[0] + theta_star[1]) / 2
    off = (theta_star[0] - theta_star[1]) / 2
    B = ExactMatrix([[mid, off], [off, mid]])
    tp = TDPair(1, a, b, q0, A, B, theta, theta_star)
    violations = validate_td_pair(tp)
    if violations:
        raise InvariantViolation(violations)
    return tp


def check_dg_spectral(
    A: ExactMatrix,
    B: ExactMatrix,
    q0,
    theta: list[Fraction] | None = None,
    theta_star: list[Fraction] | None = None,
) -> CheckRecord:
    """Verify the first relation spectrally and directly; dually if possible.

    The spectral route: sandwiching the relation defect between idempotents
    shows it vanishes exactly when every eigenline with a nonzero scalar
    factor (theta_i - theta_j) * p(i, j) carries a zero block of B.  The
    direct route evaluates the relation itself.  Both must agree.
    """
    q0 = Fraction(q0)
    if theta is None:
        theta = rational_eigenvalues(A)
        if theta is None or len(set(theta)) != len(theta):
            raise NotDiagonalizable("no simple rational spectrum found")
    EA = _idempotents(A, theta)
    if EA is None:
        raise NotDiagonalizable("first matrix is not diagonalizable with the given spectrum")
    n = A.dimension
    c2 = q0 ** 2 + q0 ** -2
    rho = (q0 ** 2 - q0 ** -2) ** 2
    problems = []

    def p_scalar(ti, tj):
        return ti ** 2 - c2 * ti * tj + tj ** 2 + rho

    for i in range(n):
        for j in range(n):
            factor = (theta[i] - theta[j]) * p_scalar(theta[i], theta[j])
            block = EA[i] * B * EA[j]
            if factor and not block.is_zero():
                problems.append(f"spectral-({i},{j})")
            if abs(i - j) == 1 and block.is_zero():
                problems.append(f"offdiagonal-vanishes-({i},{j})")
    if not _dg_defect(A, B, q0).is_zero():
        problems.append("relation-1-direct")
    detail = "relation 1 spectral + direct"
    if theta_star is not None:
        EB = _idempotents(B, theta_star)
        if EB is None:
            EB = _idempotents(B, list(reversed(theta_star)))
        if EB is None:
            problems.append("second-generator-diagonalizable")
        else:
            for i in range(n):
                for j in range(n):
                    if abs(i - j) > 1 and not (EB[i] * A * EB[j]).is_zero():
                        problems.append(f"dual-band-({i},{j})")
            if not _dg_defect(B, A, q0).is_zero():
                problems.append("relation-2-direct")
            detail = "both relations, spectral + direct"
    return CheckRecord(
        name="dg-spectral",
        status=FAIL if problems else PASS,
        anchor="spectral-criterion",
        detail=detail if not problems else "; ".join(problems),
    )


# ---------------------------------------------------------------------------
# import / export / twist / search
# ---------------------------------------------------------------------------

def matrix_to_json(M: ExactMatrix) -> dict:
    return {
        "dimension": M.dimension,
        "entries": [[str(x) for x in row] for row in M.rows],
    }


def matrix_from_json(data) -> ExactMatrix:
    try:
        n = int(data["dimension"])
        rows = [[Fraction(str(x)) for x in row] for row in data["entries"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed matrix JSON: {e}")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError("matrix entries do not match the declared dimension")
    return ExactMatrix(rows)


def td_pair_to_json(tp: TDPair) -> dict:
    return {
        "A": matrix_to_json(tp.A),
        "B": matrix_to_json(tp.B),
        "a": str(tp.a),
        "b": str(tp.b),
        "q": str(tp.q0),
        "d": tp.d,
    }


def td_pair_from_json(data) -> TDPair:
    try:
        d = int(data["d"])
        a, b, q0 = Fraction(str(data["a"])), Fraction(str(data["b"])), Fraction(str(data["q"]))
        A = matrix_from_json(data["A"])
        B = matrix_from_json(data["B"])
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed pair JSON: {e}")
    theta = theta_sequence(d, a, q0)
    theta_star = theta_sequence(d, b, q0)
    return TDPair(d, a, b, q0, A, B, theta, theta_star)


def import_td_pair(path) -> TDPair:
    """Load and fully validate a pair file; name every violated invariant."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError:
        raise
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}", location=str(path))
    tp = td_pair_from_json(data)
    violations = validate_td_pair(tp)
    if violations:
        raise InvariantViolation(violations)
    return tp


def twist_module(tp: TDPair, sd: SpectralData | None = None, direction: str = FORWARD) -> TDPair:
    """Action of the pair on the twisted module: conjugate B by the twist.

    The first generator commutes with the twist and is unchanged; the
    output is revalidated and keeps both eigenvalue arrays.
    """
    if sd is None:
        sd = spectral_data(tp.d, tp.a, tp.q0, A=tp.A)
    if sd.A != tp.A:
        raise DimensionMismatch("spectral data does not belong to this pair")
    if direction == FORWARD:
        B2 = sd.Psi * tp.B * sd.PsiInv
    else:
        B2 = sd.PsiInv * tp.B * sd.Psi
    out = TDPair(tp.d, tp.a, tp.b, tp.q0, tp.A, B2, tp.theta, tp.theta_star)
    violations = validate_td_pair(out)
    if violations:
        raise InvariantViolation(violations)
    return out


def search_td_pair(d: int, a, b, q0) -> TDPair | None:
    """Split-form search for a pair of the given diameter, or None.

    Candidate: the first generator lower bidiagonal with eigenvalue diagonal
    and unit subdiagonal; the second upper bidiagonal with the dual
    eigenvalues (in either orientation) on the diagonal and unknown
    superdiagonal.  The first relation is linear in the candidate, so the
    unknowns solve a linear system; any exact solution is accepted only if
    the full invariant set validates.
    """
    a, b, q0 = Fraction(a), Fraction(b), Fraction(q0)
    try:
        theta = theta_sequence(d, a, q0)
        theta_star = theta_sequence(d, b, q0)
    except (DegenerateEigenvalues, InvalidQ):
        return None
    n = d + 1
    rows_A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows_A[i][i] = theta[i]
        if i + 1 < n:
            rows_A[i + 1][i] = Fraction(1)
    A = ExactMatrix(rows_A)
    for diag in (list(theta_star[::-1]), list(theta_star)):
        B0 = ExactMatrix.diagonal(diag)
        units = []
        for k in range(1, n):
            rows = [[Fraction(0)] * n for _ in range(n)]
            rows[k - 1][k] = Fraction(1)
            units.append(ExactMatrix(rows))
        const = _dg_defect(A, B0, q0)
        cols = [_dg_defect(A, U, q0) - _dg_defect(A, ExactMatrix.zeros(n), q0) for U in units]
        eq_rows = []
        rhs = []
        for r in range(n):
            for c in range(n):
                eq_rows.append([col[r, c] for col in cols])
                rhs.append(-const[r, c])
        phi = solve_linear(eq_rows, rhs)
        if phi is None or any(not x for x in phi):
            continue
        B = B0
        for x, U in zip(phi, units):
            B = B + x * U
        tp = TDPair(d, a, b, q0, A, B, theta, theta_star)
        if not validate_td_pair(tp):
            return tp
    return None
