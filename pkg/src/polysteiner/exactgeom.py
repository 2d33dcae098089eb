"""Exact rational scalars, vectors and a rational linear-program solver.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Vectors are plain tuples of fractions, which keeps them
hashable and immutable.

:func:`lp_solve` minimizes over *free* variables.  Internally it runs a
two-phase Bland-rule simplex on the dual problem
``min b.y  s.t.  A^T y = -c, y >= 0`` (few rows, many columns for the
geometric LPs in this package) and recovers the primal optimum from the
optimal dual basis, which makes it a vertex of the primal feasible set.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import _kernel

Rat = Fraction
Vec = tuple  # tuple[Fraction, ...]
RatLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


class InputError(ValueError):
    """Malformed input: dimension mismatch, zero vector where forbidden, ..."""


def rat(x: RatLike) -> Fraction:
    """Coerce an int, Fraction or decimal/``p/q`` string to a Fraction.

    Floats are rejected on purpose: they would smuggle rounding into
    exact computations.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"refusing inexact scalar {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r}")


def format_rat(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec(coords: Iterable[RatLike]) -> Vec:
    v = tuple(rat(c) for c in coords)
    if not v:
        raise InputError("vectors need at least one coordinate")
    return v


def parse_vec(text: str) -> Vec:
    """Parse ``"1,-1/2,3"``."""
    return vec(t for t in text.split(",") if t.strip())


def format_vec(v: Sequence[Fraction]) -> list:
    return [format_rat(c) for c in v]


def dot(x, y) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), ZERO)


def add(x, y) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def scale(t, x) -> Vec:
    return tuple(t * a for a in x)


def neg(x) -> Vec:
    return tuple(-a for a in x)


def zero_vec(dim: int) -> Vec:
    return (ZERO,) * dim


def is_zero(x) -> bool:
    return all(a == 0 for a in x)


def check_dim(x, dim: int, what: str = "vector") -> None:
    if len(x) != dim:
        raise InputError(f"{what} has dimension {len(x)}, expected {dim}")


def primitive(v: Sequence[Fraction]) -> tuple:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for a in v:
        den = math.lcm(den, Fraction(a).denominator)
    ints = [int(Fraction(a) * den) for a in v]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def rref(rows: Sequence[Sequence[Fraction]]):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    M = [list(map(Fraction, r)) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        k = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def solve_linear(rows, rhs, n: int):
    """One exact solution of ``rows x = rhs`` (free variables set to 0), or None."""
    if not rows:
        return zero_vec(n)
    M, pivots = rref([list(r) + [b] for r, b in zip(rows, rhs)])
    if n in pivots:
        return None
    x = [ZERO] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return tuple(x)


# ---------------------------------------------------------------- LP types

class Relation(str, enum.Enum):
    LE = "<="
    EQ = "=="
    GE = ">="


@dataclass(frozen=True)
class Constraint:
    normal: Vec
    relation: Relation
    rhs: Fraction

    def satisfied_by(self, x) -> bool:
        lhs = dot(self.normal, x)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


def constraint(normal, relation: str, rhs) -> Constraint:
    return Constraint(tuple(map(rat, normal)), Relation(relation), rat(rhs))


@dataclass(frozen=True)
class LpProblem:
    """Minimize ``objective . x`` over free variables ``x``."""

    objective: Vec
    constraints: tuple
    n_vars: int

    def __post_init__(self):
        if self.n_vars < 1:
            raise InputError("an LP needs at least one variable")
        if len(self.objective) != self.n_vars:
            raise InputError("objective length does not match the variable count")
        for c in self.constraints:
            if len(c.normal) != self.n_vars:
                raise InputError("constraint normal length does not match the variable count")


class LpStatus(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    point: Vec | None = None
    value: Fraction | None = None

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def _scale_to_ints(values):
    """Integers proportional to ``values`` and the positive factor used."""
    den = 1
    for a in values:
        den = math.lcm(den, a.denominator)
    return [a.numerator * (den // a.denominator) for a in values], den


def _solve_dual(A, b, c):
    """Simplex on ``min b.y, A^T y = -c, y >= 0``.

    Returns ``("optimal", x)`` where ``x`` holds the simplex multipliers of
    the equality rows, i.e. the primal optimum; otherwise
    ``("infeasible", None)`` or ``("unbounded", None)``.
    """
    m = len(A)
    n = len(c)
    width = m + n + 1
    T = []
    row_scale = []
    for i in range(n):
        coeffs = [A[j][i] for j in range(m)]
        r = -c[i]
        sign = 1
        if r < 0:
            coeffs = [-a for a in coeffs]
            r = -r
            sign = -1
        coeffs.append(r)
        ints, factor = _scale_to_ints(coeffs)
        art = [0] * n
        art[i] = 1
        T.append(ints[:-1] + art + ints[-1:])
        row_scale.append(sign * factor)
    costs, cost_scale = _scale_to_ints(b)
    T.append(costs + [0] * n + [0])
    phase1 = [0] * width
    for i in range(n):
        row = T[i]
        for j in range(m):
            phase1[j] -= row[j]
        phase1[-1] -= row[-1]
    T.append(phase1)
    basis = list(range(m, m + n))
    det = 1

    status, det, _ = _kernel.simplex_iterate(T, basis, det, n + 1, n, m + n)
    if T[n + 1][-1] != 0:
        return "infeasible", None
    for r in range(n):
        if basis[r] >= m:
            s = next((j for j in range(m) if T[r][j] != 0), None)
            if s is not None:
                det = _kernel.pivot(T, basis, det, r, s)
    status, det, _ = _kernel.simplex_iterate(T, basis, det, n, n, m)
    if status == _kernel.UNBOUNDED:
        return "unbounded", None
    # reduced cost of artificial i is -y_i (scaled); undo row and cost scaling
    obj = T[n]
    x = tuple(Fraction(-row_scale[i] * obj[m + i], det * cost_scale) for i in range(n))
    return "optimal", x


def lp_solve(p: LpProblem) -> LpSolution:
    """Exact optimum of an LP over the rationals.

    Deterministic: Bland's rule fixes the pivot sequence, so equal inputs
    give equal points.
    """
    A, b = [], []
    for con in p.constraints:
        if con.relation is Relation.LE:
            A.append(con.normal)
            b.append(con.rhs)
        elif con.relation is Relation.GE:
            A.append(neg(con.normal))
            b.append(-con.rhs)
        else:
            A.append(con.normal)
            b.append(con.rhs)
            A.append(neg(con.normal))
            b.append(-con.rhs)
    c = [Fraction(a) for a in p.objective]
    status, x = _solve_dual(A, b, c)
    if status == "unbounded":
        return LpSolution(LpStatus.INFEASIBLE)
    if status == "infeasible":
        probe, _ = _solve_dual(A, b, [ZERO] * p.n_vars)
        if probe == "unbounded":
            return LpSolution(LpStatus.INFEASIBLE)
        return LpSolution(LpStatus.UNBOUNDED)
    return LpSolution(LpStatus.OPTIMAL, x, dot(c, x))
