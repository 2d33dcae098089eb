"""l1- and l-infinity sums of polytopal norms, Hanner spaces and the
diagonal projections of cubes.

Hanner expressions use the grammar ``R | (E +1 E) | (E +inf E)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .exactgeom import InputError, solve_linear
from .norm import PolytopalNorm
from .polytope import MAX_DIM, DimensionLimit, Polytope

SUM1 = "+1"
SUMINF = "+inf"


def real_line() -> PolytopalNorm:
    """The one-dimensional space R with ball [-1, 1]."""
    return PolytopalNorm(Polytope([(Fraction(-1),), (Fraction(1),)],
                                  [(Fraction(-1),), (Fraction(1),)]))


def l1_sum(M: PolytopalNorm, N: PolytopalNorm) -> PolytopalNorm:
    """Ball conv(B_M x {o} u {o} x B_N); norm ``||x|| + ||y||``."""
    zm, zn = (Fraction(0),) * M.dim, (Fraction(0),) * N.dim
    pts = [tuple(v) + zn for v in M.ball.vertices] + [zm + tuple(w) for w in N.ball.vertices]
    return PolytopalNorm.from_vertices(pts)


def linf_sum(M: PolytopalNorm, N: PolytopalNorm) -> PolytopalNorm:
    """Ball B_M x B_N; norm ``max(||x||, ||y||)``."""
    pts = [tuple(v) + tuple(w) for v in M.ball.vertices for w in N.ball.vertices]
    return PolytopalNorm.from_vertices(pts)


@dataclass(frozen=True)
class Leaf:
    @property
    def dim(self) -> int:
        return 1

    def __str__(self):
        return "R"


@dataclass(frozen=True)
class Sum:
    op: str
    left: "HannerExpr"
    right: "HannerExpr"

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


HannerExpr = Union[Leaf, Sum]

_TOKEN = re.compile(r"\s*(\(|\)|R|\+inf|\+1)")


def parse_hanner(text: str) -> HannerExpr:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"bad Hanner expression near {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expr(i):
        if i >= len(tokens):
            raise InputError("unexpected end of Hanner expression")
        t = tokens[i]
        if t == "R":
            return Leaf(), i + 1
        if t != "(":
            raise InputError(f"unexpected token {t!r}")
        left, i = expr(i + 1)
        if i >= len(tokens) or tokens[i] not in (SUM1, SUMINF):
            raise InputError("expected +1 or +inf")
        op = tokens[i]
        right, i = expr(i + 1)
        if i >= len(tokens) or tokens[i] != ")":
            raise InputError("expected ')'")
        return Sum(op, left, right), i + 1

    e, i = expr(0)
    if i != len(tokens):
        raise InputError("trailing tokens in Hanner expression")
    return e


def build_hanner(e: Union[HannerExpr, str]) -> PolytopalNorm:
    if isinstance(e, str):
        e = parse_hanner(e)
    if e.dim > MAX_DIM:
        raise DimensionLimit(f"Hanner space of dimension {e.dim} exceeds the cap {MAX_DIM}")
    return _build(e)


def _build(e: HannerExpr) -> PolytopalNorm:
    if isinstance(e, Leaf):
        return real_line()
    left, right = _build(e.left), _build(e.right)
    return l1_sum(left, right) if e.op == SUM1 else linf_sum(left, right)


def hanner_expressions(dim: int) -> Iterator[HannerExpr]:
    """Every expression tree with ``dim`` leaves (all shapes, all labels)."""
    if dim == 1:
        yield Leaf()
        return
    for k in range(1, dim):
        for left in hanner_expressions(k):
            for right in hanner_expressions(dim - k):
                for op in (SUM1, SUMINF):
                    yield Sum(op, left, right)


def cube_diagonal_projection_points(d: int) -> list[tuple]:
    """Images of the non-diagonal vertices of ``[-1,1]^(d+1)`` projected along (1,...,1).

    Coordinates are taken in the basis ``e_i - e_(i+1)`` of the diagonal's
    orthogonal complement, i.e. ``c = G^-1 B^T x`` with Gram matrix ``G``.
    """
    n = d + 1
    gram = [[Fraction(2 if i == j else (-1 if abs(i - j) == 1 else 0)) for j in range(d)]
            for i in range(d)]
    pts = []
    for x in itertools.product((1, -1), repeat=n):
        if len(set(x)) == 1:
            continue
        bt_x = [Fraction(x[i] - x[i + 1]) for i in range(d)]
        pts.append(solve_linear(gram, bt_x, d))
    return pts


def rhombic_dodecahedron(d: int = 3) -> PolytopalNorm:
    """Norm whose ball is the projection of the (d+1)-cube along its diagonal."""
    if not 2 <= d <= 5:
        raise InputError("rhombic_dodecahedron needs 2 <= d <= 5")
    return PolytopalNorm.from_vertices(cube_diagonal_projection_points(d))
