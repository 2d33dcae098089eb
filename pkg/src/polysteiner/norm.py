"""Polytopal norms and their duals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .exactgeom import (
    InputError,
    LpProblem,
    check_dim,
    constraint,
    dot,
    is_zero,
    lp_solve,
    scale,
    vec,
)
from .polytope import Face, Polytope, exposed_face


class PolytopalNorm:
    """Norm whose unit ball is a symmetric polytope.

    ``||x|| = max <u, x>`` over the facet normals of the ball (the vertices
    of the dual ball) and ``||x||_* = max <v, x>`` over the ball's vertices.
    """

    def __init__(self, ball: Polytope):
        self.ball = ball
        self.dual_ball = ball.polar()

    @classmethod
    def from_vertices(cls, points: Iterable) -> "PolytopalNorm":
        return cls(Polytope.from_vertices(points))

    @property
    def dim(self) -> int:
        return self.ball.dim

    def dual(self) -> "PolytopalNorm":
        return PolytopalNorm(self.dual_ball)

    def __call__(self, x) -> Fraction:
        return norm_eval(self, x)

    def __repr__(self):
        return f"PolytopalNorm({self.ball!r})"


def _max_pairing(points, x) -> Fraction:
    return max(dot(p, x) for p in points)


def norm_eval(N: PolytopalNorm, x) -> Fraction:
    check_dim(x, N.dim)
    return _max_pairing(N.ball.facets, x)


def dual_norm_eval(N: PolytopalNorm, x) -> Fraction:
    check_dim(x, N.dim)
    return _max_pairing(N.ball.vertices, x)


def gauge_by_scaling(ball: Polytope, x) -> Fraction:
    """``min{t >= 0 : x in t*B}`` from the vertex description alone.

    Solves ``min sum(w)`` with ``sum(w_i v_i) = x, w >= 0`` as an LP; used
    to cross-check :func:`norm_eval`, which reads the facets.
    """
    x = vec(x)
    check_dim(x, ball.dim)
    verts = ball.vertices
    k = len(verts)
    cons = []
    for c in range(ball.dim):
        cons.append(constraint([v[c] for v in verts], "==", x[c]))
    for i in range(k):
        row = [0] * k
        row[i] = -1
        cons.append(constraint(row, "<=", 0))
    sol = lp_solve(LpProblem((Fraction(1),) * k, tuple(cons), k))
    return sol.value


def _nonzero(N: PolytopalNorm, x):
    x = vec(x)
    check_dim(x, N.dim)
    if is_zero(x):
        raise InputError("zero vector")
    return x


def normalize(N: PolytopalNorm, x):
    """``x / ||x||``, exactly."""
    x = _nonzero(N, x)
    return scale(1 / norm_eval(N, x), x)


def dual_vectors(N: PolytopalNorm, x) -> Face:
    """Face of the dual ball consisting of all dual unit vectors attaining ``||x||`` at x."""
    x = _nonzero(N, x)
    return exposed_face(N.dual_ball, x)


def is_regular_direction(N: PolytopalNorm, v) -> bool:
    return len(dual_vectors(N, v).indices) == 1

