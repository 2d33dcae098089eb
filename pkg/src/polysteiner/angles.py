"""Absorbing angles at the origin.

An angle between nonzero ``a`` and ``b`` (apex at the origin) is absorbing
when ``x -> ||x|| + ||x - a|| + ||x - b||`` is minimized at the origin.
:func:`is_absorbing` decides it on the dual side: the faces of dual unit
vectors of ``a`` and of ``-b`` must be within dual distance 1.
:func:`absorbing_oracle` minimizes the three-term sum directly and shares
no code path with it beyond the LP solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .exactgeom import (
    ONE,
    InputError,
    LpProblem,
    Vec,
    add,
    constraint,
    dot,
    is_zero,
    lp_solve,
    neg,
    vec,
)
from .norm import PolytopalNorm, dual_norm_eval, dual_vectors, norm_eval
from .polytope import face_distance_witness


class AngleQuery(NamedTuple):
    a: Vec
    b: Vec

    @classmethod
    def of(cls, a, b) -> "AngleQuery":
        a, b = vec(a), vec(b)
        if len(a) != len(b):
            raise InputError("legs of different dimension")
        if is_zero(a) or is_zero(b):
            raise InputError("angle legs must be nonzero")
        return cls(a, b)


@dataclass(frozen=True)
class AbsorbingCertificate:
    a_star: Vec
    b_star: Vec

    def check(self, N: PolytopalNorm, a, b) -> bool:
        """Re-verify the witness exactly against the norm."""
        return (
            dual_norm_eval(N, self.a_star) == 1
            and dual_norm_eval(N, self.b_star) == 1
            and dot(self.a_star, a) == norm_eval(N, a)
            and dot(self.b_star, b) == norm_eval(N, b)
            and dual_norm_eval(N, add(self.a_star, self.b_star)) <= 1
        )


def _dual_faces(N, a, b):
    q = AngleQuery.of(a, b)
    return dual_vectors(N, q.a), dual_vectors(N, q.b).negated()


def angle_face_distance(N: PolytopalNorm, a, b):
    """``(distance, p, q)`` between the dual faces of ``a`` and ``-b``."""
    F, G = _dual_faces(N, a, b)
    return face_distance_witness(N, F, G)


def is_absorbing(N: PolytopalNorm, a, b) -> bool:
    return angle_face_distance(N, a, b)[0] <= 1


def absorbing_certificate(N: PolytopalNorm, a, b) -> Optional[AbsorbingCertificate]:
    dist, p, q = angle_face_distance(N, a, b)
    if dist > 1:
        return None
    return AbsorbingCertificate(tuple(p), neg(q))


def fermat_cost(N: PolytopalNorm, a, b):
    """``min_x ||x|| + ||x - a|| + ||x - b||`` and a minimizer."""
    q = AngleQuery.of(a, b)
    d = len(q.a)
    n = d + 3
    cons = []
    for u in N.ball.facets:
        for k, c in enumerate((None, q.a, q.b)):
            tail = [0, 0, 0]
            tail[k] = -1
            cons.append(constraint(tuple(u) + tuple(tail), "<=", 0 if c is None else dot(u, c)))
    sol = lp_solve(LpProblem((0,) * d + (ONE, ONE, ONE), tuple(cons), n))
    return sol.value, sol.point[:d]


def absorbing_oracle(N: PolytopalNorm, a, b) -> bool:
    q = AngleQuery.of(a, b)
    value, _ = fermat_cost(N, q.a, q.b)
    return value == norm_eval(N, q.a) + norm_eval(N, q.b)


def _det(p, q) -> Fraction:
    return p[0] * q[1] - p[1] * q[0]


def _in_cone(w, p, q) -> bool:
    D = _det(p, q)
    if D != 0:
        alpha = _det(w, q) / D
        beta = _det(p, w) / D
        return alpha >= 0 and beta >= 0
    if _det(p, w) != 0:
        return False
    if dot(p, q) < 0:
        return True  # opposite legs: the cone is the whole line
    return dot(p, w) >= 0


def angle_contains(outer: AngleQuery, inner: AngleQuery) -> bool:
    """Planar test: is the closed cone of ``inner`` inside that of ``outer``?"""
    for leg in (*outer, *inner):
        if len(leg) != 2:
            raise InputError("angle containment is only defined in the plane")
        if is_zero(leg):
            raise InputError("angle legs must be nonzero")
    p, q = outer
    return _in_cone(inner.a, p, q) and _in_cone(inner.b, p, q)
