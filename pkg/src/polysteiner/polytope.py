"""Centrally symmetric polytopes with the origin in the interior.

A :class:`Polytope` carries both representations at once: its vertices
and its facet normals ``u`` (each facet is ``<u, x> <= 1``).  Because the
origin is interior every facet can be scaled to right-hand side 1, which
also means the facet normals of ``P`` are exactly the vertices of the
polar body.  The face lattice is computed eagerly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .exactgeom import (
    ONE,
    InputError,
    LpProblem,
    constraint,
    dot,
    lp_solve,
    neg,
    primitive,
    rank,
    solve_linear,
    sub,
    vec,
)

MAX_DIM = 6


class NotSymmetric(InputError):
    pass


class DegenerateBall(InputError):
    pass


class DimensionLimit(InputError):
    pass


# --------------------------------------------------------- double description

def _dd_extreme_rays(constraints: list[tuple], dim: int) -> list[tuple]:
    """Extreme rays of the pointed cone ``{r : <a, r> >= 0 for a in constraints}``.

    Incremental double description over the integers.  Requires the
    constraint vectors to span ``R^dim``.
    """
    # initial simplicial cone on `dim` independent constraints
    chosen: list[int] = []
    for i, a in enumerate(constraints):
        if rank([constraints[j] for j in chosen] + [a]) > len(chosen):
            chosen.append(i)
            if len(chosen) == dim:
                break
    if len(chosen) < dim:
        raise DegenerateBall("constraint system does not span the space")
    A0 = [constraints[j] for j in chosen]
    rays = []
    for k in range(dim):
        # column k of A0^{-1}
        e = [0] * dim
        e[k] = 1
        r = solve_linear(A0, e, dim)
        rays.append(primitive(r))
    tight = [frozenset(chosen[j] for j in range(dim) if j != k) for k in range(dim)]

    for i, a in enumerate(constraints):
        if i in chosen:
            continue
        vals = [dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg_ = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays, new_tight = [], []
        for kp in pos:
            for kn in neg_:
                common = tight[kp] & tight[kn]
                if len(common) < dim - 2:
                    continue
                if any(
                    k != kp and k != kn and common <= tight[k]
                    for k in range(len(rays))
                ):
                    continue
                vp, vn = vals[kp], vals[kn]
                r = tuple(vp * y - vn * x for x, y in zip(rays[kp], rays[kn]))
                new_rays.append(primitive(r))
                new_tight.append(common | {i})
        keep = pos + zer
        rays = [rays[k] for k in keep] + new_rays
        tight = [tight[k] | ({i} if vals[k] == 0 else frozenset()) for k in keep] + new_tight
    return rays


def _hull_facets(points: Sequence[tuple], dim: int) -> list[tuple]:
    """Facet normals (rhs 1) of conv(points), origin assumed interior."""
    cons = []
    for p in points:
        ints = primitive(tuple(-c for c in p) + (ONE,))
        cons.append(ints)
    rays = _dd_extreme_rays(cons, dim + 1)
    facets = []
    for r in rays:
        s = r[-1]
        if s <= 0:
            raise DegenerateBall("origin is not interior to the hull")
        facets.append(tuple(Fraction(c, s) for c in r[:-1]))
    return facets


# ------------------------------------------------------------------- classes

class Face:
    """A nonempty proper face, identified by its sorted vertex indices."""

    __slots__ = ("polytope", "indices", "functional", "dim")

    def __init__(self, polytope: "Polytope", indices, functional, dim: int):
        self.polytope = polytope
        self.indices = tuple(sorted(indices))
        self.functional = tuple(functional)
        self.dim = dim

    @property
    def vertices(self) -> list[tuple]:
        return [self.polytope.vertices[i] for i in self.indices]

    def __eq__(self, other):
        return (
            isinstance(other, Face)
            and other.polytope is self.polytope
            and other.indices == self.indices
        )

    def __hash__(self):
        return hash((id(self.polytope), self.indices))

    def __repr__(self):
        return f"Face(dim={self.dim}, indices={self.indices})"

    def negated(self) -> "Face":
        """The opposite face ``-F``."""
        P = self.polytope
        return P.face_by_indices(P.opposite[i] for i in self.indices)


class Polytope:
    """Symmetric polytope in V- and H-representation.

    Use :meth:`from_vertices`; the plain constructor trusts its input.
    """

    def __init__(self, vertices: Sequence[tuple], facets: Sequence[tuple]):
        self.vertices = tuple(sorted(tuple(v) for v in vertices))
        self.facets = tuple(sorted(tuple(u) for u in facets))
        self.dim = len(self.vertices[0])
        index = {v: i for i, v in enumerate(self.vertices)}
        self.opposite = tuple(index[neg(v)] for v in self.vertices)
        self.facet_vertices = tuple(
            frozenset(i for i, v in enumerate(self.vertices) if dot(u, v) == 1)
            for u in self.facets
        )
        self.faces = self._face_lattice()
        self._face_index = {f.indices: f for f in self.faces}

    # construction --------------------------------------------------------
    @classmethod
    def from_vertices(cls, points: Iterable) -> "Polytope":
        """Hull of a centrally symmetric, full-dimensional point set."""
        pts = list(dict.fromkeys(vec(p) for p in points))
        if not pts:
            raise DegenerateBall("no points")
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise InputError("points of mixed dimension")
        if dim > MAX_DIM:
            raise DimensionLimit(f"dimension {dim} exceeds the cap {MAX_DIM}")
        pset = set(pts)
        if any(neg(p) not in pset for p in pts):
            raise NotSymmetric("point set is not symmetric under negation")
        if rank(pts) < dim:
            raise DegenerateBall("points are not full-dimensional")
        facets = _hull_facets(pts, dim)
        verts = []
        for p in pts:
            tight = [u for u in facets if dot(u, p) == 1]
            if tight and rank(tight) == dim:
                verts.append(p)
        return cls(verts, facets)

    def polar(self) -> "Polytope":
        """Polar body: vertices and facet normals trade places."""
        return Polytope(self.facets, self.vertices)

    # faces ---------------------------------------------------------------
    def _face_lattice(self) -> list[Face]:
        found = {}
        frontier = list(dict.fromkeys(self.facet_vertices))
        for s in frontier:
            found[s] = None
        while frontier:
            nxt = []
            for s in frontier:
                for f in self.facet_vertices:
                    t = s & f
                    if t and t not in found:
                        found[t] = None
                        nxt.append(t)
            frontier = nxt
        faces = []
        for s in found:
            containing = [u for u, fv in zip(self.facets, self.facet_vertices) if s <= fv]
            k = len(containing)
            functional = tuple(sum(c) / k for c in zip(*containing))
            pts = [self.vertices[i] for i in sorted(s)]
            d = rank([sub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0
            faces.append(Face(self, s, functional, d))
        faces.sort(key=lambda f: (f.dim, f.indices))
        return faces

    def face_by_indices(self, indices) -> Face:
        key = tuple(sorted(indices))
        try:
            return self._face_index[key]
        except KeyError:
            raise InputError(f"{key} is not a face") from None

    def face_counts(self) -> list[int]:
        counts = [0] * self.dim
        for f in self.faces:
            counts[f.dim] += 1
        return counts

    def contains(self, x) -> bool:
        return all(dot(u, x) <= 1 for u in self.facets)

    def same_set(self, other: "Polytope") -> bool:
        return set(self.vertices) == set(other.vertices)

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"


def from_vertices(points) -> Polytope:
    return Polytope.from_vertices(points)


def polar_dual(P: Polytope) -> Polytope:
    return P.polar()


def face_lattice(P: Polytope) -> list[Face]:
    return list(P.faces)


def exposed_face(P: Polytope, a) -> Face:
    """Face on which ``x -> <a, x>`` is maximal, with ``a`` rescaled to max 1."""
    a = vec(a)
    if len(a) != P.dim:
        raise InputError("functional dimension mismatch")
    if all(c == 0 for c in a):
        raise InputError("the zero functional exposes no proper face")
    vals = [dot(a, v) for v in P.vertices]
    top = max(vals)
    idx = [i for i, v in enumerate(vals) if v == top]
    face = P.face_by_indices(idx)
    return Face(P, face.indices, tuple(c / top for c in a), face.dim)


def faces_disjoint(F: Face, G: Face) -> bool:
    if F.polytope is not G.polytope:
        raise InputError("faces belong to different polytopes")
    return not set(F.indices) & set(G.indices)


def face_distance_witness(norm, F: Face, G: Face):
    """``(distance, p, q)`` with ``p`` in F, ``q`` in G realizing the dual-norm distance."""
    dual = norm.dual_ball
    if F.polytope is not dual or G.polytope is not dual:
        raise InputError("faces must belong to the dual ball of this norm")
    d = dual.dim
    n = 2 * d + 1
    zeros = (0,) * d
    cons = []
    for v in norm.ball.vertices:
        cons.append(constraint(tuple(v) + tuple(-c for c in v) + (-1,), "<=", 0))
        cons.append(constraint(tuple(v) + zeros + (0,), "<=", 1))
        cons.append(constraint(zeros + tuple(v) + (0,), "<=", 1))
    cons.append(constraint(F.functional + zeros + (0,), "==", 1))
    cons.append(constraint(zeros + G.functional + (0,), "==", 1))
    sol = lp_solve(LpProblem((0,) * (n - 1) + (ONE,), tuple(cons), n))
    x = sol.point
    return sol.value, x[:d], x[d:2 * d]


def face_distance(norm, F: Face, G: Face) -> Fraction:
    """Exact dual-norm distance between two faces of the dual ball."""
    return face_distance_witness(norm, F, G)[0]

