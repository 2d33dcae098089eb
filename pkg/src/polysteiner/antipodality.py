"""Antipodal pairs, Steiner antipodality of a norm, and the CL-space test."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactgeom import InputError, is_zero, neg, sub, vec
from .norm import PolytopalNorm, norm_eval, normalize
from .polytope import Face, face_distance

JOBS_ENV = "POLYSTEINER_JOBS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def is_antipodal(N: PolytopalNorm, a, b) -> bool:
    """Whether the normalizations of ``a`` and ``b`` are at distance exactly 2."""
    a, b = vec(a), vec(b)
    if is_zero(a) or is_zero(b):
        raise InputError("zero vector")
    return norm_eval(N, sub(normalize(N, a), normalize(N, b))) == 2


@dataclass
class SteinerAntipodalReport:
    steiner_antipodal: bool
    face_a: Optional[Face] = None
    face_b: Optional[Face] = None
    distance: Optional[Fraction] = None
    # legs of an absorbing angle that is not antipodal
    leg_a: Optional[tuple] = None
    leg_b: Optional[tuple] = None
    pairs_checked: int = 0

    def __bool__(self):
        return self.steiner_antipodal


def disjoint_face_pairs(N: PolytopalNorm):
    """Unordered pairs of disjoint faces of the dual ball, in lexicographic order."""
    faces = N.dual_ball.faces
    for i, F in enumerate(faces):
        fs = set(F.indices)
        for G in faces[i + 1:]:
            if not fs.intersection(G.indices):
                yield F, G


_worker_norm = None


def _init_worker(ball_vertices):
    global _worker_norm
    _worker_norm = PolytopalNorm.from_vertices(ball_vertices)


def _pair_distance(key):
    fi, gi = key
    faces = _worker_norm.dual_ball.faces
    return face_distance(_worker_norm, faces[fi], faces[gi])


def is_steiner_antipodal(N: PolytopalNorm, jobs: Optional[int] = None) -> SteinerAntipodalReport:
    """Scan every pair of disjoint dual faces; Steiner antipodal iff all are > 1 apart.

    On failure the first offending pair (lexicographic) is reported together
    with an absorbing, non-antipodal angle read off its exposing functionals.
    """
    jobs = default_jobs() if jobs is None else jobs
    pairs = list(disjoint_face_pairs(N))
    if jobs > 1 and len(pairs) > 64:
        index = {F: i for i, F in enumerate(N.dual_ball.faces)}
        keys = [(index[F], index[G]) for F, G in pairs]
        with ProcessPoolExecutor(jobs, initializer=_init_worker,
                                 initargs=(N.ball.vertices,)) as ex:
            dists = list(ex.map(_pair_distance, keys, chunksize=32))
        hits = ((F, G, d) for (F, G), d in zip(pairs, dists))
    else:
        hits = ((F, G, face_distance(N, F, G)) for F, G in pairs)
    checked = 0
    for F, G, d in hits:
        checked += 1
        if d <= 1:
            # F = [a]* and G = [-b]*
            return SteinerAntipodalReport(
                False, F, G, d, F.functional, neg(G.functional), checked
            )
    return SteinerAntipodalReport(True, pairs_checked=checked)


@dataclass
class CLReport:
    cl_space: bool
    facet: Optional[tuple] = None
    vertex: Optional[tuple] = None

    def __bool__(self):
        return self.cl_space


def is_cl_space(N: PolytopalNorm) -> CLReport:
    """Every vertex of the ball must lie on each facet ``F`` or on ``-F``."""
    B = N.ball
    for u, fv in zip(B.facets, B.facet_vertices):
        covered = set(fv) | {B.opposite[i] for i in fv}
        for i, v in enumerate(B.vertices):
            if i not in covered:
                return CLReport(False, u, v)
    return CLReport(True)


def disjoint_face_distances_primal(N: PolytopalNorm):
    """Distances between disjoint faces of the ball itself, measured in the norm."""
    dual = N.dual()
    return [face_distance(dual, F, G) for F, G in disjoint_face_pairs(dual)]

