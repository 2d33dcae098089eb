import itertools
import random
from fractions import Fraction

import pytest

from polysteiner.angles import absorbing_oracle, is_absorbing
from polysteiner.antipodality import (
    disjoint_face_distances_primal,
    disjoint_face_pairs,
    is_antipodal,
    is_cl_space,
    is_steiner_antipodal,
)
from polysteiner.exactgeom import InputError, neg
from polysteiner.hanner import build_hanner, rhombic_dodecahedron
from polysteiner.norm import PolytopalNorm
from randgeom import HEXAGON, L1_2, LINF_2, random_convex_point, random_norm, random_unit

L1 = PolytopalNorm.from_vertices(L1_2)
LINF = PolytopalNorm.from_vertices(LINF_2)
HEX = PolytopalNorm.from_vertices(HEXAGON)
q = Fraction(3, 4)
OCT = PolytopalNorm.from_vertices([(1, 0), (-1, 0), (0, 1), (0, -1), (q, q), (-q, -q), (q, -q), (-q, q)])


def test_antipodal_examples():
    assert is_antipodal(LINF, (1, 1), (1, -1))
    assert not is_antipodal(LINF, (1, 0), (0, 1))
    assert is_antipodal(HEX, (2, 3), (-2, -3))
    with pytest.raises(InputError):
        is_antipodal(LINF, (0, 0), (1, 0))


def test_l1_and_linf_are_steiner_antipodal():
    assert is_steiner_antipodal(L1).steiner_antipodal
    assert is_steiner_antipodal(LINF).steiner_antipodal


@pytest.mark.parametrize("N", [HEX, OCT], ids=["hexagon", "octagon"])
def test_witness_is_absorbing_but_not_antipodal(N):
    rep = is_steiner_antipodal(N)
    assert not rep.steiner_antipodal
    assert rep.distance <= 1
    assert is_absorbing(N, rep.leg_a, rep.leg_b)
    assert absorbing_oracle(N, rep.leg_a, rep.leg_b)
    assert not is_antipodal(N, rep.leg_a, rep.leg_b)


def test_hexagon_adjacent_vertices_form_absorbing_non_antipodal_angle():
    # the degree-6 star needs every adjacent pair absorbing, yet ||a - b|| = 1
    assert absorbing_oracle(HEX, (1, 0), (1, 1))
    assert is_absorbing(HEX, (1, 0), (1, 1))
    assert not is_antipodal(HEX, (1, 0), (1, 1))
    assert is_steiner_antipodal(HEX).distance == 1


def test_disjoint_pairs_are_disjoint_and_ordered():
    pairs = list(disjoint_face_pairs(HEX))
    assert pairs
    assert all(not set(F.indices) & set(G.indices) for F, G in pairs)
    faces = HEX.dual_ball.faces
    keys = [(faces.index(F), faces.index(G)) for F, G in pairs]
    assert keys == sorted(keys)


def test_parallel_scan_matches_serial():
    N = build_hanner("((R +1 R) +inf R)")
    serial = is_steiner_antipodal(N, jobs=1)
    parallel = is_steiner_antipodal(N, jobs=2)
    assert serial.steiner_antipodal == parallel.steiner_antipodal
    assert serial.pairs_checked == parallel.pairs_checked
    rep_s, rep_p = is_steiner_antipodal(OCT, jobs=1), is_steiner_antipodal(OCT, jobs=2)
    assert (rep_s.face_a, rep_s.face_b) == (rep_p.face_a, rep_p.face_b)


def test_cl_examples():
    assert is_cl_space(L1).cl_space and is_cl_space(LINF).cl_space
    assert is_cl_space(build_hanner("(((R +1 R) +inf R) +1 R)")).cl_space
    rep = is_cl_space(rhombic_dodecahedron(3))
    assert not rep.cl_space and rep.vertex is not None


def test_hexagon_is_not_cl():
    rep = is_cl_space(HEX)
    assert not rep.cl_space
    # the reported vertex is neither on the facet nor on its opposite
    B = HEX.ball
    u, v = rep.facet, rep.vertex
    assert v in B.vertices
    assert abs(sum(a * b for a, b in zip(u, v))) < 1


@pytest.mark.parametrize("seed", range(40))
def test_antipodal_pairs_are_absorbing(seed):
    rng = random.Random(seed)
    N = random_norm(rng, 2 if seed < 30 else 3)
    u = rng.choice(N.ball.facets)
    face = [v for v in N.ball.vertices if sum(x * y for x, y in zip(u, v)) == 1]
    a = random_convex_point(rng, face)
    b = neg(random_convex_point(rng, face))
    assert is_antipodal(N, a, b)
    assert is_absorbing(N, a, b)


@pytest.mark.parametrize("expr", ["(R +1 R)", "(R +inf R)", "((R +1 R) +inf R)", "((R +inf R) +1 R)"])
def test_steiner_antipodal_norms_have_only_antipodal_absorbing_pairs(expr):
    N = build_hanner(expr)
    assert is_steiner_antipodal(N).steiner_antipodal
    rng = random.Random(expr)
    pts = list(N.ball.vertices) + [random_unit(rng, N) for _ in range(12)]
    for a, b in itertools.combinations(pts, 2):
        if is_absorbing(N, a, b):
            assert is_antipodal(N, a, b)


def test_cl_implies_steiner_antipodal_on_random_balls():
    rng = random.Random(5)
    for _ in range(15):
        N = random_norm(rng, 2)
        if is_cl_space(N):
            assert is_steiner_antipodal(N)


def test_disjoint_faces_of_hanner_balls_are_two_apart():
    for expr in ["((R +1 R) +inf R)", "(R +inf (R +1 (R +inf R)))", "((R +1 R) +1 (R +1 R))"]:
        assert set(disjoint_face_distances_primal(build_hanner(expr))) == {2}
