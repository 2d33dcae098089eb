import itertools
import math
import random
from fractions import Fraction

import pytest

from polysteiner.angles import is_absorbing
from polysteiner.exactgeom import InputError, sub, vec, zero_vec
from polysteiner.hanner import build_hanner, rhombic_dodecahedron
from polysteiner.norm import PolytopalNorm, norm_eval
from polysteiner.steiner import (
    Instance,
    Level,
    SizeLimit,
    SteinerTopology,
    enumerate_topologies,
    exact_smt,
    improve_tree,
    mst_edges,
    optimize_topology,
    star_is_smt,
    star_length,
    tree_length,
    verify_plane_theorem,
    verify_theorem_chain,
)
from randgeom import HEXAGON, L1_2, LINF_2, random_norm, random_vector

L1 = PolytopalNorm.from_vertices(L1_2)
LINF = PolytopalNorm.from_vertices(LINF_2)
HEX = PolytopalNorm.from_vertices(HEXAGON)
O = zero_vec(2)


def test_tree_length_examples():
    star = [O, (1, 0), (-1, 0), (0, 1), (0, -1)]
    assert tree_length(L1, star, [(0, i) for i in range(1, 5)]) == 4
    assert tree_length(LINF, [(0, 0), (3, -4)], [(0, 1)]) == 4
    assert tree_length(L1, [(0, 0), (1, 1), (2, 0)], [(0, 1), (1, 2)]) == 4


# -------------------------------------------------------------- topologies

def double_factorial(k):
    return math.prod(range(k, 0, -2)) if k > 0 else 1


def splits(n, edges):
    """Terminal bipartitions induced by internal edges; identifies a full topology."""
    adj = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    out = set()
    for u, v in edges:
        if u < n or v < n:
            continue
        seen, stack = {u}, [u]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen and not (x == u and y == v):
                    seen.add(y)
                    stack.append(y)
        side = frozenset(t for t in seen if t < n)
        out.add(side if 0 not in side else frozenset(range(n)) - side)
    return frozenset(out)


def prufer_topologies(n):
    """Full topologies from Prufer codes where each Steiner label appears twice."""
    m = n - 2
    labels = list(range(n, n + m))
    out = set()
    for code in set(itertools.permutations(labels * 2)):
        degree = [1] * (n + m)
        for c in code:
            degree[c] += 1
        edges, seq = [], list(code)
        for c in seq:
            leaf = min(i for i in range(n + m) if degree[i] == 1)
            edges.append((leaf, c))
            degree[leaf] -= 1
            degree[c] -= 1
        u, v = [i for i in range(n + m) if degree[i] == 1]
        edges.append((u, v))
        out.add(splits(n, edges))
    return out


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_topology_counts(n):
    tops = enumerate_topologies(n)
    assert len(tops) == double_factorial(2 * n - 5)
    if n >= 3:
        assert len(tops) == math.factorial(2 * n - 4) // (2 ** (n - 2) * math.factorial(n - 2))
    for t in tops:
        assert t.m == max(n - 2, 0)
        assert all(d == 3 for d in t.degrees()[n:])
        assert all(d == 1 for d in t.degrees()[:n]) or n == 2


@pytest.mark.parametrize("n", [4, 5, 6])
def test_topologies_agree_with_prufer_generation(n):
    ours = {splits(n, t.edges) for t in enumerate_topologies(n)}
    assert len(ours) == len(enumerate_topologies(n))
    assert ours == prufer_topologies(n)


def test_topology_validation():
    with pytest.raises(InputError):
        SteinerTopology(3, 1, ((0, 3), (1, 3)))
    with pytest.raises(InputError):
        SteinerTopology(4, 1, ((0, 4), (1, 4), (2, 4), (2, 3), (3, 2)))
    with pytest.raises(InputError):
        SteinerTopology(2, 1, ((0, 2), (1, 2)))


# ---------------------------------------------------------- per-topology LP

def test_cross_topology_collapses_to_origin():
    terms = [vec(p) for p in [(1, 0), (0, 1), (-1, 0), (0, -1)]]
    t = SteinerTopology(4, 2, ((0, 4), (2, 4), (4, 5), (1, 5), (3, 5)))
    res = optimize_topology(L1, terms, t)
    assert res.length == 4 and res.level is Level.EXACT_FOR_TOPOLOGY
    assert res.recompute_length(L1) == 4


def test_collinear_terminals():
    for N in (L1, LINF, HEX):
        res = exact_smt(Instance.of(N, [(0, 0), (1, 0), (2, 0)]))
        assert res.length == 2 * norm_eval(N, (1, 0))


def test_square_three_terminals():
    res = optimize_topology(LINF, [vec(p) for p in [(0, 0), (1, 0), (0, 1)]], enumerate_topologies(3)[0])
    assert res.length == Fraction(3, 2)


def arrangement_minimum(N, terms):
    """Minimum of x -> sum ||x - t|| over vertices of its linearity arrangement."""
    dirs = list(N.ball.vertices)
    cands = set(terms)
    for (t1, v1), (t2, v2) in itertools.combinations([(t, v) for t in terms for v in dirs], 2):
        det = v1[0] * (-v2[1]) - v1[1] * (-v2[0])
        if det == 0:
            continue
        rx, ry = t2[0] - t1[0], t2[1] - t1[1]
        s = (rx * (-v2[1]) - ry * (-v2[0])) / det
        cands.add((t1[0] + s * v1[0], t1[1] + s * v1[1]))
    return min(sum(norm_eval(N, sub(x, t)) for t in terms) for x in cands)


@pytest.mark.parametrize("seed", range(25))
def test_three_terminals_match_arrangement_oracle(seed):
    rng = random.Random(seed)
    N = random_norm(rng, 2)
    terms = list(dict.fromkeys(random_vector(rng, 2, False) for _ in range(3)))
    if len(terms) < 3:
        return
    assert exact_smt(Instance.of(N, terms)).length == arrangement_minimum(N, terms)


# ------------------------------------------------------------------ exact

def test_exact_examples():
    res = exact_smt(Instance.of(LINF, LINF_2))
    assert res.length == 4 and res.level is Level.EXACT_GLOBAL and res.topologies_checked == 3
    two = exact_smt(Instance.of(HEX, [(0, 0), (2, 3)]))
    assert two.length == norm_eval(HEX, (2, 3)) and len(two.edges) == 1
    assert exact_smt(Instance.of(LINF, [O, (1, 0), (0, 1)])).length == Fraction(3, 2)
    assert exact_smt(Instance.of(LINF, [(5, 5)])).length == 0


def test_instance_validation():
    with pytest.raises(InputError):
        Instance.of(LINF, [(0, 0), (0, 0)])
    with pytest.raises(InputError):
        Instance.of(LINF, [(0, 0, 0)])
    with pytest.raises(SizeLimit):
        exact_smt(Instance.of(LINF, [(i, 0) for i in range(8)]))


def test_parallel_exact_matches_serial():
    inst = Instance.of(HEX, [(0, 0), (3, 1), (1, 4), (-2, 2), (-1, -3)])
    a, b = exact_smt(inst, jobs=1), exact_smt(inst, jobs=2)
    assert a.length == b.length and a.topology == b.topology


@pytest.mark.parametrize("seed", range(15))
def test_exact_bounded_by_star_and_mst(seed):
    rng = random.Random(seed)
    N = random_norm(rng, 2 if seed < 10 else 3)
    k = rng.randint(2, 4)
    leaves = list(dict.fromkeys(random_vector(rng, N.dim) for _ in range(k)))
    o = zero_vec(N.dim)
    with_o = exact_smt(Instance.of(N, [o] + leaves))
    without = exact_smt(Instance.of(N, leaves))
    mst = tree_length(N, leaves, mst_edges(N, leaves))
    assert without.length <= with_o.length <= star_length(N, o, leaves)
    assert without.length <= mst
    for r in (with_o, without):
        assert r.recompute_length(N) == r.length
        assert len(r.steiner_positions) <= max(len(r.terminals) - 2, 0)


@pytest.mark.parametrize("points, N", [
    (LINF_2, LINF),
    (L1_2, L1),
    ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, 0, -1)], build_hanner("(R +1 (R +1 R))")),
])
def test_pairwise_antipodal_units_give_length_k(points, N):
    pts = [vec(p) for p in points]
    assert all(norm_eval(N, sub(p, q)) == 2 for p, q in itertools.combinations(pts, 2))
    assert exact_smt(Instance.of(N, pts)).length == len(pts)


@pytest.mark.parametrize("seed", range(6))
def test_linear_maps_preserve_lengths(seed):
    rng = random.Random(seed)
    N = random_norm(rng, 2)
    while True:
        T = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if T[0][0] * T[1][1] - T[0][1] * T[1][0] != 0:
            break

    def apply(p):
        return vec(sum(T[r][c] * p[c] for c in range(2)) for r in range(2))

    terms = list(dict.fromkeys(random_vector(rng, 2) for _ in range(4)))
    M = PolytopalNorm.from_vertices([apply(v) for v in N.ball.vertices])
    a = exact_smt(Instance.of(N, terms)).length
    b = exact_smt(Instance.of(M, [apply(p) for p in terms])).length
    assert a == b
    o = zero_vec(2)
    assert star_is_smt(N, o, terms, True).is_smt == star_is_smt(M, o, [apply(p) for p in terms], True).is_smt


# -------------------------------------------------------------------- stars

def test_star_verdicts():
    assert not star_is_smt(LINF, O, [(1, 0), (0, 1)], include_center=True)
    v = star_is_smt(LINF, O, [(1, 1), (1, -1)], include_center=True)
    assert v.is_smt and v.star_length == 2


@pytest.mark.slow
def test_hexagon_star_with_origin_is_minimal():
    v = star_is_smt(HEX, O, HEXAGON, include_center=True)
    assert v.is_smt and v.star_length == 6 and v.smt.topologies_checked == 945


def test_hexagon_vertices_alone_are_spanned_more_cheaply():
    # consecutive vertices are one apart, so a path of five edges beats the star
    v = star_is_smt(HEX, O, HEXAGON, include_center=False)
    assert not v.is_smt and v.smt.length == 5 and v.smt.topologies_checked == 105


@pytest.mark.parametrize("seed", range(15))
def test_minimal_star_forces_absorbing_angles(seed):
    rng = random.Random(300 + seed)
    N = random_norm(rng, 2)
    pts = list(dict.fromkeys(random_vector(rng, 2) for _ in range(rng.randint(2, 4))))
    if star_is_smt(N, O, pts, include_center=True):
        assert all(is_absorbing(N, p, q) for p, q in itertools.combinations(pts, 2))


# ---------------------------------------------------------------- heuristic

def test_improve_tree_keeps_optimal_small_trees():
    rng = random.Random(4)
    for _ in range(6):
        N = random_norm(rng, 2)
        terms = list(dict.fromkeys(random_vector(rng, 2) for _ in range(4)))
        inst = Instance.of(N, terms)
        best = exact_smt(inst)
        res = improve_tree(inst, best.positions, best.edges, seed=1)
        assert res.length == best.length
        assert res.recompute_length(N) == res.length


def test_improve_tree_single_edge():
    inst = Instance.of(HEX, [(0, 0), (2, 1)])
    res = improve_tree(inst, inst.terminals, [(0, 1)])
    assert res.length == norm_eval(HEX, (2, 1)) and res.edges == ((0, 1),)


def test_improve_tree_from_mst_is_never_worse():
    rng = random.Random(8)
    for _ in range(5):
        N = random_norm(rng, 2)
        terms = list(dict.fromkeys(random_vector(rng, 2) for _ in range(6)))
        inst = Instance.of(N, terms)
        edges = mst_edges(N, terms)
        res = improve_tree(inst, terms, edges, seed=2, rounds=5)
        assert res.length <= tree_length(N, terms, edges)
        assert res.recompute_length(N) == res.length
        assert len(res.steiner_positions) <= len(terms) - 2


def test_improve_tree_rejects_foreign_seed():
    inst = Instance.of(HEX, [(0, 0), (2, 1)])
    with pytest.raises(InputError):
        improve_tree(inst, [(2, 1), (0, 0)], [(0, 1)])


def test_improve_tree_beats_rhombic_star():
    N = rhombic_dodecahedron(3)
    o = zero_vec(3)
    terms = [o] + list(N.ball.vertices)
    inst = Instance.of(N, terms)
    res = improve_tree(inst, terms, [(0, i) for i in range(1, 15)], seed=0)
    assert star_length(N, o, N.ball.vertices) == 14
    assert res.recompute_length(N) == res.length < 14


# ------------------------------------------------------------------ harnesses

def test_chain_on_square_vertices():
    rep = verify_theorem_chain(LINF, LINF_2)
    assert rep.conditions == (True, True, True, True) and rep.ok


def test_chain_single_vector():
    rep = verify_theorem_chain(LINF, [(1, 0)])
    assert rep.conditions == (True, True, True, True) and rep.ok


def test_chain_rejects_non_unit():
    with pytest.raises(InputError):
        verify_theorem_chain(LINF, [(2, 0)])


def test_chain_on_non_steiner_antipodal_witness():
    from polysteiner.antipodality import is_steiner_antipodal
    from polysteiner.norm import normalize

    rep = is_steiner_antipodal(HEX)
    pts = [normalize(HEX, rep.leg_a), normalize(HEX, rep.leg_b)]
    chain = verify_theorem_chain(HEX, pts, steiner_antipodal=False)
    assert chain.all_absorbing and not chain.all_antipodal
    assert chain.implications_hold and chain.ok


def test_plane_examples():
    rep = verify_plane_theorem(LINF, [(1, 0), (0, 1)])
    assert not rep.all_absorbing and not rep.star_is_smt and rep.agree
    with pytest.raises(InputError):
        verify_plane_theorem(rhombic_dodecahedron(3), [(1, 0, 0)])


@pytest.mark.slow
def test_plane_hexagon_vertices():
    rep = verify_plane_theorem(HEX, HEXAGON)
    assert rep.all_absorbing and rep.star_is_smt and rep.agree
