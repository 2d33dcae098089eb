"""Steiner trees under polytopal norms.

Exact Steiner minimal trees come from enumerating full topologies (every
Steiner point of degree 3, ``n - 2`` of them) and solving one LP per
topology for the Steiner positions.  Degenerate trees, with Steiner points
sitting on terminals or on each other, appear as coincident LP optima, so
full topologies are enough.
"""

from __future__ import annotations

import enum
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .exactgeom import (
    Constraint,
    InputError,
    Relation,
    LpProblem,
    check_dim,
    dot,
    is_zero,
    lp_solve,
    sub,
    vec,
    zero_vec,
)
from .norm import PolytopalNorm, norm_eval
from .polytope import Polytope

MAX_EXACT_TERMINALS = 7


class SizeLimit(InputError):
    pass


class Level(str, enum.Enum):
    EXACT_GLOBAL = "ExactGlobal"
    EXACT_FOR_TOPOLOGY = "ExactForTopology"
    HEURISTIC = "Heuristic"


@dataclass(frozen=True)
class Instance:
    norm: PolytopalNorm
    terminals: tuple

    def __post_init__(self):
        if not self.terminals:
            raise InputError("an instance needs at least one terminal")
        for t in self.terminals:
            check_dim(t, self.norm.dim, "terminal")
        if len(set(self.terminals)) != len(self.terminals):
            raise InputError("terminals must be distinct")

    @classmethod
    def of(cls, norm: PolytopalNorm, terminals) -> "Instance":
        return cls(norm, tuple(vec(t) for t in terminals))


@dataclass(frozen=True)
class SteinerTopology:
    """Tree on ``n`` terminal slots ``0..n-1`` and Steiner slots ``n..n+m-1``."""

    n: int
    m: int
    edges: tuple

    def __post_init__(self):
        total = self.n + self.m
        if len(self.edges) != total - 1:
            raise InputError("a tree on k vertices has k - 1 edges")
        parent = list(range(total))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        deg = [0] * total
        for u, v in self.edges:
            if not (0 <= u < total and 0 <= v < total) or u == v:
                raise InputError(f"bad edge {(u, v)}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise InputError("topology has a cycle")
            parent[ru] = rv
            deg[u] += 1
            deg[v] += 1
        if any(deg[s] < 3 for s in range(self.n, total)):
            raise InputError("Steiner points need degree at least 3")

    def degrees(self) -> list[int]:
        deg = [0] * (self.n + self.m)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass
class SteinerTreeResult:
    topology: SteinerTopology
    terminals: tuple
    steiner_positions: tuple
    length: Fraction
    level: Level
    topologies_checked: int = 1

    @property
    def positions(self) -> tuple:
        return tuple(self.terminals) + tuple(self.steiner_positions)

    @property
    def edges(self) -> tuple:
        return self.topology.edges

    def recompute_length(self, N: PolytopalNorm) -> Fraction:
        return tree_length(N, self.positions, self.edges)


def tree_length(N: PolytopalNorm, positions: Sequence, edges: Sequence) -> Fraction:
    """Sum of edge lengths."""
    total = Fraction(0)
    for u, v in edges:
        if not (0 <= u < len(positions) and 0 <= v < len(positions)):
            raise InputError(f"edge {(u, v)} refers to a missing vertex")
        total += norm_eval(N, sub(positions[u], positions[v]))
    return total


# ------------------------------------------------------------ topologies

def _grow(n: int, k: int, edges: list, next_steiner: int, out: list):
    if k == n:
        out.append(SteinerTopology(n, n - 2, tuple(sorted(edges))))
        return
    for idx in range(len(edges)):
        u, v = edges[idx]
        s = next_steiner
        rest = edges[:idx] + edges[idx + 1:]
        _grow(n, k + 1, rest + [(min(u, s), max(u, s)), (min(v, s), max(v, s)), (k, s)],
              next_steiner + 1, out)


def enumerate_topologies(n: int) -> list[SteinerTopology]:
    """All full Steiner topologies on ``n`` terminals, ``(2n-5)!!`` of them."""
    if not 2 <= n <= MAX_EXACT_TERMINALS:
        raise SizeLimit(f"topology enumeration supports 2..{MAX_EXACT_TERMINALS} terminals")
    if n == 2:
        return [SteinerTopology(2, 0, ((0, 1),))]
    out: list[SteinerTopology] = []
    _grow(n, 3, [(0, n), (1, n), (2, n)], n + 1, out)
    return out


# ----------------------------------------------------------- optimization

def optimize_topology(N: PolytopalNorm, terminals: Sequence, t: SteinerTopology) -> SteinerTreeResult:
    """Optimal Steiner positions for one topology, by a single LP.

    Each edge touching a Steiner point gets an epigraph variable bounded
    below by every facet functional of the edge vector.
    """
    terminals = tuple(vec(p) for p in terminals)
    if len(terminals) != t.n:
        raise InputError("terminal count does not match the topology")
    d = N.dim
    m = t.m
    if m == 0:
        length = tree_length(N, terminals, t.edges)
        return SteinerTreeResult(t, terminals, (), length, Level.EXACT_FOR_TOPOLOGY)
    free_edges = [(u, v) for u, v in t.edges if u >= t.n or v >= t.n]
    fixed = sum((norm_eval(N, sub(terminals[u], terminals[v]))
                 for u, v in t.edges if u < t.n and v < t.n), Fraction(0))
    n_vars = d * m + len(free_edges)
    facets = N.ball.facets
    cons = []
    for k, (u, v) in enumerate(free_edges):
        for f in facets:
            row = [0] * n_vars
            rhs = Fraction(0)
            # <f, x_u - x_v> - t_k <= 0, terminal parts moved to the right
            for slot, sign in ((u, 1), (v, -1)):
                if slot < t.n:
                    rhs -= sign * dot(f, terminals[slot])
                else:
                    base = (slot - t.n) * d
                    for c in range(d):
                        row[base + c] += sign * f[c]
            row[d * m + k] = -1
            cons.append(Constraint(tuple(row), Relation.LE, rhs))
    objective = (0,) * (d * m) + (1,) * len(free_edges)
    sol = lp_solve(LpProblem(objective, tuple(cons), n_vars))
    x = sol.point
    steiner = tuple(tuple(x[i * d:(i + 1) * d]) for i in range(m))
    length = sol.value + fixed
    return SteinerTreeResult(t, terminals, steiner, length, Level.EXACT_FOR_TOPOLOGY)


_worker_state: dict = {}


def _init_worker(vertices, facets, terminals):
    _worker_state["norm"] = PolytopalNorm(Polytope(vertices, facets))
    _worker_state["terminals"] = terminals


def _worker_optimize(t):
    return optimize_topology(_worker_state["norm"], _worker_state["terminals"], t)


def exact_smt(inst: Instance, jobs: int = 1) -> SteinerTreeResult:
    """Steiner minimal tree by full topology enumeration (``n <= 7``).

    Ties go to the first topology in enumeration order.
    """
    n = len(inst.terminals)
    if n > MAX_EXACT_TERMINALS:
        raise SizeLimit(f"exact Steiner trees are limited to {MAX_EXACT_TERMINALS} terminals")
    N = inst.norm
    if n == 1:
        t = SteinerTopology(1, 0, ())
        return SteinerTreeResult(t, inst.terminals, (), Fraction(0), Level.EXACT_GLOBAL)
    topologies = enumerate_topologies(n)
    if jobs > 1 and len(topologies) > 16:
        with ProcessPoolExecutor(jobs, initializer=_init_worker,
                                 initargs=(N.ball.vertices, N.ball.facets, inst.terminals)) as ex:
            results = list(ex.map(_worker_optimize, topologies, chunksize=8))
    else:
        results = (optimize_topology(N, inst.terminals, t) for t in topologies)
    best = None
    for r in results:
        if best is None or r.length < best.length:
            best = r
    best.level = Level.EXACT_GLOBAL
    best.topologies_checked = len(topologies)
    return best


@dataclass
class StarVerdict:
    is_smt: bool
    star_length: Fraction
    smt: SteinerTreeResult

    def __bool__(self):
        return self.is_smt


def star_length(N: PolytopalNorm, center, leaves) -> Fraction:
    return sum((norm_eval(N, sub(p, center)) for p in leaves), Fraction(0))


def star_is_smt(N: PolytopalNorm, center, leaves, include_center: bool, jobs: int = 1) -> StarVerdict:
    """Compare the star from ``center`` with an exact SMT of the leaves (plus center)."""
    center = vec(center)
    leaves = [vec(p) for p in leaves]
    k = len(leaves) + (1 if include_center else 0)
    if k > MAX_EXACT_TERMINALS:
        raise SizeLimit("too many points for an exact verdict")
    terms = ([center] if include_center else []) + leaves
    smt = exact_smt(Instance.of(N, terms), jobs=jobs)
    s = star_length(N, center, leaves)
    return StarVerdict(smt.length == s, s, smt)


def mst_edges(N: PolytopalNorm, points: Sequence) -> list[tuple]:
    """Minimum spanning tree (Prim), ties by index."""
    n = len(points)
    if n < 2:
        return []
    in_tree = [False] * n
    best = [None] * n
    link = [-1] * n
    in_tree[0] = True
    for j in range(1, n):
        best[j] = norm_eval(N, sub(points[0], points[j]))
        link[j] = 0
    edges = []
    for _ in range(n - 1):
        j = min((j for j in range(n) if not in_tree[j]), key=lambda j: (best[j], j))
        in_tree[j] = True
        edges.append((min(j, link[j]), max(j, link[j])))
        for k in range(n):
            if not in_tree[k]:
                dk = norm_eval(N, sub(points[j], points[k]))
                if dk < best[k]:
                    best[k], link[k] = dk, j
    return edges


# ------------------------------------------------------------ local search

@dataclass
class _Tree:
    """Mutable working tree: terminal slots first, then Steiner slots."""

    n: int
    pos: list
    adj: list = field(default_factory=list)

    @classmethod
    def build(cls, n, positions, edges):
        t = cls(n, [tuple(p) for p in positions])
        t.adj = [set() for _ in positions]
        for u, v in edges:
            t.adj[u].add(v)
            t.adj[v].add(u)
        return t

    def edges(self):
        return sorted((u, v) for u in range(len(self.pos)) for v in self.adj[u] if u < v)

    def add_vertex(self, p) -> int:
        self.pos.append(tuple(p))
        self.adj.append(set())
        return len(self.pos) - 1

    def link(self, u, v):
        self.adj[u].add(v)
        self.adj[v].add(u)

    def unlink(self, u, v):
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def cleanup(self):
        """Drop Steiner points of degree <= 2 and merge Steiner points onto coincident neighbours."""
        changed = True
        while changed:
            changed = False
            for s in range(self.n, len(self.pos)):
                nb = self.adj[s]
                if not nb:
                    continue
                twin = next((v for v in nb if self.pos[v] == self.pos[s]), None)
                if twin is not None:
                    for w in list(nb):
                        self.unlink(s, w)
                        if w != twin:
                            self.link(twin, w)
                    changed = True
                elif len(nb) == 1:
                    self.unlink(s, next(iter(nb)))
                    changed = True
                elif len(nb) == 2:
                    a, b = tuple(nb)
                    self.unlink(s, a)
                    self.unlink(s, b)
                    self.link(a, b)
                    changed = True
        self.compact()

    def compact(self):
        keep = list(range(self.n)) + [s for s in range(self.n, len(self.pos)) if self.adj[s]]
        remap = {old: new for new, old in enumerate(keep)}
        self.pos = [self.pos[i] for i in keep]
        self.adj = [{remap[v] for v in self.adj[i]} for i in keep]

    def component(self, start, banned_edge):
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if {u, v} == set(banned_edge) or v in seen:
                    continue
                seen.add(v)
                stack.append(v)
        return seen

    def topology(self) -> SteinerTopology:
        return SteinerTopology(self.n, len(self.pos) - self.n, tuple(self.edges()))


def _length(N, tree: _Tree) -> Fraction:
    return tree_length(N, tree.pos, tree.edges())


def _edge_swaps(N, tree: _Tree, rng: random.Random) -> bool:
    improved = False
    edges = tree.edges()
    rng.shuffle(edges)
    for u, v in edges:
        if v not in tree.adj[u]:
            continue
        w = norm_eval(N, sub(tree.pos[u], tree.pos[v]))
        side = tree.component(u, (u, v))
        other = [k for k in range(len(tree.pos)) if k not in side]
        best = None
        for a in sorted(side):
            for b in other:
                dab = norm_eval(N, sub(tree.pos[a], tree.pos[b]))
                if best is None or dab < best[0]:
                    best = (dab, a, b)
        if best is not None and best[0] < w:
            tree.unlink(u, v)
            tree.link(best[1], best[2])
            improved = True
    return improved


def _local_resolve(N, tree: _Tree, rng: random.Random, max_points: int) -> bool:
    """Replace a vertex's star (to a few neighbours) by an exact SMT of those points."""
    order = list(range(len(tree.pos)))
    rng.shuffle(order)
    for v in order:
        nbrs = sorted(tree.adj[v])
        if len(nbrs) < 2:
            continue
        limit = min(len(nbrs), max_points - 1)
        sizes = list(range(limit, 1, -1))
        for size in sizes:
            subsets = list(combinations(nbrs, size))
            rng.shuffle(subsets)
            for chosen in subsets[:8]:
                slots = [v] + list(chosen)
                pts = [tree.pos[s] for s in slots]
                if len(set(pts)) != len(pts):
                    continue
                current = star_length(N, tree.pos[v], [tree.pos[s] for s in chosen])
                smt = exact_smt(Instance(N, tuple(pts)))
                if smt.length < current:
                    for s in chosen:
                        tree.unlink(v, s)
                    mapping = dict(enumerate(slots))
                    for sp in smt.steiner_positions:
                        mapping[len(mapping)] = tree.add_vertex(sp)
                    for a, b in smt.edges:
                        tree.link(mapping[a], mapping[b])
                    tree.cleanup()
                    return True
    return False


def _reoptimize(N, tree: _Tree) -> bool:
    if len(tree.pos) == tree.n:
        return False
    before = _length(N, tree)
    res = optimize_topology(N, tree.pos[:tree.n], tree.topology())
    if res.length < before:
        tree.pos = list(tree.pos[:tree.n]) + [tuple(p) for p in res.steiner_positions]
        tree.cleanup()
        return True
    return False


def improve_tree(
    inst: Instance,
    positions: Sequence,
    edges: Sequence,
    *,
    seed: int = 0,
    rounds: int = 50,
    max_local_points: int = 5,
) -> SteinerTreeResult:
    """Seeded local search from a given Steiner tree; never returns a longer tree.

    ``positions`` lists the terminals (in instance order) followed by any
    Steiner points of the seed tree.  Moves: edge swaps, exact re-solves of
    small stars, joint LP re-placement of all Steiner points, and removal of
    Steiner points of degree at most 2.
    """
    N = inst.norm
    n = len(inst.terminals)
    positions = [vec(p) for p in positions]
    if tuple(positions[:n]) != inst.terminals:
        raise InputError("seed positions must start with the instance terminals")
    tree = _Tree.build(n, positions, [tuple(e) for e in edges])
    seed_length = _length(N, tree)
    rng = random.Random(seed)
    tree.cleanup()
    for _ in range(rounds):
        moved = _edge_swaps(N, tree, rng)
        tree.cleanup()
        moved = _local_resolve(N, tree, rng, max_local_points) or moved
        moved = _reoptimize(N, tree) or moved
        if not moved:
            break
    length = _length(N, tree)
    assert length <= seed_length
    return SteinerTreeResult(tree.topology(), inst.terminals, tuple(tree.pos[n:]), length, Level.HEURISTIC)


# ---------------------------------------------------- star-criteria harnesses

def _pairs_absorbing(N, points) -> bool:
    from .angles import is_absorbing

    return all(is_absorbing(N, p, q) for p, q in combinations(points, 2))


@dataclass
class ChainReport:
    all_absorbing: bool
    all_antipodal: bool
    star_smt_of_leaves: bool
    star_smt_with_center: bool
    steiner_antipodal: bool
    implications_hold: bool
    equivalence_required: bool
    equivalence_holds: bool

    @property
    def conditions(self) -> tuple:
        return (self.all_absorbing, self.all_antipodal,
                self.star_smt_of_leaves, self.star_smt_with_center)

    @property
    def ok(self) -> bool:
        return self.implications_hold and (self.equivalence_holds or not self.equivalence_required)


def verify_theorem_chain(N: PolytopalNorm, unit_vectors: Sequence, *,
                         steiner_antipodal: Optional[bool] = None, jobs: int = 1) -> ChainReport:
    """Evaluate the four star conditions for unit vectors and check their implications.

    (1) all angles absorbing, (2) all pairwise distances 2, (3) the star is
    an SMT of the vectors, (4) the star is an SMT of the vectors and o.
    Expected: (2) => (3) => (4) => (1), and all four equivalent when the
    norm is Steiner antipodal.
    """
    from .antipodality import is_steiner_antipodal

    pts = [vec(p) for p in unit_vectors]
    if not pts:
        raise InputError("need at least one unit vector")
    for p in pts:
        if norm_eval(N, p) != 1:
            raise InputError(f"{p} is not a unit vector")
    o = zero_vec(N.dim)
    c1 = _pairs_absorbing(N, pts)
    c2 = all(norm_eval(N, sub(p, q)) == 2 for p, q in combinations(pts, 2))
    if len(pts) == 1:
        # a single segment from o is not a Steiner tree of one point; taken as true
        c3 = True
    else:
        c3 = star_is_smt(N, o, pts, include_center=False, jobs=jobs).is_smt
    c4 = star_is_smt(N, o, pts, include_center=True, jobs=jobs).is_smt
    if steiner_antipodal is None:
        steiner_antipodal = is_steiner_antipodal(N).steiner_antipodal
    implications = (not c2 or c3) and (not c3 or c4) and (not c4 or c1)
    equivalent = c1 == c2 == c3 == c4
    return ChainReport(c1, c2, c3, c4, steiner_antipodal, implications,
                       steiner_antipodal, equivalent)


@dataclass
class PlaneReport:
    all_absorbing: bool
    star_is_smt: bool
    star_length: Fraction
    smt_length: Fraction

    @property
    def agree(self) -> bool:
        return self.all_absorbing == self.star_is_smt


def verify_plane_theorem(N: PolytopalNorm, points: Sequence, jobs: int = 1) -> PlaneReport:
    """Planar star criterion: all angles absorbing iff the star from o is an SMT."""
    if N.dim != 2:
        raise InputError("the planar criterion needs a two-dimensional norm")
    pts = [vec(p) for p in points]
    if any(is_zero(p) for p in pts):
        raise InputError("points must be nonzero")
    left = _pairs_absorbing(N, pts)
    verdict = star_is_smt(N, zero_vec(2), pts, include_center=True, jobs=jobs)
    return PlaneReport(left, verdict.is_smt, verdict.star_length, verdict.smt.length)
