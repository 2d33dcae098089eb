"""Command-line front end.

Exit status: 0 when the computation finished, 1 when ``verify`` found a
violated property, 2 on bad input.  Output is JSON on stdout.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Optional

from . import io
from .angles import absorbing_certificate, angle_face_distance, is_absorbing
from .antipodality import default_jobs, is_cl_space, is_steiner_antipodal
from .exactgeom import InputError, format_rat, format_vec, parse_vec, zero_vec
from .hanner import build_hanner, rhombic_dodecahedron
from .norm import PolytopalNorm
from .steiner import (
    Instance,
    exact_smt,
    improve_tree,
    mst_edges,
    star_length,
    tree_length,
    verify_plane_theorem,
    verify_theorem_chain,
)

COMMANDS = ("ball", "dual", "absorbing", "steiner-antipodal", "cl-check",
            "hanner", "smt", "verify", "counterexample")


class Violation(Exception):
    """A verified property turned out false; carries the payload to print."""

    def __init__(self, payload):
        super().__init__("property violated")
        self.payload = payload


# ----------------------------------------------------------------- helpers

def _norm(args) -> PolytopalNorm:
    sources = [s for s in (args.ball, args.hanner, args.rhombic) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --ball, --hanner, --rhombic")
    if args.ball is not None:
        return io.norm_from_json(io.load_json(args.ball))
    if args.hanner is not None:
        return build_hanner(args.hanner)
    return rhombic_dodecahedron(args.rhombic)


def _write(payload: Any, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(io.dumps(payload) + "\n")


def counterexample_payload(d: int, seed: int = 0, rounds: int = 50) -> dict:
    """Star from o to every vertex of the cube-projection ball versus a searched tree.

    The origin is kept as a terminal, so a shorter tree shows that the star
    is not a minimal tree of ``{o} + vertices``.
    """
    N = rhombic_dodecahedron(d)
    verts = list(N.ball.vertices)
    o = zero_vec(d)
    absorbing = sum(1 for p, q in combinations(verts, 2) if is_absorbing(N, p, q))
    pairs = len(verts) * (len(verts) - 1) // 2
    terms = [o] + verts
    inst = Instance.of(N, terms)
    seed_edges = [(0, i) for i in range(1, len(terms))]
    best = improve_tree(inst, terms, seed_edges, seed=seed, rounds=rounds)
    recomputed = best.recompute_length(N)
    star = star_length(N, o, verts)
    return {
        "d": d,
        "vertices": len(verts),
        "anglesChecked": pairs,
        "anglesAbsorbing": absorbing,
        "allAnglesAbsorbing": absorbing == pairs,
        "starLength": format_rat(star),
        "foundLength": format_rat(recomputed),
        "shorterThanStar": recomputed < star,
        "mstLength": format_rat(tree_length(N, terms, mst_edges(N, terms))),
        "tree": io.tree_to_json(best),
    }


# ---------------------------------------------------------------- commands

def cmd_ball(args):
    N = _norm(args)
    return io.ball_to_json(N.ball, facets=True) | {"faceCounts": N.ball.face_counts()}


def cmd_dual(args):
    N = _norm(args)
    return io.ball_to_json(N.dual_ball, facets=args.facets)


def cmd_absorbing(args):
    N = _norm(args)
    a, b = parse_vec(args.a), parse_vec(args.b)
    dist = angle_face_distance(N, a, b)[0]
    cert = absorbing_certificate(N, a, b)
    return {
        "absorbing": dist <= 1,
        "faceDistance": format_rat(dist),
        "certificate": None if cert is None else {
            "aStar": format_vec(cert.a_star), "bStar": format_vec(cert.b_star)},
    }


def cmd_steiner_antipodal(args):
    N = _norm(args)
    rep = is_steiner_antipodal(N, jobs=args.jobs)
    witness = None
    if not rep.steiner_antipodal:
        witness = {
            "faceA": io.face_to_json(rep.face_a),
            "faceB": io.face_to_json(rep.face_b),
            "distance": format_rat(rep.distance),
            "legA": format_vec(rep.leg_a),
            "legB": format_vec(rep.leg_b),
        }
    return {"steinerAntipodal": rep.steiner_antipodal, "pairsChecked": rep.pairs_checked,
            "witness": witness}


def cmd_cl_check(args):
    N = _norm(args)
    rep = is_cl_space(N)
    witness = None if rep.cl_space else {"facet": format_vec(rep.facet),
                                         "vertex": format_vec(rep.vertex)}
    return {"clSpace": rep.cl_space, "witness": witness}


def cmd_hanner(args):
    if args.hanner_cmd == "build":
        N = build_hanner(args.expr)
    else:
        N = rhombic_dodecahedron(args.d)
    payload = io.ball_to_json(N.ball)
    _write(payload, args.out)
    return payload


def cmd_smt(args):
    N = _norm(args)
    terms = io.points_from_json(io.load_json(args.terminals))
    inst = Instance.of(N, terms)
    if args.heuristic:
        edges = mst_edges(N, inst.terminals)
        res = improve_tree(inst, inst.terminals, edges, seed=args.seed)
    else:
        res = exact_smt(inst, jobs=args.jobs)
    payload = io.tree_to_json(res)
    if args.csv:
        return io.tree_csv([{
            "name": Path(args.terminals).stem, "terminals": len(terms),
            "steinerPoints": len(res.steiner_positions), "level": res.level.value,
            "length": format_rat(res.length)}])
    _write(payload, args.out)
    return payload


def cmd_verify(args):
    N = _norm(args)
    pts = io.points_from_json(io.load_json(args.points))
    if args.which == "chain":
        rep = verify_theorem_chain(N, pts, jobs=args.jobs)
        payload = {
            "conditions": {"allAbsorbing": rep.all_absorbing, "allAntipodal": rep.all_antipodal,
                           "starSmtOfPoints": rep.star_smt_of_leaves,
                           "starSmtWithOrigin": rep.star_smt_with_center},
            "steinerAntipodal": rep.steiner_antipodal,
            "implicationsHold": rep.implications_hold,
            "equivalenceHolds": rep.equivalence_holds,
            "ok": rep.ok,
        }
        ok = rep.ok
    else:
        rep = verify_plane_theorem(N, pts, jobs=args.jobs)
        payload = {"allAbsorbing": rep.all_absorbing, "starIsSmt": rep.star_is_smt,
                   "starLength": format_rat(rep.star_length),
                   "smtLength": format_rat(rep.smt_length), "agree": rep.agree}
        ok = rep.agree
    if not ok:
        raise Violation(payload)
    return payload


def cmd_counterexample(args):
    return counterexample_payload(args.d, seed=args.seed, rounds=args.rounds)


HANDLERS = {
    "ball": cmd_ball, "dual": cmd_dual, "absorbing": cmd_absorbing,
    "steiner-antipodal": cmd_steiner_antipodal, "cl-check": cmd_cl_check,
    "hanner": cmd_hanner, "smt": cmd_smt, "verify": cmd_verify,
    "counterexample": cmd_counterexample,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--float", action="store_true", help="render rationals as decimals")
    common.add_argument("--jobs", type=int, default=default_jobs(),
                        help="worker processes (default from POLYSTEINER_JOBS)")
    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--ball", help="ball JSON file")
    src.add_argument("--hanner", help='Hanner expression such as "((R +1 R) +inf R)"')
    src.add_argument("--rhombic", type=int, help="cube projection ball of dimension D")

    p = argparse.ArgumentParser(prog="polysteiner", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("ball", parents=[common, src], help="hull, facets and face counts")
    d = sub.add_parser("dual", parents=[common, src], help="polar dual ball")
    d.add_argument("--facets", action="store_true")
    a = sub.add_parser("absorbing", parents=[common, src], help="absorbing-angle test")
    a.add_argument("--a", required=True)
    a.add_argument("--b", required=True)
    sub.add_parser("steiner-antipodal", parents=[common, src])
    sub.add_parser("cl-check", parents=[common, src])
    h = sub.add_parser("hanner", parents=[common], help="build Hanner or cube-projection balls")
    hs = h.add_subparsers(dest="hanner_cmd", required=True)
    hb = hs.add_parser("build")
    hb.add_argument("expr")
    hb.add_argument("--out")
    hr = hs.add_parser("rhombic")
    hr.add_argument("--d", type=int, default=3)
    hr.add_argument("--out")
    s = sub.add_parser("smt", parents=[common, src], help="Steiner minimal tree")
    s.add_argument("--terminals", required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--heuristic", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--csv", action="store_true", help="one-line CSV summary instead of JSON")
    v = sub.add_parser("verify", parents=[common, src], help="check the star criteria on a point set")
    v.add_argument("which", choices=["chain", "plane"])
    v.add_argument("--points", required=True)
    c = sub.add_parser("counterexample", parents=[common])
    c.add_argument("family", choices=["rhombic"])
    c.add_argument("--d", type=int, default=3)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--rounds", type=int, default=50)
    return p


def _emit(payload, as_float: bool, stream):
    if isinstance(payload, str):
        stream.write(payload)
        return
    if as_float:
        payload = io.as_float(payload)
    stream.write(io.dumps(payload) + "\n")


VECTOR_FLAGS = ("--a", "--b")


def _glue_vector_args(argv) -> list[str]:
    """Turn ``--b -1,1`` into ``--b=-1,1`` so argparse does not read a flag."""
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in VECTOR_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_vector_args(argv))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        payload = HANDLERS[args.command](args)
    except Violation as v:
        _emit(v.payload, args.float, stdout)
        return 1
    except (InputError, ZeroDivisionError) as exc:
        print(f"polysteiner: error: {exc}", file=stderr)
        return 2
    _emit(payload, args.float, stdout)
    return 0


def main(argv=None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


# ---------------------------------------------------------------- scenarios

@dataclass
class Scenario:
    """A named CLI invocation with an optional expected payload subset."""

    name: str
    command: str
    ball: dict = field(default_factory=dict)
    params: list = field(default_factory=list)
    expected: Optional[dict] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown scenario command {self.command!r}")
        keys = [k for k in ("ball", "hanner", "rhombic") if k in self.ball]
        if self.command not in ("hanner", "counterexample") and len(keys) != 1:
            raise InputError("a scenario needs exactly one ball source")

    def argv(self) -> list[str]:
        out = [self.command] + list(self.params)
        for k, v in self.ball.items():
            out += [f"--{k}", str(v)]
        return out


def run_scenario(sc: Scenario) -> tuple[int, Any, bool]:
    """Run a scenario; returns ``(exit code, payload, matches expected)``."""
    import io as _io
    import json

    buf = _io.StringIO()
    err = _io.StringIO()
    code = run(sc.argv(), stdout=buf, stderr=err)
    text = buf.getvalue()
    try:
        payload = json.loads(text) if text.strip() else None
    except json.JSONDecodeError:
        payload = text
    ok = True
    if sc.expected is not None:
        ok = isinstance(payload, dict) and all(payload.get(k) == v for k, v in sc.expected.items())
    return code, payload, ok


if __name__ == "__main__":  # pragma: no cover
    main()
