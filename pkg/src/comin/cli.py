"""Command-line entry point.

Exit codes: 0 success, 1 infeasible verdict from ``feasible``, 2 usage or
notation error, 3 an enumeration cap was exceeded.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Sequence

from .config import Config
from .errors import CapExceeded, CominError, NotationError, UnsupportedSpace
from .feasibility import Engine
from .orbit import m_of_p, max_rank
from .space import ProductSpace, build_space, format_position, notation_kind, parse_position, set_ideal_cap

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _lam_text(space, datum, lams) -> list[str]:
    lq = datum.levi_quotient
    return [format_position(lq, lam) if lq.factors else "e" for lam in lams]


def _datum_for(space, r):
    for d in m_of_p(space):
        if d.r == r:
            return d
    raise KeyError(r)


def _single_factors(space):
    return space.factors if isinstance(space, ProductSpace) else (space,)


# ----------------------------------------------------------------------------


def cmd_space(args, engine: Engine) -> int:
    space = build_space(args.space)
    if args.action == "info":
        rows = []
        for f in _single_factors(space):
            rows.append({
                "name": f.name,
                "type": f"{f.key[0]}{f.key[1]}",
                "node": f.key[2],
                "dim": f.dim,
                "positions": len(f.positions),
                "max_orbit_rank": max_rank(f),
            })
        text = "\n".join(
            f"{r['name']}: {r['type']} node {r['node']}, dim {r['dim']}, "
            f"{r['positions']} positions, maximal orbit rank {r['max_orbit_rank']}"
            for r in rows
        )
        _emit(args, {"space": space.name, "factors": rows}, text)
        return EXIT_OK
    out, lines = [], []
    for f in _single_factors(space):
        for d in m_of_p(f):
            alphas = [list(f.rs.roots[a]) for a in d.alphas]
            out.append({
                "space": f.name,
                "r": d.r,
                "alphas": alphas,
                "dim_z": d.dim_z,
                "levi_quotient": d.levi_quotient.name,
            })
            lines.append(f"{f.name} r={d.r}: |z|={d.dim_z}, L/Q = {d.levi_quotient.name}, alphas {alphas}")
        if not m_of_p(f):
            lines.append(f"{f.name}: no intermediate orbits")
    _emit(args, {"space": space.name, "orbits": out}, "\n".join(lines))
    return EXIT_OK


def _witness_json(space, rep):
    w = rep.witness
    if w is None:
        return None
    target = space.factors[w.factor] if w.factor is not None else space
    out = {"lhs": w.lhs, "rhs": w.rhs, "r": w.r, "lambdas": None}
    if w.factor is not None:
        out["factor"] = w.factor
    if w.lambdas is not None:
        out["lambdas"] = _lam_text(target, _datum_for(target, w.r), w.lambdas)
    return out


def cmd_feasible(args, engine: Engine) -> int:
    space = build_space(args.space)
    positions = [parse_position(space, t) for t in args.positions]
    rep = engine.is_feasible(space, positions, args.mode)
    wj = _witness_json(space, rep)
    if rep.feasible:
        text = "feasible"
    elif wj["r"] is None:
        text = f"infeasible: basic codimension inequality {wj['lhs']} > {wj['rhs']}"
    else:
        text = f"infeasible: orbit r={wj['r']}, lambdas {wj['lambdas']}: {wj['lhs']} > {wj['rhs']}"
    payload = {
        "space": space.name,
        "positions": [format_position(space, p) for p in positions],
        "feasible": rep.feasible,
        "witness": wj,
    }
    _emit(args, payload, text)
    return EXIT_OK if rep.feasible else EXIT_INFEASIBLE


def cmd_enumerate(args, engine: Engine) -> int:
    space = build_space(args.space)
    tuples = engine.enumerate_feasible(space, args.s, top_only=args.top, mode=args.mode)
    rows = [[format_position(space, p) for p in t] for t in tuples]
    _emit(args, {"space": space.name, "s": args.s, "top": args.top, "count": len(rows), "tuples": rows},
          "\n".join(" ".join(r) for r in rows) + f"\n{len(rows)} feasible tuples")
    return EXIT_OK


def cmd_inequalities(args, engine: Engine) -> int:
    space = build_space(args.space)
    if isinstance(space, ProductSpace):
        raise NotationError("inequalities are emitted for a single cominuscule space")
    ineqs = engine.emit_inequalities(space, args.s, args.mode)
    payload = [{"rhs": q.rhs, "r": q.r, "slots": q.slot_indices()} for q in ineqs]
    lines = [f"r={q.r if q.r is not None else '-'} rhs={q.rhs} slots={q.slot_indices()}" for q in ineqs]
    _emit(args, {"space": space.name, "s": args.s, "inequalities": payload}, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args, engine: Engine) -> int:
    from .oracles import has_oracle, product_nonzero

    space = build_space(args.space)
    if not has_oracle(space):
        raise UnsupportedSpace(f"no oracle for {space.name}")
    wanted = {"lr": {"gr"}, "shifted": {"lg", "og"}, "quadric": {"quadric"}}.get(args.oracle)
    if wanted and any(notation_kind(f) not in wanted for f in _single_factors(space)):
        raise UnsupportedSpace(f"oracle {args.oracle!r} does not cover {space.name}")
    total = agree = 0
    mismatches = []
    for tup in itertools.product(space.positions, repeat=args.s):
        if sum(space.codim(p) for p in tup) != space.dim:
            continue
        total += 1
        a = engine.is_feasible(space, tup, args.mode).feasible
        b = product_nonzero(space, tup)
        if a == b:
            agree += 1
        else:
            mismatches.append({"positions": [format_position(space, p) for p in tup], "recursion": a, "oracle": b})
    payload = {"space": space.name, "s": args.s, "tuples": total, "agree": agree, "mismatches": mismatches}
    text = f"{space.name} s={args.s}: {total} top-degree tuples, {agree} agree, {len(mismatches)} mismatches"
    for m in mismatches:
        text += f"\n  {m['positions']}: recursion {m['recursion']}, oracle {m['oracle']}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_horn(args, engine: Engine) -> int:
    from .horn import horn_compare

    space = build_space(args.space)
    if isinstance(space, ProductSpace) or space.key[0] != "A":
        raise NotationError("horn compare needs a Grassmannian Gr(k,n)")
    k, n = space.node + 1, space.rs.rank + 1
    res = horn_compare(k, n, args.s, engine)
    rows = [
        {"positions": [format_position(space, p) for p in t],
         "classical": v[0], "one_factor": v[1], "cominuscule": v[2], "oracle": v[3]}
        for t, v in res.mismatches
    ]
    payload = {"space": space.name, "s": args.s, "tuples": res.tuples, "feasible": res.feasible, "mismatches": rows}
    text = (f"{space.name} s={args.s}: {res.tuples} top-degree tuples, {res.feasible} feasible; "
            f"classical Horn, one-factor, cominuscule and LR agree on all but {len(rows)}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_conjecture(args, engine: Engine) -> int:
    from .horn import naive_lg_check
    from .oracles import product_nonzero

    n, s = args.n, args.s
    lg = build_space(f"LG({n})")
    # the shifted oracle gets slow past LG(6); auto then falls back to the recursion
    use_oracle = args.oracle == "shifted" or (args.oracle == "auto" and n <= 6)
    total = feasible = naive = 0
    strict = []
    for tup in itertools.product(lg.positions, repeat=s):
        if sum(lg.codim(p) for p in tup) != lg.dim:
            continue
        total += 1
        truth = product_nonzero(lg, tup) if use_oracle else engine.is_feasible(lg, tup).feasible
        passes = naive_lg_check(n, tup, engine).passes
        feasible += truth
        naive += passes
        if passes != truth:
            strict.append({"positions": [format_position(lg, p) for p in tup], "feasible": truth, "naive": passes})
    payload = {
        "n": n, "s": s, "truth": "oracle" if use_oracle else "recursion",
        "tuples": total, "feasible": feasible, "naive_feasible": naive, "differences": strict,
    }
    text = (f"LG({n}) s={s}: {total} top-degree tuples, {feasible} feasible, {naive} pass the naive inequalities; "
            f"{len(strict)} differences")
    for d in strict:
        text += f"\n  {d['positions']}: feasible {d['feasible']}, naive {d['naive']}"
    _emit(args, payload, text)
    return EXIT_OK


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None)
    common.add_argument("--mode", choices=("top", "full"), default="top")
    common.add_argument("--oracle", choices=("lr", "shifted", "quadric", "auto"), default="auto")
    common.add_argument("--tuple-cap", type=int, default=None)
    common.add_argument("--ideal-cap", type=int, default=None)

    p = argparse.ArgumentParser(prog="comin", description="Feasibility of Schubert positions on cominuscule spaces")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("space", parents=[common], help="describe a space")
    sp.add_argument("action", choices=("info", "orbits"))
    sp.add_argument("space")
    sp.set_defaults(func=cmd_space)

    fp = sub.add_parser("feasible", parents=[common], help="decide feasibility of a tuple")
    fp.add_argument("space")
    fp.add_argument("positions", nargs="+")
    fp.set_defaults(func=cmd_feasible)

    ep = sub.add_parser("enumerate", parents=[common], help="list feasible tuples")
    ep.add_argument("space")
    ep.add_argument("-s", type=int, required=True)
    ep.add_argument("--top", action="store_true", help="top-degree tuples only")
    ep.set_defaults(func=cmd_enumerate)

    ip = sub.add_parser("inequalities", parents=[common], help="emit the inequality system")
    ip.add_argument("space")
    ip.add_argument("-s", type=int, required=True)
    ip.set_defaults(func=cmd_inequalities)

    vp = sub.add_parser("verify", parents=[common], help="compare recursion with the oracle")
    vp.add_argument("space")
    vp.add_argument("-s", type=int, required=True)
    vp.set_defaults(func=cmd_verify)

    hp = sub.add_parser("horn", parents=[common], help="Horn recursions on a Grassmannian")
    hp.add_argument("action", choices=("compare",))
    hp.add_argument("space")
    hp.add_argument("-s", type=int, default=3)
    hp.set_defaults(func=cmd_horn)

    cp = sub.add_parser("conjecture", parents=[common], help="naive Lagrangian inequalities")
    cp.add_argument("action", choices=("naive-lg",))
    cp.add_argument("-n", type=int, required=True)
    cp.add_argument("-s", type=int, default=3)
    cp.set_defaults(func=cmd_conjecture)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        config = Config.from_env(tuple_cap=args.tuple_cap, ideal_cap=args.ideal_cap, output_format=args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args.format = config.output_format
    set_ideal_cap(config.ideal_cap)
    engine = Engine(config)
    try:
        return args.func(args, engine)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (CominError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
