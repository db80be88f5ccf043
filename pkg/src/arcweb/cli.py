"""Command line interface: ``arcweb <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .core_combinatorics import Block, Weight, arrows_from, defect, is_kostant, lambda_circ
from .diagrams import CapDiagram, CupDiagram, Matching
from .laurent import LaurentPoly
from .linalg import default_field, parse_field, set_default_field

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------

def _block(args, weights: list[Weight] = ()) -> Block:
    """Block from --block FRAME[:nd,nu] plus an optional positional counts token."""
    if not getattr(args, "block", None):
        if weights:
            return weights[0].block
        raise UsageError("--block is required")
    spec = args.block
    if isinstance(spec, list):
        if len(spec) > 2:
            raise UsageError("--block takes a frame and at most one counts token")
        spec, counts = spec[0], (spec[1] if len(spec) == 2 else None)
    else:
        counts = None
    try:
        b = Block.parse(spec, counts) if (counts or ":" in spec) else None
    except ValueError as e:
        if weights and counts:
            b = None
        else:
            raise UsageError(str(e)) from None
    if b is None:
        if not weights:
            raise UsageError("block counts missing, use FRAME:down,up")
        return weights[0].block
    if weights and not all(b.contains(w) for w in weights):
        wb = weights[0].block
        if wb.frame == b.frame and (wb.n_down, wb.n_up) == (b.n_up, b.n_down):
            print(f"warning: counts {counts or spec.split(':')[1]} read as up,down; "
                  f"using the weights' block {wb}", file=sys.stderr)
            return wb
        raise UsageError(f"weights do not lie in block {b}")
    return b


def _weight(text: str | None, name: str = "--weight") -> Weight:
    if not text:
        raise UsageError(f"{name} is required")
    try:
        return Weight.parse(text)
    except ValueError as e:
        raise UsageError(f"malformed weight {text!r}: {e}") from None


def _matching(text: str | None) -> Matching:
    if not text:
        raise UsageError("--matching is required")
    try:
        return Matching.parse(text)
    except ValueError as e:
        raise UsageError(f"malformed matching {text!r}: {e}") from None


def _emit_matrix(args, rows: list[str], m: list[list[LaurentPoly]], out) -> None:
    cells = [[str(x) for x in row] for row in m]
    if args.format == "json":
        json.dump({"index": rows, "matrix": cells}, out)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow([""] + rows)
        for r, row in zip(rows, cells):
            w.writerow([r] + row)
    else:
        width = max([len(c) for row in cells for c in row] + [len(r) for r in rows] + [1])
        out.write(" " * (width + 1) + " ".join(r.rjust(width) for r in rows) + "\n")
        for r, row in zip(rows, cells):
            out.write(r.rjust(width) + " " + " ".join(c.rjust(width) for c in row) + "\n")


def _emit(args, data, text: str, out) -> None:
    if args.format == "json":
        json.dump(data, out, sort_keys=True)
        out.write("\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _char_dict(ch: dict) -> dict[str, str]:
    return {str(w): str(p) for w, p in sorted(ch.items(), key=lambda kv: str(kv[0]))}


# -- commands -------------------------------------------------------------------

def cmd_block(args, out) -> int:
    ws = [_weight(args.weight)] if args.weight else []
    b = _block(args, ws)
    if args.action == "weights":
        data = [str(w) for w in b.weights]
        _emit(args, data, "\n".join(data), out)
    elif args.action == "arrows":
        data = [[str(l), str(n)] for l in b.weights for _, _, n in arrows_from(l)]
        _emit(args, data, "\n".join(f"{a} -> {c}" for a, c in data), out)
    elif args.action == "info":
        w = ws[0] if ws else None
        data = {"block": str(b), "size": len(b.weights), "max_defect": b.max_defect}
        if w is not None:
            data.update(weight=str(w), defect=defect(w), kostant=is_kostant(w), circ=str(lambda_circ(w)))
        _emit(args, data, "\n".join(f"{k}: {v}" for k, v in data.items()), out)
    elif args.action == "circ":
        w = _weight(args.weight)
        _emit(args, {"weight": str(w), "circ": str(lambda_circ(w))}, str(lambda_circ(w)), out)
    return OK


def _basis_record(A, i: int) -> dict:
    from .render import to_json
    a, ws, b = A.basis[i]
    return {"index": i, "cup": to_json(CupDiagram.of_weight(a)), "weight": str(ws[0]),
            "cap": to_json(CapDiagram.of_weight(b)), "degree": A.degrees[i]}


def cmd_algebra(args, out) -> int:
    from .arc_algebra import arc_algebra
    A = arc_algebra(_block(args))
    if args.action == "basis":
        recs = [_basis_record(A, i) for i in range(len(A))]
        _emit(args, recs, "\n".join(f"{i}\t{A.format_key(i)}\tdeg {A.degrees[i]}" for i in range(len(A))), out)
    elif args.action == "mult":
        if args.x is None or args.y is None:
            raise UsageError("mult needs --x and --y basis indices")
        for v in (args.x, args.y):
            if not 0 <= v < len(A):
                raise UsageError(f"basis index {v} out of range 0..{len(A) - 1}")
        prod = A.mul(args.x, args.y)
        data = {str(k): c for k, c in sorted(prod.items())}
        text = " + ".join(f"{c}*{A.format_key(k)}" for k, c in sorted(prod.items())) or "0"
        _emit(args, data, text, out)
    elif args.action == "cartan":
        _emit_matrix(args, [str(w) for w in A.weights], A.cartan_matrix(), out)
    return OK


def cmd_bimodule(args, out) -> int:
    from .bimodules import Bimodule, blocks_for, reduce_bimodule, tensor_over_K
    ms = [_matching(t) for t in (args.matching or [])]
    if not ms:
        raise UsageError("--matching is required")
    args.block = [args.left]
    left = _block(args)
    blocks = blocks_for(left, ms)
    if args.right:
        try:
            right = Block.parse(args.right)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if right != blocks[-1]:
            raise UsageError(f"matchings lead to block {blocks[-1]}, not {right}")
    if args.action == "basis":
        B = Bimodule(blocks, ms)
        data = {"dim": str(B.graded_dim()), "basis": [B.format_key(i) for i in range(len(B))]}
        _emit(args, data, f"graded dim {data['dim']}\n" + "\n".join(data["basis"]), out)
    elif args.action == "reduce":
        red = reduce_bimodule(ms)
        data = {"matching": str(red.matching), "circles": red.n_circles, "shift": red.shift}
        _emit(args, data, f"{red.matching}\ncircles removed: {red.n_circles}\nshift: {red.shift}", out)
    elif args.action == "tensor":
        if len(ms) != 2:
            raise UsageError("tensor needs exactly two --matching options")
        b1 = Bimodule(blocks[:2], ms[:1])
        b2 = Bimodule(blocks[1:], ms[1:])
        res = tensor_over_K(b1, b2, check_distinguished=True)
        comp = Bimodule(blocks, ms).graded_dim()
        data = {"tensor": str(res.total), "composite": str(comp), "equal": res.total == comp,
                "distinguished_basis": res.distinguished_basis}
        _emit(args, data, "\n".join(f"{k}: {v}" for k, v in data.items()), out)
        return OK if data["equal"] and res.distinguished_basis else FAILED
    return OK


def cmd_functor(args, out) -> int:
    from .functors import (FunctorDescriptor, apply_character, on_cell, on_irreducible_K0,
                           on_projective, predicted_cell, predicted_irreducible, predicted_projective)
    t = _matching(args.matching)
    g = _weight(args.weight)
    if g.frame != t.top:
        raise UsageError("the weight must live on the top line of the matching")
    try:
        target = Block(t.bottom, g.n_down + t.n_caps - t.n_cups, g.n_up + t.n_caps - t.n_cups)
    except ValueError as e:
        raise UsageError(str(e)) from None
    F = FunctorDescriptor(g.block, target, t)
    if not F.proper:
        raise UsageError("matching is not proper for these blocks")
    if args.on == "proj":
        res = on_projective(F, g)
        data = None if res is None else {"weight": str(res[0]), "circles": res[1], "shift": res[2]}
        text = "0" if res is None else f"P({res[0]}) (x) R^{res[1]} <{res[2]}>"
        pred = predicted_projective(F, g)
    elif args.on == "cell":
        layers = on_cell(F, g)
        data = [{"weight": str(L.weight), "shift": L.shift} for L in layers]
        text = "\n".join(f"V({L.weight})<{L.shift}>" for L in layers) or "0"
        pred = predicted_cell(F, g)
    else:
        terms = on_irreducible_K0(F, g)
        data = [{"weight": str(w), "multiplicity": str(m)} for w, m in terms]
        text = " + ".join(f"({m})[L({w})]" for w, m in terms) or "0"
        pred = predicted_irreducible(F, g)
    status = OK
    if args.verify:
        from .arc_algebra import arc_algebra
        from .modrep import cell_module, irreducible_module, projective_module
        make = {"proj": projective_module, "cell": cell_module, "irr": irreducible_module}[args.on]
        actual = apply_character(F, make(arc_algebra(F.source), F.source.index(g)))
        ok = actual == pred
        data = {"result": data, "tensor_character": _char_dict(actual), "agrees": ok}
        text += f"\ntensor character {_char_dict(actual)}; agrees: {ok}"
        status = OK if ok else FAILED
    _emit(args, data, text, out)
    return status


def cmd_module(args, out) -> int:
    from .arc_algebra import arc_algebra
    from . import modrep as M
    ws = [_weight(args.weight)] if args.weight else []
    b = _block(args, ws)
    A = arc_algebra(b)
    act = args.action
    if act == "decomp":
        D = M.decomposition_matrix_via_hom(A)
        _emit_matrix(args, [str(w) for w in b.weights], D, out)
        return OK if D == M.decomposition_matrix(A) else FAILED
    if act == "dcp":
        table = M.double_centralizer_table(A)
        bad = [(str(b.weights[i]), str(b.weights[j]), str(x), str(y)) for i, j, x, y in table if x != y]
        data = {"pairs": len(table), "mismatches": bad,
                "entries": [[str(b.weights[i]), str(b.weights[j]), str(x)] for i, j, x, _ in table]}
        _emit(args, data, f"{len(table)} pairs, {len(bad)} mismatches", out)
        return OK if not bad else FAILED
    lam = b.index(_weight(args.weight))
    if act in ("cell", "proj", "irr"):
        make = {"cell": M.cell_module, "proj": M.projective_module, "irr": M.irreducible_module}[act]
        mod = make(A, lam)
        ch = {str(A.weights[w]): str(p) for w, p in sorted(mod.character().items())}
        _emit(args, {"module": mod.name, "dim": str(mod.graded_dim()), "character": ch},
              f"{mod.name}: graded dim {mod.graded_dim()}\n" + "\n".join(f"  {k}: {v}" for k, v in ch.items()), out)
        return OK
    if act == "socle":
        got = M.socle_of_cell(A, lam)
        circ, d = M.socle_prediction(A.weights[lam])
        ok = got == {(b.index(circ), d): 1}
        data = {"weight": str(A.weights[lam]), "socle": [[str(A.weights[w]), j, n] for (w, j), n in sorted(got.items())],
                "predicted": [str(circ), d], "agrees": ok}
        _emit(args, data, f"soc V({A.weights[lam]}) = " + ", ".join(f"L({A.weights[w]})<{j}>" for (w, j) in got)
              + f"; predicted L({circ})<{d}>; agrees: {ok}", out)
        return OK if ok else FAILED
    if act == "resolve":
        depth = args.depth if args.depth is not None else M.default_depth(b)
        if depth < 0:
            raise UsageError("--depth must be non-negative")
        res = M.minimal_resolution(M.cell_module(A, lam), depth)
        terms = [[[str(A.weights[w]), s] for w, s in t] for t in res.terms]
        text = "\n".join(f"P_{i}: " + " + ".join(f"P({w})<{s}>" for w, s in t) for i, t in enumerate(terms))
        _emit(args, {"terms": terms, "complete": res.complete, "minimal": res.minimal_ok}, text, out)
        return OK if res.minimal_ok else FAILED
    raise UsageError(f"unknown module action {act}")


def cmd_kl(args, out) -> int:
    from . import kl
    ws = [_weight(x) for x in (args.lam, args.mu) if x]
    b = _block(args, ws)
    if args.action == "poly":
        if len(ws) != 2:
            raise UsageError("poly needs --lambda and --mu")
        p = kl.kl_poly_closed(ws[0], ws[1])
        _emit(args, {"lambda": str(ws[0]), "mu": str(ws[1]), "p": str(p)}, str(p), out)
        return OK
    if args.action == "matrix":
        _emit_matrix(args, [str(w) for w in b.weights], kl.kl_matrix(b), out)
        return OK
    # identities on one block
    checks = {}
    P = kl.kl_matrix(b)
    checks["closed = recursive"] = P == kl.kl_matrix(b, "recursive")
    D = kl.decomposition_matrix(b)
    from .laurent import identity, mat_mul
    checks["D(q) P(-q) = I"] = mat_mul(D, kl.at_minus_q(P)) == identity(len(P))
    C = kl.cartan_matrix(b)
    E = kl.poincare_matrix(b)
    checks["C(-q) E = I"] = mat_mul(kl.at_minus_q(C), E) == identity(len(E))
    checks["euler"] = all(kl.euler_check(lam, b, C, D) for lam in b.weights)
    if args.depth is not None:
        from .arc_algebra import arc_algebra
        A = arc_algebra(b)
        checks[f"Ext(V, L) to depth {args.depth}"] = all(
            kl.ext_cell_check(A, i, None, args.depth) for i in range(len(b.weights)))
    _emit(args, checks, "\n".join(f"{'PASS' if v else 'FAIL'} {k}" for k, v in checks.items()), out)
    return OK if all(checks.values()) else FAILED


def cmd_bgg(args, out) -> int:
    from .bgg import verify_bgg
    from .parallel import pmap
    ws = [_weight(args.mu)] if args.mu else []
    b = _block(args, ws)
    mus = ws if (ws and not args.all) else list(b.weights)
    reports = [r.as_dict() for r in pmap(verify_bgg, mus)]
    ok = all(r["d_squared_zero"] and r["squares_ok"] and r["verdict"] == r["kostant"] for r in reports)
    text = "\n".join(f"{r['mu']}: kostant={r['kostant']} d2=0:{r['d_squared_zero']} "
                     f"exact={''.join('1' if e else '0' for e in r['exact_positions'])} verdict={r['verdict']}"
                     for r in reports)
    _emit(args, reports if len(reports) > 1 else reports[0], text, out)
    return OK if ok else FAILED


def cmd_render(args, out) -> int:
    from .render import dumps, render_svg, render_text
    if args.matching:
        obj = _matching(args.matching)
    elif args.cup:
        obj = CupDiagram.of_weight(_weight(args.cup, "--cup"))
    elif args.cap:
        obj = CapDiagram.of_weight(_weight(args.cap, "--cap"))
    elif args.weight:
        obj = _weight(args.weight)
    else:
        raise UsageError("render needs --weight, --cup, --cap or --matching")
    if args.format == "json":
        out.write(dumps(obj) + "\n")
    elif args.format == "svg":
        out.write(render_svg(obj) + "\n")
    else:
        out.write(render_text(obj) + "\n")
    return OK


def cmd_check(args, out) -> int:
    from .checks import CHECKS, run_checks
    names = args.only.split(",") if args.only else None
    if names and any(n not in CHECKS for n in names):
        raise UsageError(f"unknown checks; choose from {', '.join(CHECKS)}")
    results = run_checks(args.max_free, names, seed=args.seed)
    if args.format == "json":
        json.dump([{"name": r.name, "passed": r.passed, "cases": r.cases,
                    "counterexample": r.counterexample, "notes": r.notes} for r in results], out)
        out.write("\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
    return OK if all(r.passed for r in results) else FAILED


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv", "svg"], default="text")
    common.add_argument("--json", dest="format", action="store_const", const="json")
    common.add_argument("--field", default=None, help="q for rationals or p<prime>")
    common.add_argument("--seed", type=int, default=0)

    blk = argparse.ArgumentParser(add_help=False)
    blk.add_argument("--block", nargs="+", metavar="FRAME [DOWN,UP]",
                     help="frame over *ox with counts as FRAME:down,up or a second token")

    p = argparse.ArgumentParser(prog="arcweb", description="Exact computations with arc algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("block", parents=[common, blk])
    s.add_argument("action", choices=["weights", "arrows", "info", "circ"])
    s.add_argument("--weight")
    s.set_defaults(fn=cmd_block)

    s = sub.add_parser("algebra", parents=[common, blk])
    s.add_argument("action", choices=["basis", "mult", "cartan"])
    s.add_argument("--x", type=int)
    s.add_argument("--y", type=int)
    s.set_defaults(fn=cmd_algebra)

    s = sub.add_parser("bimodule", parents=[common])
    s.add_argument("action", choices=["basis", "reduce", "tensor"])
    s.add_argument("--left", required=True, help="bottom block, FRAME:down,up")
    s.add_argument("--right", help="top block (checked against the matchings)")
    s.add_argument("--matching", action="append")
    s.set_defaults(fn=cmd_bimodule)

    s = sub.add_parser("functor", parents=[common])
    s.add_argument("action", choices=["apply"])
    s.add_argument("--matching", required=True)
    s.add_argument("--on", choices=["proj", "cell", "irr"], required=True)
    s.add_argument("--weight", required=True)
    s.add_argument("--verify", action="store_true", help="also tensor with the bimodule")
    s.set_defaults(fn=cmd_functor)

    s = sub.add_parser("module", parents=[common, blk])
    s.add_argument("action", choices=["cell", "proj", "irr", "resolve", "socle", "dcp", "decomp"])
    s.add_argument("--weight")
    s.add_argument("--depth", type=int)
    s.set_defaults(fn=cmd_module)

    s = sub.add_parser("kl", parents=[common, blk])
    s.add_argument("action", choices=["poly", "matrix", "check"])
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--mu")
    s.add_argument("--depth", type=int)
    s.set_defaults(fn=cmd_kl)

    s = sub.add_parser("bgg", parents=[common, blk])
    s.add_argument("action", choices=["verify"])
    s.add_argument("--mu")
    s.add_argument("--all", action="store_true")
    s.set_defaults(fn=cmd_bgg)

    s = sub.add_parser("render", parents=[common])
    s.add_argument("--weight", help="draw the cup diagram of a weight")
    s.add_argument("--cup", help="the cup diagram of a weight (as a diagram object)")
    s.add_argument("--cap", help="draw the cap diagram of a weight")
    s.add_argument("--matching")
    s.set_defaults(fn=cmd_render)

    s = sub.add_parser("check", parents=[common])
    s.add_argument("action", choices=["all"])
    s.add_argument("--max-free", type=int, default=6)
    s.add_argument("--only", help="comma separated subset of checks")
    s.set_defaults(fn=cmd_check)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else OK
    previous = default_field()
    try:
        if args.field:
            set_default_field(parse_field(args.field))
        return args.fn(args, out)
    except (UsageError, ValueError) as e:
        print(f"arcweb: error: {e}", file=sys.stderr)
        return USAGE
    finally:
        set_default_field(previous)


def run(argv: list[str]) -> tuple[int, str]:
    """Run the CLI capturing stdout; handy for tests."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
