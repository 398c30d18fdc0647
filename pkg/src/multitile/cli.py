"""Command line front end.

Exit codes: 0 verified / passed / found, 2 not a tiling / failed / not found,
1 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .bolle import NoLatticeFound, bolle_check, det_A, tau_star_search, theorem1_pipeline
from .errors import MultitileError, PreconditionUnverifiedError
from .field import format_scalar
from .geometry import Vec
from .instance import InstanceFile, load_instance, parse_basis, parse_instance
from .svg import Window, render_svg
from .verify import VERIFIED, common_sublattice, verify_exact, verify_sampled

REPORT_SCHEMA = "multitile-report/1"
EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


def _pt(v: Vec) -> str:
    return f"({format_scalar(v.x)}, {format_scalar(v.y)})"


def _emit(args, command: str, result: dict, text: str) -> None:
    if args.json:
        doc = {"schema": REPORT_SCHEMA, "command": command, "result": result}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _certificate_text(cert) -> str:
    if cert.status == VERIFIED:
        line = f"Verified k={cert.k} ({cert.mode}"
        line += f", {cert.cells_checked} cells)" if cert.mode == "exact" else f", {cert.samples_checked} probes)"
        if cert.note:
            line += f" [{cert.note}]"
        return line
    if cert.status == "not_a_tiling":
        return (
            f"NotATiling: open multiplicity {cert.open_count} at {_pt(cert.witness)} "
            f"(closed {cert.closed_count}) vs {cert.reference_open_count} at {_pt(cert.reference_witness)}"
        )
    return f"Inconclusive ({cert.note})"


def _verify(inst: InstanceFile, args):
    mode = args.mode
    if mode is None:
        mode = "exact" if common_sublattice(inst.X) is not None else "sampled"
    if mode == "exact":
        return verify_exact(inst.polygon, inst.X)
    return verify_sampled(inst.polygon, inst.X, args.probes, args.seed)


def cmd_verify(args) -> int:
    inst = load_instance(args.file)
    cert = _verify(inst, args)
    text = _certificate_text(cert)
    if inst.expected_k is not None and cert.verified and cert.k != inst.expected_k:
        text += f"\nwarning: file expects k={inst.expected_k}"
    _emit(args, "verify", cert.to_dict(), text)
    return EXIT_OK if cert.verified else EXIT_NEGATIVE


def cmd_bolle(args) -> int:
    inst = load_instance(args.file)
    if args.basis:
        L = parse_basis(args.basis)
    else:
        groups = inst.X.groups
        if not 1 <= args.lattice_index <= len(groups):
            raise MultitileError(f"--lattice-index must be in 1..{len(groups)}")
        L = groups[args.lattice_index - 1].lattice
    rep = bolle_check(inst.polygon, L)
    rows = [f"lattice u={_pt(L.u)} v={_pt(L.v)}  area/det={format_scalar(rep.density_ratio)}"]
    rows.append("edge  mid∈½Λ  witness              g∈Λ    verdict")
    for e in rep.per_edge:
        wit = _pt(e.interior_witness) if e.interior_witness is not None else "-"
        vec = "-" if e.edge_is_lattice_vector is None else ("yes" if e.edge_is_lattice_vector else "no")
        rows.append(
            f"{e.index:<5} {'yes' if e.midpoint_in_half_lattice else 'no':<7} {wit:<20} {vec:<6} "
            f"{'ok' if e.ok else 'FAIL'}"
        )
    rows.append(f"passed k={rep.k}" if rep.passed else "failed")
    _emit(args, "bolle", rep.to_dict(), "\n".join(rows))
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


def cmd_construct(args) -> int:
    inst = load_instance(args.file)
    cert = _verify(inst, args)
    if not cert.verified:
        _emit(args, "construct", {"status": "source_not_verified", "source": cert.to_dict()},
              "source is not a verified tiling: " + _certificate_text(cert))
        return EXIT_NEGATIVE
    if cert.mode == "sampled" and not args.allow_sampled:
        raise PreconditionUnverifiedError("source tiling is only sample-verified; rerun with --allow-sampled")
    out = theorem1_pipeline(inst.polygon, inst.X, cert, args.beta_bound, allow_sampled=args.allow_sampled)
    if isinstance(out, NoLatticeFound):
        _emit(args, "construct", out.to_dict(), "NoLatticeFound\n" + json.dumps(list(out.diagnostics), indent=2))
        return EXIT_NEGATIVE
    text = (
        f"Certificate: j={out.chosen_j} beta={out.beta} lattice=[{_pt(out.lattice.u)}, {_pt(out.lattice.v)}] "
        f"k_lattice={out.k_lattice}\nsource: {_certificate_text(cert)}\n"
        f"lattice re-check: {_certificate_text(out.lattice_certificate)}"
    )
    result = out.to_dict()
    result["status"] = "certificate"
    _emit(args, "construct", result, text)
    return EXIT_OK


def cmd_tau_star(args) -> int:
    inst = load_instance(args.file)
    res = tau_star_search(inst.polygon, args.beta_bound, args.gen_bound)
    if res.found:
        text = (
            f"Found k*<={res.k} with lattice [{_pt(res.lattice.u)}, {_pt(res.lattice.v)}] "
            f"({res.candidates_checked} candidates; upper bound only)"
        )
    else:
        text = f"NotFoundWithinBounds ({res.candidates_checked} candidates)"
    _emit(args, "tau-star", res.to_dict(), text)
    return EXIT_OK if res.found else EXIT_NEGATIVE


def cmd_render(args) -> int:
    inst = load_instance(args.file)
    center = inst.polygon.center + inst.X.parts[0].offset
    window = Window.centered(center, args.window)
    svg = render_svg(
        inst.polygon,
        inst.X,
        window,
        color_by_multiplicity=args.color_by_multiplicity,
        max_translates=args.max_translates,
    )
    Path(args.out).write_text(svg, encoding="utf-8")
    _emit(args, "render", {"out": str(args.out), "bytes": len(svg.encode())}, f"wrote {args.out}")
    return EXIT_OK


def _fixture(name: str) -> InstanceFile:
    text = resources.files("multitile").joinpath("fixtures", name).read_text(encoding="utf-8")
    return parse_instance(text)


def cmd_selftest(args) -> int:
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception as exc:  # report, keep going
            ok = False
            name += f" ({type(exc).__name__}: {exc})"
        checks.append({"check": name, "passed": ok})

    sq, hx, bad = _fixture("square_z2.json"), _fixture("hexagon.json"), _fixture("square_3x1.json")
    irr = _fixture("sq_irrational_union.json")
    check("square + Z^2 is 4-fold", lambda: verify_exact(sq.polygon, sq.X).k == 4)
    check("hexagon lattice tiling is 1-fold", lambda: verify_exact(hx.polygon, hx.X).k == 1)
    check("square + (3,0),(0,1) is not a tiling", lambda: verify_exact(bad.polygon, bad.X).status == "not_a_tiling")
    check("bolle accepts square + Z^2 with k=4", lambda: bolle_check(sq.polygon, sq.X.lattices[0]).k == 4)
    check("det A(0,...,0) alternates 0/1", lambda: all(det_A([0] * n) == (n + 1) % 2 for n in range(1, 9)))

    def pipeline():
        src = verify_sampled(irr.polygon, irr.X, 64, 0)
        out = theorem1_pipeline(irr.polygon, irr.X, src, allow_sampled=True)
        return src.k == 8 and out.k_lattice == 4 and out.beta == 1

    check("irrational union yields lattice tiling k=4", pipeline)
    passed = all(c["passed"] for c in checks)
    text = "\n".join(f"{'PASS' if c['passed'] else 'FAIL'}  {c['check']}" for c in checks)
    _emit(args, "selftest", {"passed": passed, "checks": checks}, text)
    return EXIT_OK if passed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multitile", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True)

    def verify_flags(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--exact", dest="mode", action="store_const", const="exact")
        g.add_argument("--sampled", dest="mode", action="store_const", const="sampled")
        p.add_argument("--probes", type=int, default=200)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", parents=[common], help="decide whether P + X is a k-fold tiling")
    p.add_argument("file")
    verify_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bolle", parents=[common], help="edge criterion for a lattice multi-tiling")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--lattice-index", type=int, default=1)
    g.add_argument("--basis", help='lattice basis "u1,u2;v1,v2"')
    p.set_defaults(func=cmd_bolle)

    p = sub.add_parser("construct", parents=[common], help="extract a lattice multi-tiling")
    p.add_argument("file")
    verify_flags(p)
    p.add_argument("--beta-bound", type=int, default=4)
    p.add_argument("--allow-sampled", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("tau-star", parents=[common], help="search lattice multiplicities")
    p.add_argument("file")
    p.add_argument("--beta-bound", type=int, default=2)
    p.add_argument("--gen-bound", type=int, default=12)
    p.set_defaults(func=cmd_tau_star)

    p = sub.add_parser("render", parents=[common], help="draw a patch as SVG")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--window", default="8", help="side length of the square window")
    p.add_argument("--color-by-multiplicity", action="store_true")
    p.add_argument("--max-translates", type=int, default=5000)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("selftest", parents=[common], help="run built-in fixtures")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MultitileError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
