"""Command-line front end: ``loopsmith <subcommand> ...``.

Exit codes: 0 success, 1 a named domain failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import octonion as octo
from .catalog import load_json, resolve_group, resolve_subgroup
from .errors import LoopsmithError, OrderCapExceeded, ParseError, SpecError
from .loops import (centre_of_loop, factor_loop, first_associator_witness,
                    first_moufang_witness, is_normal_subloop, latin_violation, make_loop,
                    mlt_left, quotient_blocks, stabilizer_of_identity, subloop_generated,
                    two_generated_subloops_associative, two_sided_identity)
from .perm import default_cap
from .product import (ProductSpec, build_group_and_section, build_product_loop,
                      decomposition_report, properness_report, torus_variant_builder)
from .report import Report
from .sections import SearchOptions, classify_section_loops, enumerate_sections
from .tbl import format_blocks, format_rows, read_tbl, write_tbl

log = logging.getLogger("loopsmith")


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _triple(w) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def cmd_validate(args) -> int:
    table = read_tbl(args.path)
    r = Report(f"validate {args.path}")
    r.add("order", table.shape[0])
    bad = latin_violation(table)
    r.add("latin", bad is None)
    if bad:
        r.add("latin_violation", (bad[0], bad[1], bad[2]), "first repeat (kind,row,column)")
    e = two_sided_identity(table) if bad is None else None
    is_loop = bad is None and e is not None
    r.add("identity", e)
    r.add("loop", is_loop)
    summary = [f"loop: {_yes(is_loop)}"]
    if is_loop:
        L = make_loop(table)
        if e != 0:
            r.note(f"identity relabelled from {e} to 0; witnesses use the new labels")
        wa = first_associator_witness(L, workers=args.workers)
        wm = first_moufang_witness(L, workers=args.workers)
        r.add("group", wa is None)
        r.add("associative", wa is None)
        if wa is not None:
            r.add("associator_witness", wa)
        r.add("moufang", wm is None)
        if wm is not None:
            r.add("moufang_witness", wm)
        summary = [f"group: {_yes(wa is None)}", f"moufang: {_yes(wm is None)}"]
        if wa is not None:
            summary = ["loop: yes", f"associative: no; witness={_triple(wa)}",
                       f"moufang: {_yes(wm is None)}"]
    r.note("; ".join(summary))
    print(r.render(), end="")
    return 0 if is_loop else 1


def load_product_spec(path) -> ProductSpec:
    data = load_json(path)
    base = Path(path).parent
    try:
        P = resolve_group(data["P"], base)
        if "torus" in data:
            t = data["torus"]
            return torus_variant_builder(int(t["m"]), int(t["s"]), P, data["phi"], data["g"])
        return ProductSpec.from_images(resolve_group(data["K"], base), P,
                                       resolve_group(data["S"], base), data["phi"], data["g"])
    except KeyError as e:
        raise ParseError(f"{path}: missing key {e}") from None


def cmd_build_product(args) -> int:
    spec = load_product_spec(args.spec)
    PL = build_product_loop(spec)
    gs = build_group_and_section(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_tbl(out / "loop.tbl", PL.base.table)
    write_tbl(out / "group.tbl", gs.G.table)
    (out / "subgroup.txt").write_text(format_rows([gs.H.members]))
    (out / "section.txt").write_text(format_rows([gs.sigma.choice]))
    prop = properness_report(spec)
    dec = decomposition_report(spec)
    (out / "properness.txt").write_text(prop.render())
    (out / "decomposition.txt").write_text(dec.render())
    r = Report(f"build-product {args.spec}")
    r.add("order", PL.order, "loop order")
    r.add("group_order", gs.G.order, "|K x P x S|")
    r.add("stabilizer_order", len(gs.H), "|H|")
    r.add("section_size", len(gs.M), "|M|")
    r.add("associative", prop["associative"])
    r.add("N_normal", dec["N_normal"])
    try:
        G = mlt_left(PL.base, cap=args.cap)
        r.add("mlt_left", G.order, "order of the left multiplication group")
    except OrderCapExceeded:
        r.add("mlt_left", "cap", "order of the left multiplication group")
    r.add("out", str(out))
    print(r.render(), end="")
    return 0


def cmd_check(args) -> int:
    L = make_loop(read_tbl(args.path))
    r = Report(f"check {args.path}")
    r.add("order", L.order)
    wa = first_associator_witness(L, workers=args.workers)
    r.add("associative", wa is None)
    if wa is not None:
        r.add("associator_witness", wa)
    r.add("moufang", first_moufang_witness(L, workers=args.workers) is None)
    r.add("diassociative", two_generated_subloops_associative(L))
    Z = centre_of_loop(L)
    r.add("centre_size", len(Z))
    try:
        G = mlt_left(L, cap=args.cap)
        r.add("mlt_left", G.order)
        r.add("stabilizer", len(stabilizer_of_identity(G)))
    except OrderCapExceeded as e:
        r.add("mlt_left", "cap")
        r.note(f"left multiplication group exceeds the cap ({e.context['cap']})")
    status = 0
    if args.normal is not None:
        N = subloop_generated(L, args.normal)
        r.add("subloop", N.members, "generated subloop")
        normal = is_normal_subloop(L, N)
        r.add("normal", normal)
        if normal and args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            write_tbl(out / "factor.tbl", factor_loop(L, N).table)
            (out / "factor.blocks").write_text(format_blocks(quotient_blocks(L, N)))
        if not normal:
            status = 1
    print(r.render(), end="")
    return status


def _search_setup(args):
    data = load_json(args.instance)
    base = Path(args.instance).parent
    try:
        G = resolve_group(data["group"], base)
        H = resolve_subgroup(G, data["subgroup"])
    except KeyError as e:
        raise ParseError(f"{args.instance}: missing key {e}") from None
    o = dict(data.get("options", {}))
    if getattr(args, "limit", None) is not None:
        o["max_solutions"] = args.limit
    for flag in ("require_generation", "parallel", "symmetry_breaking"):
        if getattr(args, flag, False):
            o[flag] = True
    if getattr(args, "unpinned", False):
        o["pin_identity"] = False
    try:
        opts = SearchOptions(**o)
    except TypeError as e:
        raise ParseError(f"{args.instance}: bad options: {e}") from None
    return G, H, opts


def cmd_search(args) -> int:
    G, H, opts = _search_setup(args)
    count = orbits = 0
    for s in enumerate_sections(G, H, opts):
        count += s.orbit_size
        orbits += 1
        if not args.count_only:
            print(" ".join(map(str, s.choice)))
    if args.count_only:
        r = Report(f"search-sections {args.instance}")
        r.add("group_order", G.order)
        r.add("subgroup_order", len(H))
        r.add("pinned", opts.pin_identity)
        r.add("count", count)
        if opts.symmetry_breaking:
            r.add("orbits", orbits)
        print(r.render(), end="")
    return 0


def cmd_classify(args) -> int:
    G, H, opts = _search_setup(args)
    classes = classify_section_loops(G, H, opts)
    r = Report(f"classify {args.instance}")
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for i, (L, m) in enumerate(classes):
        assoc = first_associator_witness(L) is None
        r.note(f"class {i}: order {L.order}, associative {_yes(assoc)}, multiplicity {m}")
        if out:
            write_tbl(out / f"class_{i}.tbl", L.table)
    r.add("classes", len(classes))
    r.add("multiplicities", [m for _, m in classes])
    r.add("total", sum(m for _, m in classes))
    print(r.render(), end="")
    return 0


def cmd_octonion_demo(args) -> int:
    r = Report("octonion-demo")
    ok = True
    if args.samples > 0:
        rng = np.random.default_rng(args.seed)
        x, y, z = (octo.random_units(args.samples, rng) for _ in range(3))
        res = float(octo.moufang_residual(x, y, z).max())
        nd = float(octo.norm_defect(x, y).max())
        r.add("samples", args.samples)
        r.add("seed", args.seed)
        r.add("max_moufang_residual", repr(res))
        r.add("max_norm_defect", repr(nd))
        ok &= res <= 1e-12 and nd <= 1e-12
    O = octo.build_octavian_units()
    L = O.loop
    Z = centre_of_loop(L)
    F = octo.octavian_factor_by_centre()
    moufang = first_moufang_witness(L, workers=args.workers) is None
    wa = first_associator_witness(L, workers=args.workers)
    fm = first_moufang_witness(F, workers=args.workers) is None
    fa = first_associator_witness(F, workers=args.workers)
    exact = O.as_floats()
    gap = float(np.abs(octo.oct_mul(exact[:, None], exact[None, :])
                       - octo.oct_mul_exact(O.elements[:, None], O.elements[None, :]) / 2).max())
    r.add("closure", O.order)
    r.add("centre", len(Z))
    r.add("factor", F.order)
    r.add("moufang", "exact" if moufang else "failed")
    r.add("associative", wa is None)
    if wa is not None:
        r.add("associator_witness", wa)
    r.add("factor_moufang", fm)
    r.add("factor_associative", fa is None)
    r.add("diassociative", two_generated_subloops_associative(L))
    r.add("max_exact_float_gap", repr(gap))
    ok &= (O.order == 240 and len(Z) == 2 and F.order == 120 and moufang and wa is not None
           and fm and fa is not None and gap <= 1e-14)
    r.add("pass", ok)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_tbl(out / "octavian.tbl", L.table)
        (out / "octavian.coords").write_text(format_rows(O.elements))
        write_tbl(out / "factor.tbl", F.table)
        (out / "factor.blocks").write_text(format_blocks(quotient_blocks(L, Z)))
    print(r.render(), end="")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loopsmith", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="report which axioms a .tbl table satisfies")
    v.add_argument("path")
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_validate)

    b = sub.add_parser("build-product", help="run the product-loop pipeline on a .prod.json spec")
    b.add_argument("spec")
    b.add_argument("--out", default=".")
    b.add_argument("--cap", type=int, default=None)
    b.set_defaults(func=cmd_build_product)

    c = sub.add_parser("check", help="structural report for a loop table")
    c.add_argument("path")
    c.add_argument("--cap", type=int, default=None)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--normal", type=int, nargs="*", default=None,
                   help="test the subloop generated by these elements for normality")
    c.add_argument("--out", default=None, help="write the factor loop here when normal")
    c.set_defaults(func=cmd_check)

    for name, func, help_ in (("search-sections", cmd_search, "enumerate sharply transitive sections"),
                              ("classify", cmd_classify, "isomorphism classes of section loops")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("instance")
        s.add_argument("--limit", type=int, default=None)
        s.add_argument("--require-generation", dest="require_generation", action="store_true")
        s.add_argument("--parallel", action="store_true")
        s.add_argument("--symmetry-breaking", dest="symmetry_breaking", action="store_true")
        s.add_argument("--unpinned", action="store_true",
                       help="let the identity coset's representative range over H")
        if name == "search-sections":
            s.add_argument("--count-only", dest="count_only", action="store_true")
        else:
            s.add_argument("--out", default=None)
        s.set_defaults(func=func)

    o = sub.add_parser("octonion-demo", help="float and exact octonion checks")
    o.add_argument("--samples", type=int, default=10_000)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--workers", type=int, default=1)
    o.add_argument("--out", default=None)
    o.set_defaults(func=cmd_octonion_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if getattr(args, "cap", None) is None and hasattr(args, "cap"):
        args.cap = default_cap()
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e.clause}: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SpecError as e:
        print(f"error: {e.clause}: {e}", file=sys.stderr)
        return 1
    except LoopsmithError as e:
        print(f"error: {e.clause}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
