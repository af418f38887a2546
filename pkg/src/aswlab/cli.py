"""Command-line front end: ``aswlab <area> <command> [flags]``.

Every run prints one JSON object (UTF-8, sorted keys) with ``inputs``,
``result``, ``certificates`` and ``timing_ms``.  Exit status is 0 on
success, 2 on invalid input and 3 when a size cap is exceeded; failures
carry ``error.kind``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from . import __version__
from .algebra import ARITHMETIC, GEOMETRIC, describe_ring
from .asw import (
    Window,
    abelianization_report,
    cokernel_basis,
    count_cyclic_covers,
    format_element,
    format_vector,
    reduce_representative,
)
from .curves import (
    SURFACE_RULE,
    STRICT_RULE,
    RamificationProfile,
    genus_needed_for,
    hurwitz_genus_fraction,
    lemma67_certificate,
    tame_hurwitz_genus,
)
from .descriptors import parse_generators, parse_group, parse_ring, parse_witt_vector
from .embed import EmbeddingProblem, abhyankar_quotient_check, reduction_tree, splitify
from .errors import AswlabError, CapExceeded, InputError, NotInWindow, ParseError
from .groups import (
    PermGroup,
    abelianization,
    commutator_subgroup,
    format_perm,
    group_summary,
    heisenberg_product,
    min_generators,
    minimal_normal_subgroups,
    quasi_p_part,
)
from .patchsim import PatchDiagram, induce, is_isomorphic_gsets, patch_components, regular_gset

SCHEMA_VERSION = 1


class UsageError(ParseError):
    kind = "usage_error"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures through the JSON error path
        raise UsageError(message)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _int_range(text: str) -> list[int]:
    """``4`` or ``1..6`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"expected an integer or a range a..b, got {text!r}") from None


def _subgroup(G: PermGroup, text: str, what: str) -> PermGroup:
    """Subgroup of G from generators in cycle notation, e.g. ``(0 1)(2 3),(0 2)``."""
    return G.subgroup(parse_generators(G.degree, text), name=what)


def _inputs(args, **extra) -> dict:
    base = {"p": None, "q": None, "n": None, "d": None, "seed": args.seed}
    base.update(extra)
    return base


def _ring_inputs(ring, args, **extra) -> dict:
    return _inputs(args, p=ring.p, q=ring.field.q, ring=describe_ring(ring), mode=ring.mode, **extra)


# ---------------------------------------------------------------------------
# witt
# ---------------------------------------------------------------------------


def cmd_witt(args) -> tuple[dict, dict, dict]:
    ring = parse_ring(args.ring, args.mode)
    u = parse_witt_vector(ring, args.u, args.n)
    inputs = _ring_inputs(ring, args, n=args.n, u=args.u)
    if args.command == "pmap":
        value = u.p_map()
    else:
        if args.v is None:
            raise UsageError("--v is required")
        v = parse_witt_vector(ring, args.v, args.n)
        inputs["v"] = args.v
        value = u + v if args.command == "add" else u * v
    reduced = reduce_representative(value, ring)
    result = {"value": format_vector(value), "components": [format_element(c) for c in value.components]}
    certificates = {"reduced_representative": format_vector(reduced)}
    return inputs, result, certificates


# ---------------------------------------------------------------------------
# asw
# ---------------------------------------------------------------------------


def _cokernel_point(ring_text: str, mode: str, n: int, d: int) -> dict:
    ring = parse_ring(ring_text, mode)
    return cokernel_basis(ring, n, Window(d)).to_json()


def _grid(args, points: list[tuple[int, int]]) -> dict[tuple[int, int], dict]:
    if args.jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = {pt: pool.submit(_cokernel_point, args.ring, args.mode, *pt) for pt in points}
            return {pt: f.result() for pt, f in sorted(futures.items())}
    return {pt: _cokernel_point(args.ring, args.mode, *pt) for pt in sorted(points)}


def cmd_asw(args) -> tuple[dict, dict, dict]:
    ring = parse_ring(args.ring, args.mode)
    ns, ds = _int_range(args.n), _int_range(args.deg)
    grid = len(ns) > 1 or len(ds) > 1
    inputs = _ring_inputs(ring, args, n=args.n if grid else ns[0], d=args.deg if grid else ds[0], jobs=args.jobs)
    certificates: dict[str, Any] = {}
    if args.command == "cokernel":
        if grid:
            cells = _grid(args, [(n, d) for n in ns for d in ds])
            result = {"grid": [{"n": n, "d": d, **cell} for (n, d), cell in cells.items()]}
        else:
            structure = cokernel_basis(ring, ns[0], Window(ds[0]))
            result = structure.to_json()
            certificates["window_dimension"] = Window(ds[0]).dimension(ring)
            certificates["generator_orders"] = {format_vector(g): o for g, o in zip(structure.generators, structure.orders)}
    elif args.command == "covers":
        if grid:
            raise UsageError("covers takes a single n and d")
        result = count_cyclic_covers(ring, ns[0], Window(ds[0])).to_json()
        certificates["cokernel"] = cokernel_basis(ring, ns[0], Window(ds[0])).to_json()
    else:  # report
        if grid:
            raise UsageError("report takes a single n and d")
        report = abelianization_report(args.genus, ring, ns[0], Window(ds[0]))
        result = report.to_json()
        inputs["genus"] = args.genus
        certificates["formula"] = f"2g + r - 1 = 2*{args.genus} + {report.punctures} - 1"
    if args.figure:
        series = _figure_series(args, ring, ns, ds)
        from .plotting import plot_cokernel_orders

        plot_cokernel_orders(series, ring.p, args.figure, title=describe_ring(ring))
        inputs["figure"] = args.figure
    return inputs, result, certificates


def _figure_series(args, ring, ns, ds) -> dict[int, list[tuple[int, int]]]:
    # plot every window up to the largest requested one
    dmax = max(ds)
    cells = _grid(args, [(n, d) for n in ns for d in range(0, dmax + 1)])
    series: dict[int, list[tuple[int, int]]] = {}
    for (n, d), cell in cells.items():
        series.setdefault(n, []).append((d, cell["order"]))
    return series


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


def cmd_group(args) -> tuple[dict, dict, dict]:
    inputs = _inputs(args)
    certificates: dict[str, Any] = {}
    if args.command == "heisenberg":
        orders = [int(o) for o in args.orders.split(",")] if args.orders else [args.p**args.m]
        B = heisenberg_product(orders)
        comm = commutator_subgroup(B)
        inputs.update(p=args.p, orders=orders, m=args.m)
        result = {"order": B.order, "commutator_order": comm.order, "commutator_type": list(abelianization(comm).factors)}
        certificates["abelianization"] = list(abelianization(B).factors)
        return inputs, result, certificates
    G = parse_group(args.group)
    inputs["group"] = args.group
    if args.command == "quasip":
        inputs["p"] = args.p
        Q = quasi_p_part(G, args.p)
        result = {"order": Q.order, "index": G.order // Q.order, "quasi_p": Q.order == G.order}
        certificates["generators"] = [format_perm(g) for g in Q.generators]
    elif args.command == "perfect":
        C = commutator_subgroup(G)
        result = {"perfect": C.order == G.order, "commutator_order": C.order, "abelianization": list(abelianization(G).factors)}
        certificates["group"] = group_summary(G)
    elif args.command == "minnormal":
        mins = minimal_normal_subgroups(G)
        result = {"minimal_normal": [m.to_json() for m in mins]}
    else:  # mingen
        inputs["cap_k"] = args.cap_k
        d, gens = min_generators(G, cap_k=args.cap_k)
        result = {"min_generators": d}
        certificates["generating_set"] = [format_perm(g) for g in gens]
    result.setdefault("group_order", G.order)
    return inputs, result, certificates


# ---------------------------------------------------------------------------
# embed
# ---------------------------------------------------------------------------


def cmd_embed(args) -> tuple[dict, dict, dict]:
    Gamma = parse_group(args.group)
    inputs = _inputs(args, group=args.group, p=getattr(args, "p", None))
    if args.command == "abhyankar":
        inputs.update(genus=args.genus, punctures=args.punctures)
        check = abhyankar_quotient_check(Gamma, args.p, args.genus, args.punctures)
        cert = check.to_json()
        result = {"accepted": cert.pop("accepted"), "bound": cert.pop("bound")}
        return inputs, result, cert
    N = _subgroup(Gamma, args.kernel, "H")
    inputs["kernel"] = args.kernel
    ep = EmbeddingProblem.from_normal_subgroup(Gamma, N)
    if args.command == "reduce":
        tree = reduction_tree(ep, args.p)
        data = tree.to_json()
        result = {"leaf_cases": data["leaf_cases"], "leaf_order_product": data["leaf_order_product"], "depth": data["depth"]}
        return inputs, result, {"tree": data["root"]}
    # splitify
    Gp = _subgroup(Gamma, args.gp, "Gp")
    inputs["gp"] = args.gp
    red = splitify(ep, Gp)
    cert = red.certificate()
    result = {"Gamma_prime_order": cert.pop("Gamma_prime_order"), "kernel_order": red.problem.H.order, "split": True}
    return inputs, result, cert


# ---------------------------------------------------------------------------
# patch
# ---------------------------------------------------------------------------


def cmd_patch(args) -> tuple[dict, dict, dict]:
    Gamma = parse_group(args.group)
    inputs = _inputs(args, group=args.group)
    if args.command == "induce":
        G = _subgroup(Gamma, args.subgroup, "G")
        inputs["subgroup"] = args.subgroup
        W = induce(Gamma, G, regular_gset(G)).gset
        result = {"size": W.size, "index": Gamma.order // G.order, "orbits": len(W.orbits())}
        certificates = {"isomorphic_to_regular": is_isomorphic_gsets(W, regular_gset(Gamma))}
        return inputs, result, certificates
    G = _subgroup(Gamma, args.G, "G")
    H = _subgroup(Gamma, args.H, "H")
    inputs.update(G=args.G, H=args.H)
    pc = patch_components(PatchDiagram(Gamma, G, H, regular_gset(G), regular_gset(H)))
    result = pc.to_json()
    return inputs, result, {"generated_generators": [format_perm(g) for g in pc.generated.generators]}


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------


def _fibers(text: str) -> tuple[tuple[int, ...], ...]:
    try:
        return tuple(tuple(int(e) for e in fiber.split(",") if e.strip()) for fiber in text.split(";") if fiber.strip())
    except ValueError:
        raise UsageError(f"bad ramification data {text!r}; use e.g. '2;2;2;2' or '3,3;5'") from None


def cmd_curve(args) -> tuple[dict, dict, dict]:
    inputs = _inputs(args, p=args.p)
    if args.command == "hurwitz":
        rp = RamificationProfile(args.degree, args.base_genus, _fibers(args.fibers), args.p)
        inputs.update(degree=args.degree, base_genus=args.base_genus, fibers=args.fibers)
        genus = tame_hurwitz_genus(rp)
        return inputs, {"genus": genus}, {"different_degree": rp.different_degree, "hurwitz_rhs": rp.hurwitz_rhs(),
                                           "genus_fraction": str(hurwitz_genus_fraction(rp))}
    if args.command == "lemma67":
        inputs.update(n=args.n, q=args.p**args.n if args.n >= 1 else None)
        cert = lemma67_certificate(args.p, args.n).to_json()
        result = {"bound": cert.pop("bound"), "bound_ceiling": cert.pop("bound_ceiling")}
        return inputs, result, cert
    G = parse_group(args.group)
    inputs.update(group=args.group, l=args.l, rule=args.rule)
    target = genus_needed_for(G, args.l, args.p, rule=args.rule)
    return inputs, target.to_json(), {"group_order": G.order}


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="recorded for reproducibility (no randomness is used)")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    p.add_argument("--no-timing", action="store_true", help="report timing_ms as null (byte-stable output)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aswlab", description="Witt vectors, ASW cokernels, quasi-p groups and patching models.")
    parser.add_argument("--version", action="version", version=f"aswlab {__version__}")
    areas = parser.add_subparsers(dest="area", required=True, parser_class=_Parser)

    witt = areas.add_parser("witt", help="Witt vector arithmetic").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("add", "mul", "pmap"):
        sp = witt.add_parser(name)
        sp.add_argument("--ring", required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--u", required=True)
        if name != "pmap":
            sp.add_argument("--v", required=True)
        sp.add_argument("--mode", choices=[GEOMETRIC, ARITHMETIC], default=GEOMETRIC)
        _common(sp)
        sp.set_defaults(func=cmd_witt)

    asw = areas.add_parser("asw", help="Artin-Schreier-Witt cokernels").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("cokernel", "covers", "report"):
        sp = asw.add_parser(name)
        sp.add_argument("--ring", required=True)
        sp.add_argument("--n", default="1", help="Witt length, or a range a..b (cokernel only)")
        sp.add_argument("--deg", required=True, help="window degree d, or a range a..b (cokernel only)")
        sp.add_argument("--mode", choices=[GEOMETRIC, ARITHMETIC], default=GEOMETRIC)
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for grids")
        if name != "covers":
            sp.add_argument("--figure", help="write a plot of log_p |C_d| against d to this file")
        else:
            sp.set_defaults(figure=None)
        if name == "report":
            sp.add_argument("--genus", type=int, default=0)
        _common(sp)
        sp.set_defaults(func=cmd_asw)

    grp = areas.add_parser("group", help="finite group computations").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("quasip", "perfect", "minnormal", "mingen"):
        sp = grp.add_parser(name)
        sp.add_argument("--group", required=True)
        if name == "quasip":
            sp.add_argument("--p", type=int, required=True)
        if name == "mingen":
            sp.add_argument("--cap-k", type=int, default=6)
        _common(sp)
        sp.set_defaults(func=cmd_group)
    sp = grp.add_parser("heisenberg")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--orders", help="comma-separated cyclic orders of A (p-powers)")
    _common(sp)
    sp.set_defaults(func=cmd_group)

    emb = areas.add_parser("embed", help="embedding problems").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("reduce", "abhyankar", "splitify"):
        sp = emb.add_parser(name)
        sp.add_argument("--group", required=True, help="Gamma (or G for abhyankar)")
        if name != "splitify":
            sp.add_argument("--p", type=int, required=True)
        if name in ("reduce", "splitify"):
            sp.add_argument("--kernel", required=True, help="generators of the normal subgroup H")
        if name == "splitify":
            sp.add_argument("--gp", required=True, help="generators of the subgroup G'")
        if name == "abhyankar":
            sp.add_argument("--genus", type=int, default=0)
            sp.add_argument("--punctures", type=int, default=1)
        _common(sp)
        sp.set_defaults(func=cmd_embed)

    pat = areas.add_parser("patch", help="finite patching model").add_subparsers(dest="command", required=True, parser_class=_Parser)
    sp = pat.add_parser("components")
    sp.add_argument("--group", required=True)
    sp.add_argument("--G", required=True, help="generators of G")
    sp.add_argument("--H", required=True, help="generators of H")
    _common(sp)
    sp.set_defaults(func=cmd_patch)
    sp = pat.add_parser("induce")
    sp.add_argument("--group", required=True)
    sp.add_argument("--subgroup", required=True, help="generators of G; the regular G-set is induced")
    _common(sp)
    sp.set_defaults(func=cmd_patch)

    rep = areas.add_parser("replay", help="re-run the command recorded in a JSON report")
    rep.add_argument("--report", required=True, help="path of a report, or - for standard input")
    _common(rep)

    cur = areas.add_parser("curve", help="genus computations").add_subparsers(dest="command", required=True, parser_class=_Parser)
    sp = cur.add_parser("hurwitz")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--base-genus", type=int, default=0)
    sp.add_argument("--fibers", default="", help="ramification indices: fibers separated by ';', points by ','")
    sp.add_argument("--p", type=int)
    _common(sp)
    sp.set_defaults(func=cmd_curve)
    sp = cur.add_parser("lemma67")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    _common(sp)
    sp.set_defaults(func=cmd_curve)
    sp = cur.add_parser("genus-for")
    sp.add_argument("--group", required=True, help="the prime-to-p group H")
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--rule", choices=[SURFACE_RULE, STRICT_RULE], default=SURFACE_RULE)
    _common(sp)
    sp.set_defaults(func=cmd_curve)
    return parser


def argv_from_report(report: dict) -> list[str]:
    """Command line that reproduces a report from its ``command`` and ``inputs`` blocks.

    Derived entries (q, and p when a ring descriptor fixes it) are skipped.
    """
    try:
        area, command = report["command"].split()
        inputs = report["inputs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("report has no command/inputs block to replay") from exc
    argv = [area, command]
    for key in sorted(inputs):
        value = inputs[key]
        if value is None or key == "q" or (key == "p" and "ring" in inputs):
            continue
        flag = "--deg" if (area == "asw" and key == "d") else "--" + key.replace("_", "-")
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        argv += [flag, str(value)]
    return argv


def _load_report(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read report {path!r}: {exc}") from exc


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (CapExceeded, NotInWindow)):
        return 3
    return 2


def _scalar(v: Any) -> str:
    return json.dumps(v) if v is None or isinstance(v, bool) else str(v)


def _render_pretty(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    pretty = "--pretty" in argv
    no_timing = "--no-timing" in argv
    try:
        args = build_parser().parse_args(argv)
        if args.area == "replay":
            replayed = argv_from_report(_load_report(args.report))
            args = build_parser().parse_args(replayed + [a for a in argv if a in ("--pretty", "--no-timing")])
        inputs, result, certificates = args.func(args)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": f"{args.area} {args.command}",
            "inputs": inputs,
            "result": result,
            "certificates": certificates,
        }
        code = 0
    except (AswlabError, ValueError, ZeroDivisionError) as exc:
        kind = getattr(exc, "kind", "input_error")
        payload = {"schema_version": SCHEMA_VERSION, "error": {"kind": kind, "message": str(exc)}}
        code = _exit_code(exc)
    payload["timing_ms"] = None if no_timing else round((time.perf_counter() - start) * 1000, 3)
    if pretty:
        out.write("\n".join(_render_pretty(payload)) + "\n")
    else:
        out.write(dumps(payload) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
