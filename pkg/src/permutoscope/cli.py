"""Command line entry point: ``permutoscope build|analyze|check|export``.

Exit codes: 0 success, 1 failed check, 2 usage error, 3 size-guard refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .checks import SUITES, check_suite
from .flats import flats
from .graph import GraphSpecError, cayley_graph, parse_graph
from .homology import homology
from .identify import cluster_permutohedron, graphicahedron, inflated_flag_poset, partial_flag_poset
from .limits import SizeGuardError
from .poset import FinitePoset, PosetError, core, skeleton

FAMILIES = ("cluster-perm", "graphicahedron", "flats", "cayley", "partial-flag", "inflated-flag")
NEEDS_GRAPH = {"cluster-perm", "graphicahedron", "flats", "cayley", "inflated-flag"}
NEEDS_BOXES = {"partial-flag", "inflated-flag"}


class UsageError(Exception):
    pass


def _boxes(text):
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"boxes must be comma separated integers, got {text!r}") from None
    if not values or any(k < 1 for k in values):
        raise argparse.ArgumentTypeError("box sizes must be positive")
    return tuple(values)


def write_atomic(path, text):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text, out):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=None, separators=(",", ":"), sort_keys=False) + "\n"


def _load_poset(path):
    with open(path, encoding="utf-8") as fh:
        return FinitePoset.from_json(json.load(fh))


def build_object(args):
    fam = args.family
    if fam in NEEDS_GRAPH and not args.graph:
        raise UsageError(f"--family {fam} needs --graph")
    if fam in NEEDS_BOXES and not args.boxes:
        raise UsageError(f"--family {fam} needs --boxes")
    if fam not in NEEDS_BOXES and args.boxes:
        raise UsageError(f"--boxes does not apply to --family {fam}")
    if args.reduced and fam not in NEEDS_BOXES:
        raise UsageError("--reduced applies only to flag families")
    if args.stat == "conn" and fam != "graphicahedron":
        raise UsageError("--stat conn is only defined for the graphicahedron")
    if fam == "partial-flag" and args.graph:
        raise UsageError("--family partial-flag takes --boxes only")
    g = parse_graph(args.graph) if args.graph else None
    force = args.force_large
    if fam == "cayley":
        cay, perms = cayley_graph(g, force_large=force)
        return cay, perms
    if fam == "flats":
        P = flats(g)
    elif fam == "cluster-perm":
        P = cluster_permutohedron(g, force)
    elif fam == "graphicahedron":
        P = graphicahedron(g, force)
    elif fam == "partial-flag":
        P = partial_flag_poset(args.boxes, args.reduced, force)
    else:
        if len(args.boxes) != g.n:
            raise UsageError(f"--boxes needs {g.n} entries for this graph")
        P = inflated_flag_poset(g, args.boxes, args.reduced, force)
    if args.max is not None:
        P = skeleton(P, args.stat, args.max)
    return P, None


def cmd_build(args):
    obj, perms = build_object(args)
    if args.family == "cayley":
        labels = ["".join(map(str, p)) if len(p) < 10 else " ".join(map(str, p)) for p in perms]
        text = obj.to_dot(labels) if args.format == "dot" else _dump(obj.to_json(labels))
    elif args.format == "dot":
        text = obj.to_dot(args.family)
    elif args.family == "flats" and args.max is None:
        text = _dump(obj.to_flats_json())
    else:
        text = _dump(obj.to_json())
    _emit(text, args.out)
    if args.out:
        sys.stderr.write(f"wrote {args.out}\n")
    return 0


def cmd_analyze(args):
    P = _load_poset(args.poset)
    if args.what == "homology":
        rep = homology(P, reduced=args.reduced, drop_top=args.drop_top, drop_bottom=args.drop_bottom)
        out = rep.to_json()
    elif args.what == "core":
        C, trace = core(P, rng=args.seed)
        out = {
            "size": P.n,
            "core_size": C.n,
            "trace": [{"id": r.element, "label": str(r.label), "kind": r.kind} for r in trace],
            "core": C.to_json(),
        }
    else:
        out = {"size": P.n, "covers": len(P.covers), "graded": P.is_graded}
        if P.is_graded:
            out["rank_profile"] = list(P.profile())
        for name in P.stats:
            out[f"{name}_profile"] = list(P.profile(name))
    _emit(_dump(out), args.out)
    return 0


def cmd_check(args):
    g = parse_graph(args.graph) if args.graph else None
    if args.suite != "flags" and g is None:
        raise UsageError(f"check {args.suite} needs --graph")
    res = check_suite(args.suite, g, boxes=args.boxes, seed=args.seed)
    print(res.summary())
    if args.json:
        payload = res.to_json()
        report = getattr(res, "report", None)
        if report is not None:
            payload["report"] = report.to_json()
        write_atomic(args.json, _dump(payload))
    return 0 if res.ok else 1


def cmd_export(args):
    if bool(args.poset) == bool(args.graph):
        raise UsageError("export needs exactly one of --poset or --graph")
    if args.poset:
        P = _load_poset(args.poset)
        text = P.to_dot(Path(args.poset).stem) if args.format == "dot" else _dump(P.to_json())
    else:
        g = parse_graph(args.graph)
        text = g.to_dot() if args.format == "dot" else _dump(g.to_json())
    _emit(text, args.out)
    return 0


def make_parser():
    p = argparse.ArgumentParser(prog="permutoscope", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", help="construct a poset or graph and write it as JSON or DOT")
    b.add_argument("--family", required=True, choices=FAMILIES)
    b.add_argument("--graph", help="path:n, cycle:n, star:k, complete:n, multipartite:k1,..., file:PATH")
    b.add_argument("--boxes", type=_boxes, help="box sizes k1,...,ks")
    b.add_argument("--reduced", action="store_true", help="reduced flag poset instead of the raw one")
    b.add_argument("--stat", default="rank", choices=("rank", "conn"), help="statistic for --max")
    b.add_argument("--max", type=int, help="keep elements with statistic <= MAX (skeleton)")
    b.add_argument("--format", default="json", choices=("json", "dot"))
    b.add_argument("--out")
    b.add_argument("--force-large", action="store_true")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="homology, core or profile of a poset JSON file")
    a.add_argument("what", choices=("homology", "core", "profile"))
    a.add_argument("--poset", required=True)
    a.add_argument("--drop-top", action="store_true")
    a.add_argument("--drop-bottom", action="store_true")
    a.add_argument("--reduced", action="store_true", help="reduced homology")
    a.add_argument("--seed", type=int, help="random beat order for core")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="run an invariant suite")
    c.add_argument("suite", choices=tuple(SUITES))
    c.add_argument("--graph")
    c.add_argument("--boxes", type=_boxes)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", help="also write the result as JSON")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("export", help="convert a poset file or graph spec to DOT or JSON")
    e.add_argument("--poset")
    e.add_argument("--graph")
    e.add_argument("--format", default="dot", choices=("json", "dot"))
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeGuardError as exc:
        sys.stderr.write(f"permutoscope: {exc}\n")
        return 3
    except (UsageError, GraphSpecError, PosetError, ValueError, OSError) as exc:
        sys.stderr.write(f"permutoscope: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
