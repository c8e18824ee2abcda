"""Command-line tools for box intersection graphs, posets and certificates.

Exit codes: 0 when the checked property holds, 1 when it is violated (a
witness is printed), 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .bounds import KttPresent, certify_main_theorem
from .constructions import (
    GeneratorBroken,
    dyadic_k22free_generator,
    lift_incidence_to_boxes3d,
    lines3d_generator,
)
from .forbidden import find_ktt
from .geometry import to_json_number
from .graph import BoxFamily, Graph, IncidenceConfig, dumps, incidence_graph, intersection_graph
from .poset import EmbeddingCert, Poset, build_pg, check_realizer, eliminate_nesting, phi_embedding
from .experiments import COLUMNS, SUITES, run_suite
from .separation import check_certificate

OK, VIOLATED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(args, obj) -> None:
    text = dumps(obj)
    if getattr(args, "out", None):
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_graph_build(args):
    fam = BoxFamily.from_json(_load(args.boxes))
    _emit(args, intersection_graph(fam, args.method).to_json())
    return OK


def cmd_graph_incidence(args):
    _emit(args, incidence_graph(IncidenceConfig.from_json(_load(args.config))).to_json())
    return OK


def cmd_check_ktt(args):
    g = Graph.from_json(_load(args.graph))
    w = find_ktt(g, args.t)
    if w is None:
        _emit(args, {"result": "free", "t": args.t})
        return OK
    _emit(args, {"result": "witness", "t": args.t, **w.to_json()})
    return VIOLATED


def cmd_check_sepcert(args):
    g = Graph.from_json(_load(args.graph))
    ok, bad = check_certificate(g, EmbeddingCert.from_json(_load(args.cert)))
    if ok:
        _emit(args, {"result": "valid"})
        return OK
    _emit(args, {"result": "violation", "edges": [list(e) for e in bad]})
    return VIOLATED


def cmd_check_realizer(args):
    p = Poset.from_json(_load(args.poset))
    ok, bad = check_realizer(p, EmbeddingCert.from_json(_load(args.cert)))
    if ok:
        _emit(args, {"result": "valid"})
        return OK
    _emit(args, {"result": "violation", "pair": [str(x) for x in bad]})
    return VIOLATED


def _gen_param(args, name, default=None):
    params = json.loads(args.params) if args.params else {}
    value = getattr(args, name)
    if value is None:
        value = params.get(name, default)
    if value is None:
        raise InputError(f"missing parameter {name!r} (flag --{name} or --params)")
    return value


def cmd_gen_lift3d(args):
    _emit(args, lift_incidence_to_boxes3d(IncidenceConfig.from_json(_load(args.config))).to_json())
    return OK


def cmd_gen_lines3d(args):
    config, g = lines3d_generator(int(_gen_param(args, "k")))
    lines = [{"point": [to_json_number(c) for c in p], "direction": [to_json_number(c) for c in v]}
             for p, v in config.lines]
    _emit(args, {"lines": lines, "graph": g.to_json()})
    return OK


def cmd_gen_dyadic(args):
    try:
        windows = _gen_param(args, "windows", False) or None
        config = dyadic_k22free_generator(int(_gen_param(args, "m")), windows)
    except GeneratorBroken as exc:
        _emit(args, {"result": "broken", "detail": str(exc)})
        return VIOLATED
    _emit(args, config.to_json())
    return OK


def cmd_poset_build(args):
    _emit(args, build_pg(Graph.from_json(_load(args.graph))).to_json())
    return OK


def cmd_poset_phi(args):
    _emit(args, phi_embedding(IncidenceConfig.from_json(_load(args.config))).to_json())
    return OK


def cmd_poset_eliminate(args):
    _emit(args, eliminate_nesting(IncidenceConfig.from_json(_load(args.config))).to_json())
    return OK


def cmd_certify_main(args):
    fam = BoxFamily.from_json(_load(args.boxes))
    try:
        report = certify_main_theorem(fam, args.t)
    except KttPresent as exc:
        w = find_ktt(intersection_graph(fam), args.t)
        _emit(args, {"result": "ktt_present", "detail": str(exc), **w.to_json()})
        return VIOLATED
    _emit(args, report.to_json())
    return OK if report.holds else VIOLATED


def _sweep_outputs(suite, seed, fmt, timing, params):
    """File name -> text for one sweep."""
    rows = run_suite(suite, seed, timing=timing, **params)
    files = {}
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        files[f"{suite}.csv"] = buf.getvalue()
    else:
        files[f"{suite}.json"] = dumps(rows)
    dat = [f"# {suite}: n e density"] + [f"{r['n']} {r['e']} {r['density']}" for r in rows]
    files[f"{suite}.dat"] = "\n".join(dat) + "\n"
    return files


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def cmd_experiment_sweep(args):
    params = json.loads(args.params) if args.params else {}
    if not isinstance(params, dict):
        raise InputError("--params must be a JSON object")
    files = _sweep_outputs(args.suite, args.seed, args.format, args.timing, params)
    out = Path(args.out)
    for name, text in files.items():
        write_atomic(out / name, text)
    manifest = {
        "subcommand": "experiment sweep",
        "parameters": {"suite": args.suite, "format": args.format, "timing": args.timing, "params": params},
        "seed": args.seed,
        "outputs": {name: _sha256(text) for name, text in files.items()},
        "version": __version__,
    }
    write_atomic(out / f"{args.suite}.manifest.json", dumps(manifest))
    return OK


def cmd_experiment_replay(args):
    """Rerun a sweep manifest and compare output hashes."""
    manifest = _load(args.manifest)
    try:
        p = manifest["parameters"]
        files = _sweep_outputs(p["suite"], manifest["seed"], p["format"], p["timing"], p["params"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed manifest: {exc}") from exc
    got = {name: _sha256(text) for name, text in files.items()}
    if args.out:
        for name, text in files.items():
            write_atomic(Path(args.out) / name, text)
    mismatched = sorted(k for k in set(got) | set(manifest["outputs"]) if got.get(k) != manifest["outputs"].get(k))
    sys.stdout.write(dumps({"result": "identical" if not mismatched else "differs", "mismatched": mismatched}))
    return OK if not mismatched else VIOLATED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boxkst", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    top = parser.add_subparsers(dest="group", required=True)

    def sub(group, name, func, **kw):
        p = group.add_parser(name, **kw)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    graph = top.add_parser("graph").add_subparsers(dest="cmd", required=True)
    p = sub(graph, "build", cmd_graph_build, help="intersection graph of a box family")
    p.add_argument("--boxes", required=True)
    p.add_argument("--method", choices=["sweep", "brute"], default="sweep")
    p = sub(graph, "incidence", cmd_graph_incidence, help="point-rectangle incidence graph")
    p.add_argument("--config", required=True)

    check = top.add_parser("check").add_subparsers(dest="cmd", required=True)
    p = sub(check, "ktt", cmd_check_ktt, help="search for K_{t,t}")
    p.add_argument("--graph", required=True)
    p.add_argument("--t", type=int, required=True)
    p = sub(check, "sepcert", cmd_check_sepcert, help="verify a separation certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", required=True)
    p = sub(check, "realizer", cmd_check_realizer, help="verify a dominance realizer")
    p.add_argument("--poset", required=True)
    p.add_argument("--cert", required=True)

    gen = top.add_parser("gen").add_subparsers(dest="cmd", required=True)
    p = sub(gen, "lift3d", cmd_gen_lift3d, help="lift a planar configuration to boxes in R^3")
    p.add_argument("--config", required=True)
    p.add_argument("--params", help="unused; accepted for a uniform gen interface")
    p = sub(gen, "lines3d", cmd_gen_lines3d, help="K_{2,2}-free lines in R^3")
    p.add_argument("--k", type=int)
    p.add_argument("--params", help='JSON object, e.g. {"k": 3}')
    p = sub(gen, "dyadic", cmd_gen_dyadic, help="dense K_{2,2}-free point-rectangle configuration")
    p.add_argument("--m", type=int)
    p.add_argument("--windows", type=int, nargs="+")
    p.add_argument("--params", help='JSON object, e.g. {"m": 6, "windows": [2, 2, 2]}')

    poset = top.add_parser("poset").add_subparsers(dest="cmd", required=True)
    p = sub(poset, "build", cmd_poset_build, help="bipartite poset P(G)")
    p.add_argument("--graph", required=True)
    p = sub(poset, "phi", cmd_poset_phi, help="4D realizer of an incidence configuration")
    p.add_argument("--config", required=True)
    p = sub(poset, "eliminate-nesting", cmd_poset_eliminate, help="remove nested rectangles")
    p.add_argument("--config", required=True)

    certify = top.add_parser("certify").add_subparsers(dest="cmd", required=True)
    p = sub(certify, "main", cmd_certify_main, help="edge bound for a K_{t,t}-free box family")
    p.add_argument("--boxes", required=True)
    p.add_argument("--t", type=int, required=True)

    exp = top.add_parser("experiment").add_subparsers(dest="cmd", required=True)
    p = exp.add_parser("sweep", help="run an experiment suite")
    p.set_defaults(func=cmd_experiment_sweep)
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--params", help="JSON object of suite parameters")
    p.add_argument("--timing", action="store_true", help="fill the wall_ms column")
    p = exp.add_parser("replay", help="rerun a sweep manifest and compare output hashes")
    p.set_defaults(func=cmd_experiment_replay)
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", help="also write the regenerated files here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, KeyError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
