"""Command-line entry point: ``pathpers <command> ...``.

Every command writing ``--out PATH`` also writes ``PATH.manifest.json``
(command, parameters, seeds, input hashes, version).  Exit codes: 0 on
success, 1 when an experiment check fails, 2 on invalid input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from joblib import Parallel, delayed

from . import __version__
from .diagrams import bottleneck, bottleneck_matrix, diagrams_equal
from .dowker import dowker_diagram
from .metrics import Dendrogram, cut_dendrogram, network_distance_exact, network_distance_maps, single_linkage
from .network import (
    Network,
    NetworkValidationError,
    XorShift64Star,
    cycle_network,
    format_matrix,
    format_number,
    load_network,
    parse_matrix,
    preprocess_use_table,
    random_network,
    transpose,
)
from .persistence import DEFAULT_MAX_DIM, PersistenceDiagram, ppd

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def write_manifest(out, command: str, params: dict, seeds=(), inputs=()) -> None:
    manifest = {
        "command": command,
        "parameters": params,
        "seeds": list(seeds),
        "inputs": {str(p): _sha256(Path(p)) for p in inputs},
        "version": __version__,
    }
    _write(str(out) + ".manifest.json", _dump_json(manifest))


def diagram_plot_data(dgm: PersistenceDiagram) -> str:
    return "".join(f"{format_number(b)} {format_number(d)}\n" for b, d in dgm)


def dendrogram_segments(dend: Dendrogram) -> str:
    """``x0 y0 x1 y1`` segments of the usual U-shaped dendrogram drawing."""
    n = len(dend.leaves)
    if n == 0:
        return ""
    order: list[int] = []

    def walk(c):
        if c < n:
            order.append(c)
        else:
            a, b, _ = dend.merges[c - n]
            walk(a)
            walk(b)

    walk(n + len(dend.merges) - 1)
    x = {leaf: Fraction(pos) for pos, leaf in enumerate(order)}
    y = {leaf: Fraction(0) for leaf in range(n)}
    lines = []
    for k, (a, b, h) in enumerate(dend.merges):
        c = n + k
        for child in (a, b):
            lines.append((x[child], y[child], x[child], h))
        lines.append((x[a], h, x[b], h))
        x[c] = (x[a] + x[b]) / 2
        y[c] = h
    return "".join(" ".join(format_number(v) for v in seg) + "\n" for seg in lines)


def _seed_stream(seed: int):
    rng = XorShift64Star(seed)
    while True:
        yield rng.next_u64()


def _run(jobs: int, fn, items):
    if jobs in (None, 1):
        return [fn(*item) for item in items]
    return Parallel(n_jobs=jobs)(delayed(fn)(*item) for item in items)


def _load(path) -> Network:
    try:
        return load_network(path)
    except FileNotFoundError as exc:
        raise InputError(f"{path}: no such file") from exc
    except NetworkValidationError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _matrix_text(net: Network) -> list[list[str]]:
    return [[format_number(w) for w in row] for row in net.weights]


# --- commands ------------------------------------------------------------


def cmd_ppd(args) -> int:
    net = _load(args.input)
    dgm = ppd(net, args.dim, max_dim=args.max_dim)
    _emit_diagram(args, dgm, "ppd")
    return EXIT_OK


def cmd_dowker(args) -> int:
    net = _load(args.input)
    dgm = dowker_diagram(net, args.dim)
    _emit_diagram(args, dgm, "dowker")
    return EXIT_OK


def _emit_diagram(args, dgm, command):
    text = dgm.dumps()
    if args.out:
        _write(args.out, text)
        params = {"input": str(args.input), "dim": args.dim}
        write_manifest(args.out, command, params, inputs=[args.input])
    else:
        sys.stdout.write(text)
    if args.plot_data:
        _write(args.plot_data, diagram_plot_data(dgm))


def cmd_bottleneck(args) -> int:
    try:
        a = PersistenceDiagram.loads(Path(args.first).read_text())
        b = PersistenceDiagram.loads(Path(args.second).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    print(format_number(bottleneck(a, b)))
    return EXIT_OK


def _transposition_case(n: int, seed: int, dim: int) -> dict:
    net = random_network(n, seed)
    d = ppd(net, dim)
    dt = ppd(transpose(net), dim)
    dist = bottleneck(d, dt)
    return {
        "n": n,
        "seed": seed,
        "bottleneck": format_number(dist),
        "equal": diagrams_equal(d, dt),
        "points": len(d),
    }


def cmd_transposition_suite(args) -> int:
    if args.nmin < 3 or args.nmax < args.nmin:
        raise InputError("sizes must satisfy 3 <= nmin <= nmax")
    seeds = _seed_stream(args.seed)
    items = [(n, next(seeds), args.dim) for n in range(args.nmin, args.nmax + 1) for _ in range(args.per_n)]
    results = _run(args.jobs, _transposition_case, items)
    failures = [r for r in results if r["bottleneck"] != "0" or not r["equal"]]
    summary = {"networks": len(results), "nonzero": len(failures)}
    print(f"transposition suite: {len(results)} networks, {len(failures)} with nonzero bottleneck distance")
    _emit_suite(args, "transposition-suite", results, summary, [args.seed])
    return EXIT_FAIL if failures else EXIT_OK


def _dowker_case(net: Network, seed, dim: int) -> dict:
    a = ppd(net, dim)
    b = dowker_diagram(net, dim)
    out = {
        "n": net.n,
        "seed": seed,
        "agree": diagrams_equal(a, b),
        "ppd": a.to_dict()["points"],
        "dowker": b.to_dict()["points"],
    }
    if not out["agree"]:
        out["matrix"] = _matrix_text(net)
        out["bottleneck"] = format_number(bottleneck(a, b))
    return out


def cmd_dowker_compare(args) -> int:
    if args.input:
        items = [(_load(args.input), None, args.dim)]
    else:
        if args.n < 2:
            raise InputError("--n must be at least 2")
        seeds = _seed_stream(args.seed)
        items = []
        for _ in range(args.count):
            s = next(seeds)
            items.append((random_network(args.n, s), s, args.dim))
    results = _run(args.jobs, _dowker_case, items)
    agree = sum(r["agree"] for r in results)
    summary = {"networks": len(results), "agreements": agree, "agreement_rate": format_number(Fraction(agree, len(results)))}
    print(f"dowker compare: {agree}/{len(results)} agree")
    for r in results:
        if not r["agree"]:
            print(f"  disagreement (seed={r['seed']}): ppd={r['ppd']} dowker={r['dowker']}")
    _emit_suite(args, "dowker-compare", results, summary, [args.seed], inputs=[args.input] if args.input else [])
    # disagreement is only a failure where agreement is expected (random 3-node networks)
    expected = not args.input and args.n == 3
    return EXIT_FAIL if expected and agree < len(results) else EXIT_OK


def _cycle_case(n: int) -> dict:
    dgm = ppd(cycle_network(n), 1)
    expected = PersistenceDiagram(1, ((1, math.ceil(n / 2)),))
    return {"n": n, "points": dgm.to_dict()["points"], "matches": dgm == expected}


def cmd_cycle_suite(args) -> int:
    if args.nmin < 3 or args.nmax < args.nmin:
        raise InputError("sizes must satisfy 3 <= nmin <= nmax")
    results = _run(args.jobs, _cycle_case, [(n,) for n in range(args.nmin, args.nmax + 1)])
    for r in results:
        pts = ", ".join(f"({b}, {d})" + (f"x{m}" if m > 1 else "") for b, d, m in r["points"])
        print(f"n={r['n']:3d}  Dgm_1 = {{{pts}}}  {'ok' if r['matches'] else 'MISMATCH'}")
    bad = [r for r in results if not r["matches"]]
    _emit_suite(args, "cycle-suite", results, {"sizes": len(results), "mismatches": len(bad)}, [])
    return EXIT_FAIL if bad else EXIT_OK


def _stability_case(n: int, seed_x: int, seed_y: int, dim: int) -> dict:
    x = random_network(n, seed_x)
    y = random_network(n, seed_y)
    return _stability_pair(x, y, dim) | {"seeds": [seed_x, seed_y]}


def _stability_pair(x: Network, y: Network, dim: int) -> dict:
    db = bottleneck(ppd(x, dim), ppd(y, dim))
    dn = network_distance_exact(x, y)
    dn_maps = network_distance_maps(x, y)
    return {
        "bottleneck": format_number(db),
        "twice_dn": format_number(2 * dn),
        "holds": db <= 2 * dn,
        "dn_routes_agree": dn == dn_maps,
    }


def cmd_stability_suite(args) -> int:
    if not 1 <= args.n <= 4:
        raise InputError("exhaustive network distance supports 1 <= n <= 4")
    seeds = _seed_stream(args.seed)
    items = []
    for _ in range(args.pairs):
        items.append((args.n, next(seeds), next(seeds), args.dim))
    results = _run(args.jobs, _stability_case, items)
    violations = [r for r in results if not r["holds"] or not r["dn_routes_agree"]]
    print(f"stability suite: {len(results)} pairs, {len(violations)} violations")
    _emit_suite(args, "stability-suite", results, {"pairs": len(results), "violations": len(violations)}, [args.seed])
    return EXIT_FAIL if violations else EXIT_OK


def _econ_year(path: Path, dim: int):
    rows, labels = parse_matrix(path.read_text())
    net = preprocess_use_table(rows, labels)
    return net, ppd(net, dim)


def cmd_econ(args) -> int:
    folder = Path(args.dir)
    if not folder.is_dir():
        raise InputError(f"{folder}: not a directory")
    files = sorted(p for p in folder.iterdir() if p.suffix in (".mat", ".txt") and p.is_file())
    if len(files) < 2:
        raise InputError(f"{folder}: need at least two use tables (*.mat or *.txt)")
    names, diagrams, errors = [], [], []
    for path in files:
        try:
            _, dgm = _econ_year(path, args.dim)
        except (NetworkValidationError, ValueError) as exc:
            errors.append(f"{path.name}: {exc}")
            continue
        names.append(path.stem)
        diagrams.append(dgm)
    if errors:
        raise InputError("; ".join(errors))
    matrix = bottleneck_matrix(diagrams)
    dend = single_linkage(matrix, names)
    cuts = {}
    for h in args.cut:
        cuts[h] = [list(c) for c in cut_dendrogram(dend, Fraction(h))]
    report = {"cuts": cuts}
    if "2008" in names:
        isolated = ("2008",) in cut_dendrogram(dend, Fraction("0.014"))
        report["isolates_2008_at_0.014"] = isolated
        print(f"cut at 0.014 isolates 2008: {isolated}")
    out = Path(args.out)
    stem = out.with_suffix("")
    _write(out, dend.dumps())
    _write(f"{stem}.matrix.txt", format_matrix(matrix, names))
    _write(f"{stem}.diagrams.json", _dump_json({name: d.to_dict() for name, d in zip(names, diagrams)}))
    _write(f"{stem}.edges.txt", dend.edge_list())
    _write(f"{stem}.cuts.json", _dump_json(report))
    if args.plot_data:
        _write(args.plot_data, dendrogram_segments(dend))
    params = {"dir": str(folder), "dim": args.dim, "cut": list(args.cut)}
    write_manifest(out, "econ", params, inputs=files)
    for h, clusters in cuts.items():
        print(f"cut {h}: {clusters}")
    return EXIT_OK


def _emit_suite(args, command, results, summary, seeds, inputs=()):
    if not args.out:
        return
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "jobs")}
    _write(args.out, _dump_json({"command": command, "results": results, "summary": summary}))
    write_manifest(args.out, command, params, seeds=seeds, inputs=inputs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathpers", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in (
        ("ppd", cmd_ppd, "path persistence diagram of a network file"),
        ("dowker", cmd_dowker, "Dowker persistence diagram of a network file"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", required=True)
        p.add_argument("--dim", type=int, default=1)
        p.add_argument("--out")
        p.add_argument("--plot-data")
        if name == "ppd":
            p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
        p.set_defaults(func=func)

    p = sub.add_parser("bottleneck", help="bottleneck distance between two diagram files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("transposition-suite", help="Dgm(X) vs Dgm(X^T) on random networks")
    p.add_argument("--nmin", type=int, default=3)
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--per-n", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_transposition_suite)

    p = sub.add_parser("dowker-compare", help="path vs Dowker diagrams on random networks")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--input", help="compare a single network file instead")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_dowker_compare)

    p = sub.add_parser("cycle-suite", help="Dgm_1 of cycle networks")
    p.add_argument("--nmin", type=int, default=3)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_cycle_suite)

    p = sub.add_parser("econ", help="use tables -> diagrams -> bottleneck matrix -> dendrogram")
    p.add_argument("--dir", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--cut", action="append", default=[], help="cut height (repeatable)")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--plot-data")
    p.set_defaults(func=cmd_econ)

    p = sub.add_parser("stability-suite", help="check d_B <= 2 d_N on random pairs")
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_stability_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NetworkValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
