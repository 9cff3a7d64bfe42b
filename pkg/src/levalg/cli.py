"""Command line surface over the whole package.

One executable, subcommand style. Reports print to stdout in text, JSON or
CSV; `--out` redirects the rendered report to a file instead. Configuration
precedence is flags, then the LEVALG_PRIME / LEVALG_SEED environment
variables, then the default prime 32003. Commands that draw randomness
refuse to run without an explicit seed, so every run is reproducible.

Exit codes: 0 on success, 1 when a verification-style command finds a
failure (level, lefschetz, series --verify, paper-check), 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from levalg import gfp
from levalg.artinian import (
    ArtinianAlgebra,
    bar_graph_partition,
    generic_jordan_type,
    strong_lefschetz,
)
from levalg.betti import betti_table
from levalg.checks import CHECK_NAMES, run_all_checks, run_check
from levalg.gfp import DEFAULT_PRIME
from levalg.points import configuration, h_vector, hilbert_of_points, points_ideal
from levalg.ring import GradedIdeal, polynomial_ring
from levalg.series import (
    H_of_c,
    alpha,
    alpha_is_integral,
    component_count,
    min_admissible_a,
    series_dimensions,
    verify_partition_construction,
)
from levalg.strata import WITNESS_NAMES, deformation, strata_census, witness
from levalg.tangent import tangent_dimension, tangent_dimension_points

_SEEDED_WITNESSES = ("H2_C1", "H2_C2", "H2_B3", "H2_B4")
_FAMILIES = ("H1_family", "H2_family")
_CONFIG_KINDS = ("T1_C1", "T1_C2", "T1_Da", "T1_Db", "T1_Dab", "T2_C1", "T2_C2")


def _resolve_prime(parser: argparse.ArgumentParser, args) -> int:
    if getattr(args, "prime", None) is not None:
        p = args.prime
    elif os.environ.get("LEVALG_PRIME"):
        try:
            p = int(os.environ["LEVALG_PRIME"])
        except ValueError:
            parser.error(f"LEVALG_PRIME={os.environ['LEVALG_PRIME']!r} is not an integer")
    else:
        p = DEFAULT_PRIME
    if not gfp.is_prime(p):
        parser.error(f"--prime {p} is not prime")
    return p


def _resolve_seed(args) -> int | None:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("LEVALG_SEED")
    return int(env) if env else None


def _need_seed(parser: argparse.ArgumentParser, args, why: str) -> int:
    seed = _resolve_seed(args)
    if seed is None:
        parser.error(f"--seed is required {why} (no silent default)")
    return seed


def _witness_ideal(parser, args, prime: int) -> GradedIdeal:
    name = args.witness
    seed = None
    if name in _SEEDED_WITNESSES:
        seed = _need_seed(parser, args, f"for the seeded witness {name}")
    return witness(name, seed=seed, prime=prime)


def _csv(rows) -> str:
    return "\n".join(",".join(str(c) for c in row) for row in rows)


def _pairs_csv(payload: dict) -> str:
    rows = [["key", "value"]]
    for key, value in payload.items():
        if isinstance(value, (list, tuple)):
            rows.append([key, " ".join(str(v) for v in value)])
        elif isinstance(value, dict):
            rows.append([key, json.dumps(value, sort_keys=True)])
        else:
            rows.append([key, value])
    return _csv(rows)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


# ---- subcommand handlers ------------------------------------------------------


def _cmd_hilbert(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    ideal = _witness_ideal(parser, args, prime)
    if args.max_degree is not None:
        values = ideal.hilbert(args.max_degree).values
        payload = {"witness": args.witness, "values": list(values)}
        body = f"{args.witness}: H = {tuple(values)} through degree {args.max_degree}"
    else:
        algebra = ArtinianAlgebra(ideal)
        payload = {
            "witness": args.witness,
            "h": list(algebra.hvector()),
            "socle_degree": algebra.socle_degree,
        }
        body = f"{args.witness}: H = {algebra.hvector()}"
    if args.format == "json":
        _emit(args, _dump(payload))
    elif args.format == "csv":
        _emit(args, _pairs_csv(payload))
    else:
        _emit(args, body)
    return 0


def _cmd_betti(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    table = betti_table(_witness_ideal(parser, args, prime), kmax=args.max_degree)
    if args.format == "json":
        _emit(args, table.to_json())
    elif args.format == "csv":
        rows = [[""] + list(range(table.nvars + 1))]
        rows += [[d] + row for d, row in enumerate(table.display_rows())]
        rows.append(["total"] + list(table.totals()))
        _emit(args, _csv(rows))
    else:
        _emit(args, f"{args.witness}\n{table.render()}")
    return 0


def _cmd_socle(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    algebra = ArtinianAlgebra(_witness_ideal(parser, args, prime))
    report = algebra.level_report()
    payload = {
        "witness": args.witness,
        "socle_degree": algebra.socle_degree,
        "socle_dims": list(algebra.socle_dims()),
        "type": report.socle_type,
        "is_level": report.is_level,
    }
    if args.format == "json":
        _emit(args, _dump(payload))
    elif args.format == "csv":
        _emit(args, _pairs_csv(payload))
    else:
        _emit(
            args,
            f"{args.witness}: socle dimensions {algebra.socle_dims()} "
            f"(degree {algebra.socle_degree}, type {report.socle_type})",
        )
    return 0


def _cmd_level(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    algebra = ArtinianAlgebra(_witness_ideal(parser, args, prime))
    report = algebra.level_report()
    payload = {
        "witness": args.witness,
        "is_level": report.is_level,
        "type": report.socle_type,
        "socle_dims": list(report.socle_dims),
    }
    if args.format == "json":
        _emit(args, _dump(payload))
    elif args.format == "csv":
        _emit(args, _pairs_csv(payload))
    elif report.is_level:
        _emit(args, f"{args.witness} is level of type {report.socle_type}")
    else:
        _emit(args, f"{args.witness} is NOT level: socle dimensions {report.socle_dims}")
    return 0 if report.is_level else 1


def _cmd_lefschetz(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    seed = _need_seed(parser, args, "to draw random linear forms")
    algebra = ArtinianAlgebra(_witness_ideal(parser, args, prime))
    trials = args.samples or 5
    target = bar_graph_partition(algebra.hvector())
    jordan = generic_jordan_type(algebra, np.random.default_rng(seed), samples=trials)
    strong = strong_lefschetz(algebra, trials, np.random.default_rng(seed))
    payload = {
        "witness": args.witness,
        "h": list(algebra.hvector()),
        "bar_graph": list(target),
        "generic_jordan": list(jordan),
        "strong": strong,
    }
    if args.format == "json":
        _emit(args, _dump(payload))
    elif args.format == "csv":
        _emit(args, _pairs_csv(payload))
    else:
        verdict = "strong Lefschetz" if strong else "NOT strong Lefschetz"
        _emit(
            args,
            f"{args.witness}: {verdict}; generic Jordan type {jordan}, "
            f"bar graph {target}",
        )
    return 0 if strong else 1


def _cmd_tangent(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    if bool(args.witness) == bool(args.points):
        parser.error("pick exactly one of --witness and --points")
    if args.witness:
        dimension = tangent_dimension(ArtinianAlgebra(_witness_ideal(parser, args, prime)))
        payload = {"target": args.witness, "dimension": dimension}
        body = f"{args.witness}: tangent dimension {dimension}"
    else:
        seed = _need_seed(parser, args, "to draw a point configuration")
        ps = configuration(args.points, seed, ring4=polynomial_ring(4, prime))
        report = tangent_dimension_points(points_ideal(ps))
        payload = {
            "target": args.points,
            "dimension": report.dimension,
            "read_at_degree": report.degree,
            "stabilized": report.stabilized,
        }
        body = f"{args.points}: tangent dimension {report.dimension}"
    if args.format == "json":
        _emit(args, _dump(payload))
    elif args.format == "csv":
        _emit(args, _pairs_csv(payload))
    else:
        _emit(args, body)
    return 0


def _cmd_points(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    seed = _need_seed(parser, args, "to draw a point configuration")
    ps = configuration(args.points, seed, ring4=polynomial_ring(4, prime))
    T = hilbert_of_points(ps)
    payload = {
        "kind": args.points,
        "size": ps.size,
        "postulation": list(T),
        "h_vector": list(h_vector(ps)),
        "coords": [list(q) for q in ps.coords],
    }
    if args.format == "json":
        _emit(args, _dump(payload))
    elif args.format == "csv":
        _emit(args, _csv([["x0", "x1", "x2", "x3"]] + [list(q) for q in ps.coords]))
    else:
        _emit(
            args,
            f"{args.points}: {ps.size} points, T = {tuple(T)}, "
            f"h-vector {h_vector(ps)}",
        )
    return 0


def _cmd_census(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    seed = _need_seed(parser, args, "for census sampling")
    census = strata_census(
        args.target, samples_per_strategy=args.samples, seed=seed, prime=prime
    )
    if args.format == "json":
        _emit(args, census.to_json())
        return 0
    if args.format == "csv":
        rows = [["table", "count", "totals", "minimal"]]
        minimal = set(census.minima)
        for n, (table, count) in enumerate(census.tables, start=1):
            rows.append(
                [n, count, " ".join(map(str, table.totals())), table in minimal]
            )
        _emit(args, _csv(rows))
        return 0
    lines = [f"{args.target} census, {args.samples} samples per strategy"]
    for name, samples, failures in census.strategy_stats:
        lines.append(f"  {name}: {samples - failures} ok, {failures} failed")
    lines.append(
        f"  {census.table_count()} distinct Betti tables, {len(census.minima)} minimal"
    )
    minimal = set(census.minima)
    for n, (table, count) in enumerate(census.tables, start=1):
        tag = " (minimal)" if table in minimal else ""
        lines.append(f"table {n}, seen {count} times{tag}:")
        lines.append(table.render())
    _emit(args, "\n".join(lines))
    return 0


def _cmd_deform(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    seed = None
    if args.family == "H2_family":
        seed = _need_seed(parser, args, "to draw the H2_family forms")
    fiber = deformation(args.family, args.t, seed=seed, prime=prime)
    hf = fiber.hilbert(8)
    table = betti_table(fiber)
    payload = {
        "family": args.family,
        "t": args.t,
        "h": list(hf.nonzero_values()),
        "artinian": hf.is_artinian,
        "betti": json.loads(table.to_json()),
    }
    if args.format == "json":
        _emit(args, _dump(payload))
    elif args.format == "csv":
        _emit(args, _pairs_csv({k: payload[k] for k in ("family", "t", "h")}))
    else:
        tail = "" if hf.is_artinian else f" stabilizing at {hf.stabilized_value}"
        _emit(
            args,
            f"{args.family} at t = {args.t}: H = {hf.nonzero_values()}{tail}\n"
            f"{table.render()}",
        )
    return 0


def _cmd_series(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    c = args.c
    payload = {
        "c": c,
        "H": list(H_of_c(c)),
        "alpha": alpha(c),
        "alpha_integral": alpha_is_integral(c),
        "components": component_count(c),
        "min_admissible_a": min_admissible_a(c),
    }
    lines = [
        f"H({c}) = {H_of_c(c)}",
        f"alpha = {alpha(c):.4f}" + (" (integral)" if alpha_is_integral(c) else ""),
        f"{component_count(c)} components: a = 0 and {min_admissible_a(c)} <= a < {c}",
    ]
    if args.a is not None:
        stratum, component = series_dimensions(c, args.a)
        payload["a"] = args.a
        payload["stratum_dim"] = stratum
        payload["component_dim"] = component
        described = component if component is not None else "undefined (inadmissible a)"
        lines.append(f"a = {args.a}: stratum dimension {stratum}, component {described}")
    code = 0
    if args.verify:
        if args.a is None:
            parser.error("--verify needs --a to pick the common-divisor degree")
        if c > 3 and not args.slow:
            parser.error(f"verification at c = {c} needs --slow")
        seed = _need_seed(parser, args, "for the partition construction")
        report = verify_partition_construction(c, args.a, seed=seed, prime=prime)
        payload["verify"] = json.loads(report.to_json())
        verdict = "matches H(c)" if report.matches else f"came out {report.hilbert}"
        lines.append(
            f"construction {verdict}; N = {report.sample_size} <= {report.generic_bound}"
            if args.a
            else f"construction {verdict}"
        )
        code = 0 if report.matches else 1
    if args.format == "json":
        _emit(args, _dump(payload))
    elif args.format == "csv":
        _emit(args, _pairs_csv(payload))
    else:
        _emit(args, "\n".join(lines))
    return code


def _cmd_witness(parser, args) -> int:
    prime = _resolve_prime(parser, args)
    if not args.witness:
        payload = {
            "witnesses": list(WITNESS_NAMES),
            "seeded": list(_SEEDED_WITNESSES),
            "families": list(_FAMILIES),
        }
        if args.format == "json":
            _emit(args, _dump(payload))
        elif args.format == "csv":
            _emit(args, _pairs_csv(payload))
        else:
            tagged = [
                name + (" (seeded)" if name in _SEEDED_WITNESSES else "")
                for name in WITNESS_NAMES
            ]
            _emit(args, "\n".join(tagged + [f"{f} (family)" for f in _FAMILIES]))
        return 0
    ideal = _witness_ideal(parser, args, prime)
    algebra = ArtinianAlgebra(ideal)
    report = algebra.level_report()
    payload = {
        "name": args.witness,
        "h": list(algebra.hvector()),
        "socle_degree": algebra.socle_degree,
        "type": report.socle_type,
        "is_level": report.is_level,
    }
    try:
        payload["generators"] = ideal.text()
    except ValueError:
        payload["generator_degrees"] = {
            d: ideal.new_generator_dim(d)
            for d in range(algebra.socle_degree + 2)
            if ideal.new_generator_dim(d)
        }
    if args.format == "json":
        _emit(args, _dump(payload))
    elif args.format == "csv":
        _emit(args, _pairs_csv(payload))
    else:
        shape = payload.get("generators") or f"generator degrees {payload['generator_degrees']}"
        _emit(
            args,
            f"{args.witness}: H = {algebra.hvector()}, type {report.socle_type}\n  {shape}",
        )
    return 0


def _cmd_paper_check(parser, args) -> int:
    if args.name:
        results = [run_check(args.name, slow=args.slow)]
    else:
        results = run_all_checks(slow=args.slow)
    on_time = lambda r: r.budget is None or r.seconds <= r.budget
    ok = all(r.passed and on_time(r) for r in results)
    if args.format == "json":
        payload = [
            {
                "name": r.name,
                "passed": r.passed,
                "seconds": round(r.seconds, 3),
                "budget": r.budget,
                "within_budget": on_time(r),
                "detail": r.detail,
            }
            for r in results
        ]
        _emit(args, json.dumps(payload, indent=2, sort_keys=True))
    elif args.format == "csv":
        rows = [["name", "passed", "seconds", "within_budget"]]
        rows += [[r.name, r.passed, f"{r.seconds:.3f}", on_time(r)] for r in results]
        _emit(args, _csv(rows))
    else:
        lines = [r.line() + ("" if on_time(r) else "  ** over budget **") for r in results]
        passed = sum(1 for r in results if r.passed and on_time(r))
        lines.append(f"{passed}/{len(results)} checks passed")
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


# ---- parser construction ------------------------------------------------------


def _common_flags(sub, *, seed=True, fmt=True, out=True, prime=True):
    if prime:
        sub.add_argument("--prime", type=int, help="field characteristic (default 32003)")
    if seed:
        sub.add_argument("--seed", type=int, help="random seed; required for random draws")
    if fmt:
        sub.add_argument(
            "--format", choices=("text", "json", "csv"), default="text", help="output format"
        )
    if out:
        sub.add_argument("--out", help="write the report to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levalg",
        description="Exact invariants of level algebras: Hilbert functions, Betti "
        "tables, socles, tangent spaces, point lifts, deformations and censuses.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    hilbert = subs.add_parser("hilbert", help="Hilbert function of a named witness")
    hilbert.add_argument("--witness", required=True, choices=WITNESS_NAMES)
    hilbert.add_argument("--max-degree", type=int, help="scan through this degree")
    _common_flags(hilbert)
    hilbert.set_defaults(handler=_cmd_hilbert)

    betti = subs.add_parser("betti", help="graded Betti table of a named witness")
    betti.add_argument("--witness", required=True, choices=WITNESS_NAMES)
    betti.add_argument("--max-degree", type=int, help="truncate the table at this shift")
    _common_flags(betti)
    betti.set_defaults(handler=_cmd_betti)

    socle = subs.add_parser("socle", help="socle dimensions of a named witness")
    socle.add_argument("--witness", required=True, choices=WITNESS_NAMES)
    _common_flags(socle)
    socle.set_defaults(handler=_cmd_socle)

    level = subs.add_parser("level", help="check levelness (exit 1 when not level)")
    level.add_argument("--witness", required=True, choices=WITNESS_NAMES)
    _common_flags(level)
    level.set_defaults(handler=_cmd_level)

    lefschetz = subs.add_parser("lefschetz", help="strong Lefschetz check for a witness")
    lefschetz.add_argument("--witness", required=True, choices=WITNESS_NAMES)
    lefschetz.add_argument("--samples", type=int, help="linear forms to try (default 5)")
    _common_flags(lefschetz)
    lefschetz.set_defaults(handler=_cmd_lefschetz)

    tangent = subs.add_parser(
        "tangent", help="tangent-space dimension of a witness or point configuration"
    )
    tangent.add_argument("--witness", choices=WITNESS_NAMES)
    tangent.add_argument("--points", choices=_CONFIG_KINDS)
    _common_flags(tangent)
    tangent.set_defaults(handler=_cmd_tangent)

    points = subs.add_parser("points", help="draw and report a point configuration")
    points.add_argument("--points", required=True, choices=_CONFIG_KINDS)
    _common_flags(points)
    points.set_defaults(handler=_cmd_points)

    census = subs.add_parser("census", help="Betti-table census over registered strategies")
    census.add_argument("target", choices=("H1", "H2"))
    census.add_argument(
        "--samples", type=int, default=100, help="samples per strategy (default 100)"
    )
    _common_flags(census)
    census.set_defaults(handler=_cmd_census)

    deform = subs.add_parser("deform", help="fiber of a named deformation family")
    deform.add_argument("family", choices=_FAMILIES)
    deform.add_argument("--t", type=int, required=True, help="deformation parameter")
    _common_flags(deform)
    deform.set_defaults(handler=_cmd_deform)

    series = subs.add_parser("series", help="the H(c) series and its component geometry")
    series.add_argument("--c", type=int, required=True)
    series.add_argument("--a", type=int, help="common-divisor degree to inspect")
    series.add_argument(
        "--verify", action="store_true", help="run the three-part point construction"
    )
    series.add_argument(
        "--slow", action="store_true", help="allow verification runs above c = 3"
    )
    _common_flags(series)
    series.set_defaults(handler=_cmd_series)

    witness_cmd = subs.add_parser("witness", help="list witnesses or inspect one")
    witness_cmd.add_argument("--witness", choices=WITNESS_NAMES)
    _common_flags(witness_cmd)
    witness_cmd.set_defaults(handler=_cmd_witness)

    paper = subs.add_parser(
        "paper-check", help="run the named acceptance checks (exit 0 iff all pass)"
    )
    paper.add_argument("name", nargs="?", choices=CHECK_NAMES)
    paper.add_argument(
        "--slow", action="store_true", help="include the larger partition runs"
    )
    _common_flags(paper, seed=False, prime=False)
    paper.set_defaults(handler=_cmd_paper_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(parser, args)
    except ValueError as err:
        parser.error(str(err))
    except RuntimeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
