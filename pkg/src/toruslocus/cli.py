"""Command line front end.

Exit codes: 0 success or match, 1 mathematical mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import nslocus
from .exactmath import format_rational
from .polyring import buchberger
from .torus import (NSClass, PeriodMatrix, RankDeficient, find_polarization, ns_rank,
                    verdict_to_json)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("toruslocus.data").joinpath(name)))


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def load_classes(path) -> tuple[list[NSClass], str]:
    data = _load_json(path)
    flattening = "column"
    if isinstance(data, dict):
        flattening = data.get("flattening", flattening)
        data = data.get("classes")
    if not isinstance(data, list):
        raise InputError("classes file must hold a list of classes or {'classes': [...]}")
    try:
        return [NSClass.from_json(d) for d in data], flattening
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad class entry: {exc}") from exc


def load_period_matrix(path) -> PeriodMatrix:
    try:
        return PeriodMatrix.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad period matrix: {exc}") from exc


def load_generators(path, ring) -> list:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    try:
        return [ring.parse(ln) for ln in lines if ln and not ln.startswith("#")]
    except ValueError as exc:
        raise InputError(f"bad generator in {path}: {exc}") from exc


def _emit(args, report: dict, summary: list[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
        return
    for line in summary:
        print(line)
    if args.out:
        Path(args.out).write_text(text)


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}


# -- commands -------------------------------------------------------------------

def basis_diff(computed, expected) -> dict:
    """Compare two generator lists as reduced bases (monic, order-free)."""
    comp = {str(f.monic()) for f in computed}
    exp = {str(f.monic()) for f in expected}
    return {"missing": sorted(exp - comp), "unexpected": sorted(comp - exp)}


def cmd_paper_example(args) -> int:
    triple_file = Path(args.classes) if args.classes else fixture_path("worked_triple.json")
    gens_file = Path(args.generators) if args.generators else fixture_path("worked_generators.txt")
    classes, flattening = load_classes(triple_file)
    prob = nslocus.LocusProblem(tuple(classes), flattening)
    ideal = nslocus.projective_closure(prob.equations())
    expected = load_generators(gens_file, prob.ring)
    diff = basis_diff(ideal.groebner(), expected)
    match = not diff["missing"] and not diff["unexpected"]
    rep = nslocus.classify(ideal, flattening, polarization_bound=args.bound)
    report = {
        "command": "paper-example",
        "config": _config(args),
        "fixtures": {triple_file.name: _sha256(triple_file), gens_file.name: _sha256(gens_file)},
        "basis_matches_fixture": match,
        "diff": diff,
        "fiber": rep.to_json(),
    }
    summary = [f"basis matches fixture: {match}"]
    for line in diff["missing"]:
        summary.append(f"  missing:    {line}")
    for line in diff["unexpected"]:
        summary.append(f"  unexpected: {line}")
    summary.append(f"fiber: dim {rep.dim}, degree {rep.degree}, "
                   f"Q-irreducible {rep.irreducible_over_Q}, discriminant "
                   f"{format_rational(rep.discriminant) if rep.discriminant is not None else '-'}"
                   f" on chart {rep.chart}")
    for k, p in enumerate(rep.points):
        summary.append(f"point {k}: ns_rank {p.ns_rank}, {p.validity}")
    _emit(args, report, summary)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_locus(args) -> int:
    classes, flattening = load_classes(args.classes)
    if args.flattening:
        flattening = args.flattening
    rep = nslocus.locus_report(classes, flattening, polarization_bound=args.bound)
    report = {"command": "locus", "config": _config(args), "fiber": rep.to_json()}
    summary = [f"empty: {rep.empty}", f"dim: {rep.dim}", f"degree: {rep.degree}"]
    summary += [f"  {f}" for f in rep.generators]
    _emit(args, report, summary)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.g < 3:
        raise InputError("sweep needs g >= 3")
    seeds = range(args.seed, args.seed + args.seeds)
    rows = nslocus.sweep(args.g, seeds, args.entry_bound, jobs=args.jobs)
    n_empty = sum(r.empty for r in rows)
    report = {"command": "sweep", "config": _config(args),
              "rows": [r.to_json() for r in rows],
              "empty": n_empty, "total": len(rows)}
    summary = [f"{'seed':>6} {'empty':>6} {'dim':>4} {'degree':>6}"]
    summary += [f"{r.seed:>6} {str(r.empty):>6} {r.dim:>4} {str(r.degree):>6}" for r in rows]
    summary.append(f"empty: {n_empty}/{len(rows)}")
    _emit(args, report, summary)
    return EXIT_OK


def cmd_rank(args) -> int:
    tau = load_period_matrix(args.period_matrix)
    nr = ns_rank(tau)
    report = {"command": "rank", "config": _config(args), "validity": tau.validity(),
              "rank": nr.rank, "basis": [E.to_json() for E in nr.basis]}
    _emit(args, report, [f"ns_rank: {nr.rank}", f"validity: {tau.validity()}"])
    return EXIT_OK


def cmd_polarize(args) -> int:
    tau = load_period_matrix(args.period_matrix)
    nr = ns_rank(tau)
    report = {"command": "polarize", "config": _config(args), "validity": tau.validity(),
              "rank": nr.rank}
    if not tau.is_valid:
        report["polarization"] = {"verdict": "NotApplicable", "reason": tau.validity()}
    else:
        report["polarization"] = verdict_to_json(find_polarization(tau, args.bound, args.shortcut))
    summary = [f"ns_rank: {nr.rank}", f"validity: {tau.validity()}",
               f"verdict: {report['polarization']['verdict']}"]
    _emit(args, report, summary)
    return EXIT_OK


def cmd_family_check(args) -> int:
    if not args.slow:
        raise InputError("family-check is slow; pass --slow to run it")
    ring = nslocus.locus_ring(3)
    gens_file = Path(args.generators) if args.generators else fixture_path("worked_generators.txt")
    expected = load_generators(gens_file, ring)
    cert = nslocus.family_certificate(args.pair_limit, expected=buchberger(expected).basis)
    report = {"command": "family-check", "config": _config(args),
              "fixtures": {gens_file.name: _sha256(gens_file)}, "certificate": cert.to_json()}
    summary = [f"pairs processed: {cert.pairs_processed} (limit {cert.pair_limit})",
               f"lead terms all contain t-variables: {cert.holds}",
               f"specialized ideal contains the fixture scheme: {cert.specialization_contained}"]
    _emit(args, report, summary)
    return EXIT_OK if cert.holds and cert.specialization_contained else EXIT_MISMATCH


def cmd_approximate(args) -> int:
    classes, flattening = load_classes(args.classes)
    base = load_period_matrix(args.period_matrix)
    prob = nslocus.LocusProblem(tuple(classes), flattening)
    m = Fraction(args.m) if args.m is not None else None
    pts = nslocus.approximate_abelian(prob, base, args.n, m, polarization_bound=args.bound)
    report = {"command": "approximate", "config": _config(args),
              "points": [p.to_json() for p in pts]}
    summary = [f"k={p.k} distance={format_rational(p.distance)} rank={p.ns_rank} "
               f"{p.polarization['verdict']}" for p in pts]
    _emit(args, report, summary)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toruslocus",
                                description="Exact loci of period matrices for Neron-Severi triples.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report here ('-' for stdout)")
        return sp

    sp = common(sub.add_parser("paper-example", help="reproduce the worked g=3 fiber"))
    sp.add_argument("--classes", help="classes JSON (default: bundled fixture)")
    sp.add_argument("--generators", help="expected generators, one per line")
    sp.add_argument("--bound", type=int, default=2, help="polarization search bound")
    sp.set_defaults(func=cmd_paper_example)

    sp = common(sub.add_parser("locus", help="classify the locus of a class triple"))
    sp.add_argument("classes")
    sp.add_argument("--flattening", choices=nslocus.FLATTENINGS)
    sp.add_argument("--bound", type=int, default=2)
    sp.set_defaults(func=cmd_locus)

    sp = common(sub.add_parser("sweep", help="classify seeded random triples"))
    sp.add_argument("--g", type=int, default=4)
    sp.add_argument("--seeds", type=int, default=20, help="number of seeds")
    sp.add_argument("--seed", type=int, default=0, help="first seed")
    sp.add_argument("--entry-bound", type=int, default=2)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_sweep)

    sp = common(sub.add_parser("rank", help="formal NS rank at a period matrix"))
    sp.add_argument("period_matrix")
    sp.set_defaults(func=cmd_rank)

    sp = common(sub.add_parser("polarize", help="search for a polarization"))
    sp.add_argument("period_matrix")
    sp.add_argument("--bound", type=int, default=2)
    sp.add_argument("--shortcut", action="store_true",
                    help="accept Picard number 9 at g=3 without searching")
    sp.set_defaults(func=cmd_polarize)

    sp = common(sub.add_parser("family-check", help="lead-term certificate on the family ideal"))
    sp.add_argument("--pair-limit", type=int, default=31)
    sp.add_argument("--generators", help="expected fiber generators")
    sp.add_argument("--slow", action="store_true")
    sp.set_defaults(func=cmd_family_check)

    sp = common(sub.add_parser("approximate", help="abelian approximations (C = 0 triples)"))
    sp.add_argument("classes")
    sp.add_argument("period_matrix")
    sp.add_argument("-n", type=int, default=5)
    sp.add_argument("--m", help="theta^2 for the approximants when the base is rational")
    sp.add_argument("--bound", type=int, default=1)
    sp.set_defaults(func=cmd_approximate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, RankDeficient, nslocus.NonlinearLocus, nslocus.InfeasibleBase,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
