"""Command line entry point: ``weakcross verify`` and ``weakcross biproduct``.

Exit status is 0 when every check passes, 1 when some check fails and 2 when
the input cannot be read or parsed.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .gpdfile import GroupoidParseError, format_dump, load_groupoid
from .groupoid import (
    Factorization,
    NotExactError,
    NotWideError,
    base_splitting,
    check_groupoid,
    check_groupoid_hopf,
    compare_oracle_generic,
    exact_factorize,
    projection_morphisms,
    random_factorization,
    random_groupoid,
)
from .projection import (
    MORPHISM_NAMES,
    biproduct_from_projection,
    check_weak_projection,
    projection_from_biproduct,
)
from .linalg import identity
from .report import ConditionError, Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Stop(Exception):
    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


def _summary(report: Report, out) -> None:
    for child in report.children:
        counts = child.counts()
        mark = "PASS" if child.ok else "FAIL"
        print(f"[{mark}] {child.title}: {counts['pass']} passed, {counts['fail']} failed, "
              f"{counts['skipped']} skipped", file=out)
        for path, check in child.failures():
            wit = json.dumps(check.to_dict().get("witness", {}))
            print(f"    failed {check.name} at {path}  {wit}", file=out)


def _write_report(report: Report, path: str | None) -> None:
    if path:
        Path(path).write_text(report.to_json() + "\n")


def _random_instances(n: int, seed: int, factorized: bool):
    rng = random.Random(seed)
    for k in range(n):
        if factorized:
            kind = ("trivial-v", "mixed")[k % 2]
            yield f"random #{k} ({kind})", random_factorization(rng, kind, max_arrows=8)
        else:
            yield f"random #{k}", random_groupoid(rng)


def _load(path: str):
    try:
        return load_groupoid(path)
    except FileNotFoundError:
        raise _Stop("parse", f"no such file: {path}")
    except OSError as e:
        raise _Stop("parse", str(e))
    except (GroupoidParseError, ValueError) as e:
        raise _Stop("parse", str(e))


def cmd_verify(args) -> int:
    top = Report("verify")
    try:
        if args.file:
            gf = _load(args.file)
            top.add(check_groupoid_hopf(gf.groupoid, args.file))
    except _Stop as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return EXIT_INPUT
    for label, G in _random_instances(args.random, args.seed, factorized=False):
        top.add(check_groupoid_hopf(G, label))
    _summary(top, sys.stdout)
    _write_report(top, args.report)
    print("all checks passed" if top.ok else "some checks failed")
    return EXIT_OK if top.ok else EXIT_FAIL


def _pipeline(fz: Factorization, label: str):
    """Run the projection-to-biproduct pipeline, naming the first failing stage."""
    r = Report(label)
    p = projection_morphisms(fz)
    wp = r.add(check_weak_projection(p))
    if not wp.ok:
        raise _Stop("projection", "weak projection conditions fail")
    r.facts["g_is_algebra_morphism"] = wp.facts["g_is_algebra_morphism"]
    if "g_algebra_witness" in wp.facts:
        w = dict(wp.facts["g_algebra_witness"])
        names = fz.G.names
        w["pair"] = [names[i] for i in w["pair"]]
        r.facts["g_algebra_witness"] = w
    try:
        pb = biproduct_from_projection(p, base_splitting(fz))
    except ConditionError as e:
        r.add(e.report)
        raise _Stop("biproduct", f"{e.failed_check} fails")
    r.add(pb.report)
    oracle = r.add(compare_oracle_generic(fz))
    if not oracle.ok:
        raise _Stop("oracle", oracle.first_failure()[1].name)
    try:
        back, back_report = projection_from_biproduct(pb.data)
    except ConditionError as e:
        r.add(e.report)
        raise _Stop("round-trip", f"{e.failed_check} fails")
    back_report.equal("round-trip-f", back.f, p.f)
    back_report.equal("round-trip-g", back.g, p.g)
    r.add(back_report)
    if not back_report.ok:
        raise _Stop("round-trip", back_report.first_failure()[1].name)
    r.facts["dim_D"] = len(fz.G)
    r.facts["dim_tensor"] = len(fz.H) * len(fz.V)
    r.facts["nabla_rank"] = oracle.facts["nabla_rank"]
    r.facts["nabla_is_identity"] = pb.morphisms["nabla"] == identity(len(fz.H) * len(fz.V))
    return r, pb


def cmd_biproduct(args) -> int:
    top = Report("biproduct")
    dump_maps = None
    try:
        if args.file:
            gf = _load(args.file)
            if gf.H is None or gf.V is None:
                print("error: file needs 'subgroupoid H:' and 'subgroupoid V:' sections", file=sys.stderr)
                return EXIT_INPUT
            gr = check_groupoid(gf.groupoid)
            if not gr.ok:
                top.add(gr)
                raise _Stop("groupoid", gr.first_failure()[1].name)
            try:
                fz = exact_factorize(gf.groupoid, gf.H, gf.V)
            except NotWideError as e:
                raise _Stop("NotWide", str(e))
            except NotExactError as e:
                raise _Stop("NotExact", str(e))
            rep, pb = _pipeline(fz, args.file)
            top.add(rep)
            dump_maps = {name: pb.morphisms[name] for name in MORPHISM_NAMES}
        for label, fz in _random_instances(args.random, args.seed, factorized=True):
            rep, _ = _pipeline(fz, label)
            top.add(rep)
    except _Stop as e:
        if e.stage == "parse":
            print(f"error: {e.detail}", file=sys.stderr)
            return EXIT_INPUT
        top.facts["failed_stage"] = e.stage
        _summary(top, sys.stdout)
        _write_report(top, args.report)
        print(f"FAILED at stage {e.stage}: {e.detail}")
        return EXIT_FAIL
    _summary(top, sys.stdout)
    for child in top.children:
        f = child.facts
        if "dim_D" in f:
            print(f"{child.title}: dim D = {f['dim_D']}, dim C(x)B = {f['dim_tensor']}, "
                  f"rank nabla = {f['nabla_rank']}, g multiplicative = {f['g_is_algebra_morphism']}")
            if f["nabla_is_identity"]:
                print("    nabla = id: C (x) B itself carries the biproduct")
            if "g_algebra_witness" in f:
                w = f["g_algebra_witness"]
                print(f"    g fails to be multiplicative on {w['pair'][0]} (x) {w['pair'][1]}")
    if args.dump and dump_maps is not None:
        Path(args.dump).write_text(format_dump(dump_maps))
    _write_report(top, args.report)
    print("all checks passed" if top.ok else "some checks failed")
    return EXIT_OK if top.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weakcross", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", nargs="?", help="groupoid file (.gpd)")
    common.add_argument("--report", metavar="PATH", help="write a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for --random instances")
    common.add_argument("--random", type=int, default=0, metavar="N", help="also check N random instances")
    v = sub.add_parser("verify", parents=[common], help="groupoid axioms and the weak Hopf suite")
    v.set_defaults(func=cmd_verify)
    b = sub.add_parser("biproduct", parents=[common], help="build and verify the biproduct of an exact factorization")
    b.add_argument("--dump", metavar="PATH", help="write the thirteen structure maps")
    b.set_defaults(func=cmd_biproduct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.file and not args.random:
        parser.error("give a file or --random N")
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
