"""Command-line front end.

Exit codes separate what failed: 0 all checks passed, 1 a verified claim is
false (on valid inputs this means a bug and is worth a report), 2 the input
violates hypotheses or is malformed, 3 usage errors.  Machine output via
--json is deterministic; --no-timing drops the elapsed-milliseconds field so
two runs on the same input are byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from .errors import ChaseError, InputError, TheoremViolation
from .fields import PrimeField, QQ, field_to_json
from .genrand import (
    PRNG_ALGORITHM,
    GenConfig,
    random_cross,
    random_exact_complex,
    random_exact_grid,
    random_snake_input,
)
from .grids import COKERNEL, KERNEL, StaircaseShape, corollary_check
from .jsonio import (
    complex_to_json,
    cross_from_json,
    cross_to_json,
    dump,
    grid_from_json,
    grid_to_json,
    load_file,
    matrix_to_json,
    right_exact_from_json,
    short_exact_from_json,
    snake_from_json,
    snake_to_json,
)
from .quiverhom import additivity_check, hom_grid
from .relations import verify_cross_lemma
from .snake import snake, snake_via_grids


def _digest(paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        with open(p, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()


def _digest_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class Report:
    def __init__(self, command: str, digest: str):
        self.command = command
        self.digest = digest
        self.verdicts = []
        self.tables = {}
        self.started = time.monotonic()

    def verdict(self, name: str, ok: bool, **extra):
        entry = {"name": name, "ok": bool(ok)}
        entry.update(extra)
        self.verdicts.append(entry)

    @property
    def all_ok(self) -> bool:
        return all(v["ok"] for v in self.verdicts)

    def to_json(self, timing: bool) -> dict:
        out = {
            "command": self.command,
            "input_digest": self.digest,
            "verdicts": self.verdicts,
            "tables": self.tables,
        }
        if timing:
            out["elapsed_ms"] = int((time.monotonic() - self.started) * 1000)
        return out

    def emit(self, args):
        if args.json:
            print(json.dumps(self.to_json(timing=not args.no_timing),
                             sort_keys=True, separators=(",", ":")))
            return
        for v in self.verdicts:
            mark = "pass" if v["ok"] else "FAIL"
            extra = {k: val for k, val in v.items() if k not in ("name", "ok")}
            suffix = f"  {extra}" if extra else ""
            print(f"[{mark}] {v['name']}{suffix}")
        if not args.quiet:
            for name, table in self.tables.items():
                print(f"{name}: {json.dumps(table, sort_keys=True)}")
            if not args.no_timing:
                print(f"elapsed_ms: {int((time.monotonic() - self.started) * 1000)}")


def _parse_field(text: str):
    if text in ("q", "Q", "rationals"):
        return QQ
    try:
        return PrimeField(int(text))
    except ValueError as exc:
        raise InputError(f"bad field {text!r}; use a prime or 'q'") from exc


def _field_override(args):
    return _parse_field(args.field) if args.field else None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", action="store_true", help="suppress tables")
    common.add_argument("--no-timing", action="store_true",
                        help="omit elapsed time for reproducible output")
    common.add_argument("--field", default=None,
                        help="override the field of input files (prime or 'q')")

    parser = argparse.ArgumentParser(
        prog="diagramchase",
        description="Exact diagram chasing over fields: validate grids, compare "
                    "kernel/cokernel complex homology, run the snake lemma, and "
                    "check Hom grids of quiver representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="check a grid's commutativity and exactness")
    p.add_argument("grid")

    for name in ("kcl", "ccl"):
        p = sub.add_parser(name, parents=[common],
                           help=f"{name} homology tables for a grid")
        p.add_argument("grid")
        p.add_argument("--position", type=int, default=None)
        p.add_argument("--iso", action="store_true", help="include isomorphism matrices")

    p = sub.add_parser("cross", parents=[common],
                       help="verify the exact-cross membership claims")
    p.add_argument("cross")

    p = sub.add_parser("snake", parents=[common],
                       help="six-term sequence and connecting map")
    p.add_argument("snake")
    p.add_argument("--via-grids", action="store_true",
                   help="derive through the grid comparisons instead of the chase")

    p = sub.add_parser("hom", parents=[common],
                       help="Hom grid of a short exact and a right exact sequence")
    p.add_argument("aseq")
    p.add_argument("eseq")
    p.add_argument("--additivity", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="seed for the summand probe")

    p = sub.add_parser("gen", parents=[common], help="emit a seeded valid instance")
    p.add_argument("kind", choices=["complex", "grid", "cross", "snake"])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--gen-field", default="2", dest="gen_field",
                   help="field for the instance (prime or 'q')")
    p.add_argument("--shape", default="3,3",
                   help="comma-separated non-increasing row lengths")
    p.add_argument("--max-dim", type=int, default=4)
    p.add_argument("--length", type=int, default=4, help="terms in a complex")
    p.add_argument("--orientation", choices=[KERNEL, COKERNEL], default=KERNEL)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("selftest", parents=[common],
                       help="run the seeded property suite")
    p.add_argument("--seeds", type=int, default=25)
    return parser


def cmd_validate(args) -> tuple[Report, int]:
    report = Report("validate", _digest([args.grid]))
    grid = grid_from_json(load_file(args.grid), _field_override(args))
    result = grid.validate()
    report.verdict("grid_valid", result.ok,
                   non_commuting=result.non_commuting,
                   row_inexact=result.row_inexact,
                   col_inexact=result.col_inexact)
    return report, (0 if result.ok else 2)


def cmd_kcl(args) -> tuple[Report, int]:
    report = Report(args.command, _digest([args.grid]))
    grid = grid_from_json(load_file(args.grid), _field_override(args))
    if args.command == "kcl":
        first, second = grid.kcl_homology_dims()
        labels = ("top", "left")
        iso_of = grid.kcl_homology_iso
    else:
        first, second = grid.ccl_homology_dims()
        labels = ("right", "bottom")
        iso_of = grid.ccl_homology_iso
    positions = grid.admissible_positions()
    if args.position is not None:
        if args.position not in positions:
            raise InputError(f"position {args.position} is not admissible; "
                             f"admissible positions are {positions}")
        keep = positions.index(args.position)
        positions = [args.position]
        first, second = [first[keep]], [second[keep]]
    report.tables["positions"] = positions
    report.tables[labels[0]] = first
    report.tables[labels[1]] = second
    report.verdict("homology_dims_equal", first == second)
    if args.iso:
        matrices = {}
        for n in positions:
            iso = iso_of(n)
            matrices[str(n)] = matrix_to_json(iso.matrix)
        report.tables["iso"] = matrices
        report.verdict("isomorphisms_invertible", True)
    return report, (0 if report.all_ok else 1)


def cmd_cross(args) -> tuple[Report, int]:
    report = Report("cross", _digest([args.cross]))
    beta1, beta2, f, g = cross_from_json(load_file(args.cross), _field_override(args))
    result = verify_cross_lemma(beta1, beta2, f, g)
    report.verdict("image_transfer", result.image_transfer)
    report.verdict("kernel_domain", result.kernel_domain)
    report.verdict("kernel_codomain", result.kernel_codomain)
    if result.enumeration_agrees is not None:
        report.verdict("enumeration_agrees", result.enumeration_agrees)
    return report, (0 if report.all_ok else 1)


def cmd_snake(args) -> tuple[Report, int]:
    report = Report("snake", _digest([args.snake]))
    inp = snake_from_json(load_file(args.snake), _field_override(args))
    result = (snake_via_grids if args.via_grids else snake)(inp)
    report.tables["delta"] = matrix_to_json(result.delta)
    report.tables["six_term_dims"] = result.six_term.dims
    report.tables["six_term_homology"] = result.six_term.homology_dims()
    for pos, ok in zip((1, 2, 3, 4), result.exact):
        report.verdict(f"exact_at_position_{pos}", ok)
    report.verdict("f_monic_iff_kernel_map_monic",
                   result.f_monic_iff[0] == result.f_monic_iff[1],
                   values=list(result.f_monic_iff))
    report.verdict("gp_epi_iff_cokernel_map_epi",
                   result.gp_epi_iff[0] == result.gp_epi_iff[1],
                   values=list(result.gp_epi_iff))
    return report, (0 if report.all_ok else 1)


def cmd_hom(args) -> tuple[Report, int]:
    report = Report("hom", _digest([args.aseq, args.eseq]))
    a_seq = short_exact_from_json(load_file(args.aseq), _field_override(args))
    e_seq = right_exact_from_json(load_file(args.eseq), _field_override(args))
    grid = hom_grid(a_seq, e_seq)
    report.verdict("hom_grid_valid", grid.validate().ok)
    column_h, row_h = grid.ccl_homology_dims()
    report.tables["corner_column_homology"] = column_h
    report.tables["corner_row_homology"] = row_h
    report.verdict("cokernel_homology_equal", column_h == row_h)
    if args.additivity:
        result = additivity_check(a_seq, e_seq, seed=args.seed)
        report.tables["additivity"] = {
            "dim_at_first": result.dim_at_first,
            "dim_at_middle": result.dim_at_middle,
            "dim_at_last": result.dim_at_last,
            "defect": result.defect,
            "summand_flag": result.summand_flag,
            "exhaustive": result.exhaustive,
        }
    return report, (0 if report.all_ok else 1)


def cmd_gen(args) -> tuple[Report, int]:
    shape = StaircaseShape([int(x) for x in args.shape.split(",")])
    cfg = GenConfig(seed=args.seed, field=_parse_field(args.gen_field),
                    max_dim=args.max_dim, shape=shape)
    if args.kind == "complex":
        payload = complex_to_json(random_exact_complex(cfg, args.length))
    elif args.kind == "grid":
        payload = grid_to_json(random_exact_grid(cfg, orientation=args.orientation))
    elif args.kind == "cross":
        beta1, beta2, f, g = random_cross(cfg)
        payload = cross_to_json(cfg.field, beta1, beta2, f, g)
    else:
        payload = snake_to_json(random_snake_input(cfg))
    dump(payload, args.output)
    config_text = f"{args.kind} seed={args.seed} field={args.gen_field} " \
                  f"shape={args.shape} max_dim={args.max_dim}"
    report = Report("gen", _digest_text(config_text))
    report.tables["algorithm"] = PRNG_ALGORITHM
    report.tables["output"] = args.output
    report.verdict("generated", True)
    return report, 0


def _selftest_seed(seed: int) -> dict:
    from .relations import graph as _graph

    field = PrimeField(2) if seed % 2 == 0 else PrimeField(5)
    results = {}
    shape = StaircaseShape([3, 3, 2] if seed % 3 else [3, 3, 3])
    cfg = GenConfig(seed=seed, field=field, max_dim=3, shape=shape)
    grid = random_exact_grid(cfg)
    top, left = grid.kcl_homology_dims()
    ok = grid.validate().ok and top == left
    for n in grid.admissible_positions():
        iso = grid.kcl_homology_iso(n)
        ok = ok and iso.matrix.rows == iso.matrix.cols
    results["kcl"] = ok

    cokernel_grid = random_exact_grid(cfg, orientation=COKERNEL)
    right, bottom = cokernel_grid.ccl_homology_dims()
    results["ccl"] = cokernel_grid.validate().ok and right == bottom

    gamma_grid = random_exact_grid(
        GenConfig(seed=seed, field=field, max_dim=3, shape=StaircaseShape([3, 3, 2])))
    rep = corollary_check(gamma_grid)
    results["corollary"] = rep.equal_at_1 and rep.equal_at_2

    beta1, beta2, f, g = random_cross(GenConfig(seed=seed, field=field, max_dim=3))
    cross_rep = verify_cross_lemma(beta1, beta2, f, g)
    results["cross"] = cross_rep.all_ok

    inp = random_snake_input(GenConfig(seed=seed, field=field, max_dim=3))
    one = snake(inp)
    two = snake_via_grids(inp)
    results["snake"] = (one.all_exact and one.addenda_hold
                        and _graph(one.delta) == _graph(two.delta)
                        and one.six_term.homology_dims() == two.six_term.homology_dims())
    return results


def cmd_selftest(args) -> tuple[Report, int]:
    report = Report("selftest", _digest_text(f"selftest seeds={args.seeds}"))
    report.tables["algorithm"] = PRNG_ALGORITHM
    report.tables["seeds"] = args.seeds
    counts = {}
    failures = []
    for seed in range(args.seeds):
        try:
            results = _selftest_seed(seed)
        except ChaseError as exc:
            failures.append({"seed": seed, "error": str(exc)})
            continue
        for name, ok in results.items():
            passed, failed = counts.get(name, (0, 0))
            counts[name] = (passed + (1 if ok else 0), failed + (0 if ok else 1))
            if not ok:
                failures.append({"seed": seed, "check": name})
    for name in sorted(counts):
        passed, failed = counts[name]
        report.verdict(name, failed == 0, passed=passed, failed=failed)
    report.tables["failures"] = failures
    return report, (0 if report.all_ok else 1)


_DISPATCH = {
    "validate": cmd_validate,
    "kcl": cmd_kcl,
    "ccl": cmd_kcl,
    "cross": cmd_cross,
    "snake": cmd_snake,
    "hom": cmd_hom,
    "gen": cmd_gen,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 3
    try:
        report, code = _DISPATCH[args.command](args)
    except TheoremViolation as exc:
        print(f"theorem check failed: {exc}", file=sys.stderr)
        return 1
    except ChaseError as exc:
        location = getattr(exc, "location", None)
        suffix = f" (at {location})" if location else ""
        print(f"input error: {exc}{suffix}", file=sys.stderr)
        return 2
    report.emit(args)
    return code


if __name__ == "__main__":
    sys.exit(main())
