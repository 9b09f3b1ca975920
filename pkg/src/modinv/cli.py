"""Command-line front end: ``modinv {charpoly,invariants,stabilizer,regular,verify}``.

Exit status: 0 success, 1 verification failure, 2 usage or input error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import catalog
from .actions import (
    ActionError,
    LieAction,
    RationalPoint,
    adjoint_action,
    estimate_c_g,
    parse_action,
    stabilizer,
)
from .derivations import parse_lie_algebra
from .errors import BudgetError, PreconditionError
from .field import MAX_ORDER, FieldError, GF
from .finite_groups import ConstantGroupAction, GroupError, constant_invariants, parse_group_action
from .invariants import (
    char_poly_invariants_at,
    char_poly_invariants_symbolic,
    check_generation,
    invariants_up_to_degree,
    psi_on_action,
)
from .poly import DimensionMismatch, ParseError, parse_polynomial
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MAX_SAMPLES = 10_000
MAX_DEGREE = 64


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    cat: str | None
    file: Path | None
    n: int | None
    p: int | None
    max_degree: int
    ext: int | None
    seed: int
    samples: int
    output: Path | None
    fmt: str

    def validate(self):
        if self.seed < 0:
            raise UsageError("--seed must be >= 0")
        if not 1 <= self.samples <= MAX_SAMPLES:
            raise UsageError(f"--samples must lie in [1, {MAX_SAMPLES}]")
        if not 0 <= self.max_degree <= MAX_DEGREE:
            raise UsageError(f"--max-degree must lie in [0, {MAX_DEGREE}]")
        if self.ext is not None and self.ext < 1:
            raise UsageError("--ext must be >= 1")
        if self.cat and self.file:
            raise UsageError("give either --cat or --file, not both")


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        cat=getattr(args, "cat", None),
        file=getattr(args, "file", None),
        n=getattr(args, "n", None),
        p=getattr(args, "p", None),
        max_degree=getattr(args, "max_degree", 0),
        ext=getattr(args, "ext", None),
        seed=args.seed,
        samples=getattr(args, "samples", 200),
        output=args.output,
        fmt=args.format,
    )
    cfg.validate()
    return cfg


def _field(p: int, e: int | None):
    e = e or 1
    if p**e > MAX_ORDER:
        raise BudgetError(f"GF({p}^{e}) exceeds the field budget {MAX_ORDER}")
    return GF(p, e)


def _wn_params(cfg: RunConfig) -> tuple[int, int]:
    if cfg.cat:
        kind, *rest = cfg.cat.split(":")
        if kind != "W" or len(rest) != 2:
            raise UsageError(f"charpoly needs a W:n:p catalog name, got {cfg.cat!r}")
        return int(rest[0]), int(rest[1])
    if cfg.n is None or cfg.p is None:
        raise UsageError("charpoly needs --cat W:n:p or both --n and --p")
    return cfg.n, cfg.p


def _load_action(cfg: RunConfig) -> LieAction | ConstantGroupAction:
    if cfg.cat:
        if catalog.is_group_action(cfg.cat):
            return catalog.group_action(cfg.cat)
        return catalog.lie_action(cfg.cat)
    if cfg.file:
        text = cfg.file.read_text()
        words = {ln.split()[0] for ln in text.splitlines() if ln.strip() and not ln.startswith("#")}
        if "target" in words:
            return parse_group_action(text)
        if "vars" in words:
            return parse_action(text)
        return adjoint_action(parse_lie_algebra(text.splitlines()))
    raise UsageError("need --cat or --file")


def _parse_point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"malformed point {text!r}; expected comma-separated integers") from None


def _point(action: LieAction, text: str, ext: int | None) -> RationalPoint:
    F = _field(action.ring.p, ext)
    coords = _parse_point(text)
    if len(coords) != action.ring.nvars:
        raise UsageError(f"point needs {action.ring.nvars} coordinates, got {len(coords)}")
    if any(not 0 <= c < F.q for c in coords):
        raise UsageError(f"point coordinates must be codes in [0, {F.q})")
    return RationalPoint(F, coords)


def _fmt_point(x: RationalPoint) -> str:
    return ",".join(map(str, x.coords))


def _kv(rows: list[tuple[str, object]], fmt: str) -> str:
    sep = "\t" if fmt == "tsv" else ": "
    return "".join(f"{k}{sep}{v}\n" for k, v in rows)


# -- commands -----------------------------------------------------------------------


def cmd_charpoly(cfg: RunConfig, args: argparse.Namespace) -> tuple[str, int]:
    n, p = _wn_params(cfg)
    if args.point is not None:
        F = _field(p, cfg.ext)
        coords = _parse_point(args.point)
        if any(not 0 <= c < F.q for c in coords):
            raise UsageError(f"point coordinates must be codes in [0, {F.q})")
        values = char_poly_invariants_at(coords, n, p, F)
        return "".join(f"psi_{i} = {v}\n" for i, v in enumerate(values)), EXIT_OK
    psi = char_poly_invariants_symbolic(n, p, allow_large=args.allow_large)
    return "".join(f"psi_{i} = {f}\n" for i, f in enumerate(psi.psi)), EXIT_OK


def _generators(action: LieAction, text: str, cat: str | None) -> list:
    if text == "psi":
        kind, *rest = (cat or "").split(":")
        if kind != "W" or len(rest) != 2:
            raise UsageError("--generators psi needs a W:n:p action")
        n, p = map(int, rest)
        return psi_on_action(char_poly_invariants_symbolic(n, p), action)
    try:
        return [parse_polynomial(action.ring, t) for t in text.split(";") if t.strip()]
    except (ParseError, DimensionMismatch) as exc:
        raise UsageError(f"cannot parse generators: {exc}") from None


def cmd_invariants(cfg: RunConfig, args: argparse.Namespace) -> tuple[str, int]:
    action = _load_action(cfg)
    D = cfg.max_degree
    if args.generators and isinstance(action, LieAction):
        report = check_generation(action, _generators(action, args.generators, cfg.cat), D)
        rows = report.rows()
        status = EXIT_OK if report.generated else EXIT_FAIL
    else:
        if args.generators:
            raise UsageError("--generators is only supported for Lie algebra actions")
        if isinstance(action, ConstantGroupAction):
            inv = constant_invariants(action, D)
        else:
            inv = invariants_up_to_degree(action, D)
        rows = [(d, k, "-", "-") for d, k in enumerate(inv.dims())]
        status = EXIT_OK
    if cfg.fmt == "tsv":
        out = "degree\tdim_invariant\tdim_generated\tverdict\n"
        out += "".join("\t".join(map(str, r)) + "\n" for r in rows)
    else:
        out = "".join(
            f"degree {d}: dim {k}" + (f", generated {g} ({v})" if v != "-" else "") + "\n"
            for d, k, g, v in rows
        )
    return out, status


def _require_lie(action) -> LieAction:
    if not isinstance(action, LieAction):
        raise UsageError("this command needs a Lie algebra action")
    return action


def cmd_stabilizer(cfg: RunConfig, args: argparse.Namespace) -> tuple[str, int]:
    action = _require_lie(_load_action(cfg))
    if args.point is None:
        raise UsageError("stabilizer needs --point")
    x = _point(action, args.point, cfg.ext)
    stab = stabilizer(action, x)
    c = args.c
    source = "given"
    if c is None:
        c = estimate_c_g(action, seed=cfg.seed, samples=cfg.samples, e=cfg.ext or 4).estimate
        source = "estimated"
    basis = ";".join(",".join(map(str, v)) for v in stab.kernel) or "-"
    rows = [
        ("point", _fmt_point(x)),
        ("stabilizer", basis),
        ("dim", stab.dim),
        ("codim", stab.codim),
        ("c", f"{c} ({source})"),
        ("regular", "yes" if stab.codim == c else "no"),
    ]
    return _kv(rows, cfg.fmt), EXIT_OK


def cmd_regular(cfg: RunConfig, args: argparse.Namespace) -> tuple[str, int]:
    action = _require_lie(_load_action(cfg))
    report = estimate_c_g(action, seed=cfg.seed, samples=cfg.samples, e=cfg.ext or 4)
    if cfg.fmt == "tsv":
        out = "sample_index\tpoint\tcodim\n"
        out += "".join(
            f"{i}\t{_fmt_point(x)}\t{k}\n" for i, (x, k) in enumerate(zip(report.points, report.codims))
        )
        print(f"c = {report.estimate}", file=sys.stderr)
    else:
        regular = sum(k == report.estimate for k in report.codims)
        out = (
            f"{len(report.points)} points over GF({action.ring.p}^{cfg.ext or 4}); "
            f"{regular} attain the maximum\n"
            f"witness {_fmt_point(report.witness)}\n"
            f"c = {report.estimate}\n"
        )
    return out, EXIT_OK


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> tuple[str, int]:
    result = run_suite(args.suite, cfg.seed)
    out = result.to_tsv() if cfg.fmt == "tsv" else result.to_text()
    return out, EXIT_OK if result.passed else EXIT_FAIL


COMMANDS = {
    "charpoly": cmd_charpoly,
    "invariants": cmd_invariants,
    "stabilizer": cmd_stabilizer,
    "regular": cmd_regular,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", type=Path, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("tsv", "text"), default="tsv")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--cat", help="catalog name, e.g. W:1:2, torus:2:3, counterexample:2.remark")
    source.add_argument("--file", type=Path, help="algebra, action or group-action file")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=int, default=200)
    sampling.add_argument("--ext", type=int, help="extension degree e of F_{p^e}")

    parser = argparse.ArgumentParser(prog="modinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    cp = sub.add_parser("charpoly", parents=[common], help="psi_i invariants of W_n")
    cp.add_argument("--cat")
    cp.add_argument("--n", type=int)
    cp.add_argument("--p", type=int)
    mode = cp.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", action="store_true", help="symbolic psi_i (default)")
    mode.add_argument("--point", help="comma-separated coordinate codes of D")
    cp.add_argument("--ext", type=int)
    cp.add_argument("--allow-large", action="store_true", help="raise the symbolic size limit")

    inv = sub.add_parser("invariants", parents=[common, source], help="invariants degree by degree")
    inv.add_argument("--max-degree", type=int, default=2)
    inv.add_argument("--generators", help="'psi' or ';'-separated polynomials")

    st = sub.add_parser("stabilizer", parents=[common, source, sampling], help="stabilizer at a point")
    st.add_argument("--point")
    st.add_argument("--c", type=int, help="regular codimension; estimated when omitted")

    sub.add_parser("regular", parents=[common, source, sampling], help="estimate c_g by sampling")

    ver = sub.add_parser("verify", parents=[common], help="run verification suites")
    ver.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        out, status = COMMANDS[args.command](cfg, args)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        UsageError, ActionError, GroupError, FieldError, ParseError, DimensionMismatch,
        PreconditionError, catalog.CatalogError, OSError, ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output:
        cfg.output.write_text(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
