"""Command line front end: graded dimensions, structure checks and mode expressions.

Exit codes: 0 success, 1 a check failed, 2 invalid configuration or expression,
3 a resource limit was hit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .cache import BasisCache, default_cache_dir
from .current_rewrite import ModeSymbol, apply_mode
from .fock_states import LevelParams, ResourceLimitError, State, frac_str
from .graded_linalg import GradedBasis
from .parafermion_lab import (
    CHECKS,
    DEFAULT_CUTOFF,
    itilde_reference,
    j_ideal,
    n0_basis,
    named_vectors,
    proportionality,
    run_check,
    v0_basis,
)
from .vertex_modes import VirasoroKind, mode, virasoro_mode

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3

# cost grows roughly with the cube of the space dimensions; weight 7 must be asked for
MAX_CUTOFF = 6
LARGE_CUTOFF = 7

SPACES = ("V0", "N0", "J", "Itilde", "K0")


class ConfigError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Config:
    k: int
    cutoff: int
    cache_dir: Path | None
    output: str
    parallelism: int
    i_max: int = 3

    def __post_init__(self):
        LevelParams(self.k)
        if self.cutoff < 0:
            raise ConfigError("cutoff must be >= 0")
        if self.parallelism < 1:
            raise ConfigError("--jobs must be positive")
        if self.i_max < 1:
            raise ConfigError("--imax must be >= 1")
        if self.output not in ("json", "text"):
            raise ConfigError("output must be json or text")

    def cache(self) -> BasisCache | None:
        return None if self.cache_dir is None else BasisCache(self.cache_dir)


# -- expressions -------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<current>[hef])\(\s*(?P<cn>[+-]?\d+)\s*\)"
    r"|(?P<vir>Laff|Lgam|L)\(\s*(?P<vn>[+-]?\d+)\s*\)"
    r"|(?P<named>W3|W4|W5|omega)(?:_(?P<sub>[+-]?\d+|\{[+-]?\d+\}))?"
    r"|(?P<ket>\|0>)"
    r")"
)

_VIRASORO = {"L": VirasoroKind.AFF, "Laff": VirasoroKind.AFF, "Lgam": VirasoroKind.GAMMA}

Operator = Callable[[State], State]


def parse_expression(text: str, k: int) -> tuple[list[Operator], State]:
    """Split an expression into operators (applied right to left) and the final vector."""
    vectors = named_vectors(k)
    ops: list[Operator] = []
    ket: State | None = None
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected input {text[start:start + 8]!r}", start)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if ket is not None:
            raise ParseError("nothing may follow the final vector", start)
        if m.group("current"):
            sym = ModeSymbol(m.group("current"), int(m.group("cn")))
            ops.append(lambda v, sym=sym: apply_mode(sym, v, k))
        elif m.group("vir"):
            kind, n = _VIRASORO[m.group("vir")], int(m.group("vn"))
            ops.append(lambda v, kind=kind, n=n: virasoro_mode(kind, n, v, k))
        elif m.group("named"):
            u = vectors[m.group("named")]
            sub = m.group("sub")
            if sub is None:
                ket = u
            else:
                n = int(sub.strip("{}"))
                ops.append(lambda v, u=u, n=n: mode(u, n, v, k))
        else:
            ket = State.vacuum()
        pos = m.end()
    if ket is None:
        raise ParseError("expression must end in |0> or a named vector", len(text))
    return ops, ket


def evaluate(text: str, k: int) -> State:
    ops, v = parse_expression(text, k)
    for op in reversed(ops):
        v = op(v)
    return v


def identify(v: State, k: int) -> tuple[str, object] | None:
    """(name, scalar) when v is a nonzero multiple of a named vector."""
    if not v:
        return None
    for name, u in named_vectors(k).items():
        c = proportionality(v, u)
        if c is not None:
            return name, c
    return None


# -- commands ------------------------------------------------------------------------

def _space_dims(space: str, cfg: Config) -> tuple[dict[int, int], GradedBasis | None]:
    cache = cfg.cache()
    if space == "V0":
        b = v0_basis(cfg.cutoff, cfg.k)
        return b.dims(), b
    if space == "N0":
        b = n0_basis(cfg.cutoff, cfg.k, cache=cache)
        return b.dims(), b
    if space == "J":
        b = j_ideal(cfg.cutoff, cfg.k, cache=cache)
        return b.dims(), b
    if space == "Itilde":
        b = itilde_reference(cfg.cutoff, cfg.k, cache=cache)
        return b.dims(), b
    n0 = n0_basis(cfg.cutoff, cfg.k, cache=cache)
    ideal = itilde_reference(cfg.cutoff, cfg.k, cache=cache)
    return {n: n0.dim(n) - ideal.dim(n) for n in range(cfg.cutoff + 1)}, None


def cmd_dims(space: str, cfg: Config, with_vectors: bool = False) -> int:
    dims, basis = _space_dims(space, cfg)
    if cfg.output == "json":
        out = {"space": space, "k": cfg.k, "cutoff": cfg.cutoff, "dims": {str(n): d for n, d in dims.items()}}
        if with_vectors and basis is not None:
            out["basis"] = basis.to_json()
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"{space} k={cfg.k} cutoff={cfg.cutoff}: " + ",".join(str(dims[n]) for n in sorted(dims)))
        if with_vectors and basis is not None:
            for v in basis.vectors():
                print(f"  [{v.weight}, {v.charge}] {v}")
    return EXIT_OK


def _run_one(args: tuple) -> dict:
    name, cutoff, k, i_max, cache_dir = args
    cache = None if cache_dir is None else BasisCache(cache_dir)
    return run_check(name, cutoff, k, i_max=i_max, cache=cache).to_json()


def cmd_check(name: str, cfg: Config) -> int:
    names = list(CHECKS) if name == "all" else [name]
    for n in names:
        if n not in CHECKS:
            raise ConfigError(f"unknown check {n!r}; choose from all, {', '.join(CHECKS)}")
    jobs = [(n, cfg.cutoff, cfg.k, cfg.i_max, cfg.cache_dir) for n in names]
    if cfg.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]

    if cfg.output == "json":
        print(json.dumps(reports if name == "all" else reports[0], sort_keys=True))
    else:
        for r in reports:
            status = "SKIP" if r["skipped"] else ("PASS" if r["pass"] else "FAIL")
            print(f"[{status}] {r['check']} k={r['k']} cutoff={r['cutoff']}")
            for label, table in r["dims"].items():
                print(f"    {label}: " + ",".join(str(table[n]) for n in sorted(table, key=int)))
            for label, value in r["scalars"].items():
                print(f"    {label} = {Fraction(value)}")
            for note in r["notes"]:
                print(f"    {note}")
            if r["witness"] is not None:
                print(f"    witness: {State.from_json(r['witness'])}")
    failed = any(not r["pass"] and not r["skipped"] for r in reports)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_eval(expr: str, cfg: Config) -> int:
    v = evaluate(expr, cfg.k)
    named = identify(v, cfg.k)
    if cfg.output == "json":
        out = {"state": v.to_json(), "multiple_of": None}
        if named is not None:
            out["multiple_of"] = {"name": named[0], "scalar": frac_str(named[1])}
        print(json.dumps(out, sort_keys=True))
    else:
        print(v)
        if named is not None and not (named[1] == 1 and named[0] == "vacuum"):
            print(f"  = {named[1]} * {named[0]}")
    return EXIT_OK


# -- entry point --------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=2, help="level k >= 2 (default 2)")
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF,
                        help=f"weight cutoff (default {DEFAULT_CUTOFF})")
    common.add_argument("--allow-cutoff-7", action="store_true", help="permit the costly cutoff 7")
    common.add_argument("--cache-dir", type=Path, default=None,
                        help="basis cache directory (default: $PFVA_CACHE_DIR, else no cache)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for 'check all'")
    common.add_argument("--imax", type=int, default=3, help="largest i in the theta identities")

    parser = argparse.ArgumentParser(prog="pfva", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    d = sub.add_parser("dims", parents=[common], help="graded dimensions of a space")
    d.add_argument("space", choices=SPACES)
    d.add_argument("--vectors", action="store_true", help="also print the basis vectors")
    c = sub.add_parser("check", parents=[common], help="run a structure check")
    c.add_argument("name", help=f"one of all, {', '.join(CHECKS)}")
    e = sub.add_parser("eval", parents=[common], help="evaluate a mode expression")
    e.add_argument("expr", help='e.g. "h(1) f(-2) e(-1) |0>" or "W3_3 W3"')
    return parser


def _config(args: argparse.Namespace) -> Config:
    cap = LARGE_CUTOFF if args.allow_cutoff_7 else MAX_CUTOFF
    if args.command != "eval" and args.cutoff > cap:
        hint = "" if args.allow_cutoff_7 else " (pass --allow-cutoff-7 for 7)"
        raise ResourceLimitError(f"cutoff {args.cutoff} exceeds the supported maximum {cap}{hint}")
    cache_dir = args.cache_dir if args.cache_dir is not None else default_cache_dir()
    try:
        return Config(args.k, args.cutoff, cache_dir, "json" if args.json else "text", args.jobs, args.imax)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        if args.command == "dims":
            return cmd_dims(args.space, cfg, args.vectors)
        if args.command == "check":
            return cmd_check(args.name, cfg)
        return cmd_eval(args.expr, cfg)
    except ParseError as exc:
        print(f"pfva: parse error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"pfva: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceLimitError as exc:
        print(f"pfva: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
