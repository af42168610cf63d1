"""Command-line entry point: ``betherec build`` and ``betherec check``.

Exit codes: 0 all pass, 1 a check failed, 2 configuration error, 3 sampling
exhaustion or degenerate parameters.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .algebra import AlgebraSpec, gl, o_odd
from .bethe import BetheBuilder, vector_to_json
from .chain import ConfigError, NoVacuumFound
from .colored import ColoredSets
from .report import FAIL, SKIPPED
from .sampling import Sampler, SamplingExhausted
from .scalars import PoleError, ZeroNormalization, rat
from .suite import SUITES, SuiteConfig, run_suite
from .verify import random_twists, sample_chain, solve_on_shell_twists

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_SAMPLING = 0, 1, 2, 3
SEED_ENV = "BETHEREC_SEED"
OUT_ENV = "BETHEREC_OUT_DIR"


class UsageError(ValueError):
    """Invalid command-line or config-file input."""


# ---------------------------------------------------------------------------
# parsing helpers


def parse_rational(text: str):
    try:
        return rat(text.strip())
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"not a rational: {text!r}") from exc


def parse_list(text: str) -> list:
    text = text.strip().strip("[]")
    return [parse_rational(x) for x in text.split(",") if x.strip()]


def parse_colorspec(text: str) -> dict[int, list]:
    """``color:[r1,r2,...]`` joined by ``;``."""
    out: dict[int, list] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise UsageError(f"bad color spec {chunk!r}; expected color:[r1,...]")
        color, values = chunk.split(":", 1)
        try:
            s = int(color)
        except ValueError as exc:
            raise UsageError(f"bad color {color!r}") from exc
        if s in out:
            raise UsageError(f"color {s} given twice")
        out[s] = parse_list(values)
    return out


def make_algebra(family: str, n: int) -> AlgebraSpec:
    if n is None:
        raise UsageError("--n is required")
    try:
        return gl(n) if family == "gl" else o_odd(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write(text: str, out: str | None, default_name: str) -> None:
    if out is None and os.environ.get(OUT_ENV):
        out = str(Path(os.environ[OUT_ENV]) / default_name)
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _seed(args, config: dict) -> int:
    if args.seed is not None:
        return args.seed
    if os.environ.get(SEED_ENV):
        try:
            return int(os.environ[SEED_ENV])
        except ValueError as exc:
            raise UsageError(f"{SEED_ENV} must be an integer") from exc
    return int(config.get("seed", 0))


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return data


def _pick(args, config: dict, name: str, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.get(name, default)


# ---------------------------------------------------------------------------
# build


def _build_chain(args, config: dict, alg: AlgebraSpec, sampler: Sampler, params: dict):
    L = _pick(args, config, "sites")
    xi_spec = _pick(args, config, "xi", "random")
    chi_spec = _pick(args, config, "chi", "random")
    c = parse_rational(str(_pick(args, config, "c", "1")))
    kinds = _pick(args, config, "site_kinds")
    if c == 0:
        raise ConfigError("c must be nonzero")
    if isinstance(xi_spec, str) and xi_spec != "random":
        xi = parse_list(xi_spec)
    elif isinstance(xi_spec, list):
        xi = [parse_rational(str(x)) for x in xi_spec]
    else:
        if L is None:
            raise UsageError("--sites is required with random inhomogeneities")
        xi = None
    if xi is not None and L is not None and len(xi) != int(L):
        raise ConfigError(f"--sites {L} but {len(xi)} inhomogeneities given")
    site_kinds = None
    if kinds:
        site_kinds = [k.strip() for k in kinds.split(",")] if isinstance(kinds, str) else list(kinds)
    from .chain import ChainModel

    if xi is None:
        base = sample_chain(alg, int(L), sampler, c=c, twists="unit", sites=site_kinds)
        xi = list(base.xi)
    if chi_spec == "random":
        chi = random_twists(alg, sampler)
    elif chi_spec in ("onshell", "solve-on-shell"):
        chi = None
    else:
        values = parse_list(chi_spec) if isinstance(chi_spec, str) else [parse_rational(str(x)) for x in chi_spec]
        if len(values) != len(alg.indices):
            raise ConfigError(f"--chi needs {len(alg.indices)} values in index order {list(alg.indices)}")
        chi = dict(zip(alg.indices, values))
    chain = ChainModel(alg, xi, chi, c, sites=site_kinds)
    if chi_spec in ("onshell", "solve-on-shell"):
        roots = ColoredSets(alg, params)
        solution = solve_on_shell_twists(chain, roots)
        chain = solution.chain
    return chain


def cmd_build(args) -> int:
    config = _load_config(args.config)
    family = _pick(args, config, "algebra", "gl")
    alg = make_algebra(family, _pick(args, config, "n"))
    seed = _seed(args, config)
    spec = _pick(args, config, "params", "")
    params = parse_colorspec(spec) if isinstance(spec, str) else {int(k): [parse_rational(str(x)) for x in v] for k, v in spec.items()}
    for s in params:
        if not alg.has_color(s):
            raise ConfigError(f"color {s} is not legal for {alg.label()}")
    for s, values in params.items():
        if len(set(values)) != len(values):
            raise PoleError(f"color {s} has coinciding parameters; choose distinct values")
    sampler = Sampler(seed)
    chain = _build_chain(args, config, alg, sampler, params)
    vec = BetheBuilder(chain).build(ColoredSets(alg, params))
    data = vector_to_json(chain, vec)
    data["chain"] = chain.describe()
    data["params"] = ColoredSets(alg, params).to_json()
    _write(_dump(data), args.out, "vector.json")
    return EXIT_OK


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> int:
    config = _load_config(args.config)
    suite = _pick(args, config, "suite", "all")
    if suite not in ("all",) + SUITES:
        raise UsageError(f"unknown suite {suite!r}")
    c = _pick(args, config, "c")
    c = parse_rational(str(c)) if c is not None else None
    if c is not None and c == 0:
        raise ConfigError("c must be nonzero")
    n = _pick(args, config, "n")
    algebra = _pick(args, config, "algebra")
    points = int(config.get("identity_points", 100))
    cfg = SuiteConfig(
        suite=suite,
        seed=_seed(args, config),
        c=c,
        algebra=algebra,
        n=int(n) if n is not None else None,
        tamper=args.tamper,
        identity_points=points,
    )
    reports = run_suite(cfg)
    payload = [r.to_json(timing=args.timing) for r in reports]
    _write(_dump(payload), args.out, "report.json")
    statuses = {r.status for r in reports}
    failed = sum(r.status == FAIL for r in reports)
    skipped = sum(r.status == SKIPPED for r in reports)
    sys.stderr.write(f"{len(reports)} checks, {failed} failed, {skipped} skipped\n")
    if FAIL in statuses:
        return EXIT_FAIL
    if SKIPPED in statuses:
        return EXIT_SAMPLING
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="betherec", description="Exact off-shell Bethe vectors and their checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--algebra", choices=["gl", "o"], default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--c", default=None, help="rational constant c (p/q or integer)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--config", default=None, help="JSON config file")

    b = sub.add_parser("build", help="write the Bethe vector of one configuration as JSON")
    common(b)
    b.add_argument("--sites", type=int, default=None, help="number of sites L")
    b.add_argument("--xi", default=None, help="comma list of inhomogeneities, or 'random'")
    b.add_argument("--chi", default=None, help="comma list of twists in index order, 'random' or 'onshell'")
    b.add_argument("--params", default=None, help="COLORSPEC, e.g. '1:[1/3];2:[1/2,3/4]'")
    b.add_argument("--site-kinds", dest="site_kinds", default=None, help="comma list of fundamental/dual per site (gl)")
    b.set_defaults(func=cmd_build)

    ch = sub.add_parser("check", help="run verification suites and write a JSON report array")
    common(ch)
    ch.add_argument("--suite", default=None, choices=("all",) + SUITES)
    ch.add_argument("--timing", action="store_true", help="include wall-clock millis in reports")
    ch.add_argument("--tamper", default=None, help=argparse.SUPPRESS)
    ch.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError, NoVacuumFound) as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG
    except (SamplingExhausted, PoleError, ZeroNormalization, ZeroDivisionError) as exc:
        sys.stderr.write(f"degenerate parameters: {exc}; resample or choose generic values\n")
        return EXIT_SAMPLING


if __name__ == "__main__":
    sys.exit(main())
