"""Command-line front end: ``filtra <command> [options]``.

Every command builds a :class:`~filtra.report.Report`; the process exits with
status 1 when any verdict in the run is a falsification, 2 on bad
configuration or resource-cap errors, and 0 otherwise.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

from .growth import DEFAULT_MAX_DEGREE, fit_quasi_polynomial
from .inequalities import (
    commutative_subalgebra_bound,
    filter_dimension_consistency,
    first_filter_bound,
    first_filter_report,
    holonomic_classify,
    length_bounds,
    second_filter_bound,
    weyl_constants,
)
from .linalg import ResourceLimitError
from .modules import (
    ConcreteModule,
    algebra_dimension_sequence,
    load_module,
    module_dimension_sequence,
    random_cyclic_quotient,
)
from .poisson import as_poisson, independence_check, isotropic_bound_report, isotropic_check
from .report import FORMATS, Report, emit_report
from .returns import return_function_profile
from .weyl import Polynomial, render

COMMANDS = ("dims", "gk", "hilbert", "return-fn", "bernstein", "length-bounds", "bounds", "poisson-check")
DEFAULT_FORMAT = {"dims": "csv"}
# per-command overrides of the ExperimentConfig defaults
COMMAND_DEFAULTS = {
    "gk": {"imax": 10},
    "hilbert": {"imax": 10},
    "return-fn": {"imax": 4},
}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str
    n: int | None = None
    imax: int = 8
    jmax: int | None = None
    cutoff: int | None = None
    samples: int = 0
    seed: int | None = None
    modules: list = field(default_factory=list)
    random: int = 0
    period: int = 1
    max_degree: int = DEFAULT_MAX_DEGREE
    nmax: int = 4
    gens: list = field(default_factory=list)
    length: int | None = None
    format: str | None = None
    output: str | None = None
    jobs: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        for name in ("imax", "samples", "random", "nmax", "max_degree"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        for name in ("n", "jmax", "cutoff", "length"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ConfigError(f"{name} must be >= 0")
        if self.period < 1 or self.jobs < 1:
            raise ConfigError("period and jobs must be >= 1")
        if (self.samples or self.random) and self.seed is None:
            raise ConfigError("a seed is mandatory for sampled runs")
        if self.format is not None and self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
        if "command" not in data:
            raise ConfigError("config needs a 'command'")
        merged = dict(COMMAND_DEFAULTS.get(data["command"], {}))
        merged.update(data)
        return cls(**merged)


def _modules(config: ExperimentConfig) -> list:
    out = []
    for desc in config.modules:
        module = load_module(desc)
        out.append(module)
    return out


def _need_n(config: ExperimentConfig) -> int:
    if config.n is None:
        raise ConfigError(f"{config.command} needs --n")
    return config.n


def _module_or_algebra_sequence(config: ExperimentConfig):
    mods = _modules(config)
    if mods:
        return module_dimension_sequence(mods[0], config.imax)
    return algebra_dimension_sequence(_need_n(config), config.imax)


def _degree_bound(config: ExperimentConfig, length: int, period: int) -> int:
    """The configured degree bound, clipped to what ``length`` values can support."""
    room = length // period - 2
    if room < 0:
        raise ConfigError(f"imax {config.imax} is too small for period {period}")
    return min(config.max_degree, room)


def cmd_dims(config: ExperimentConfig) -> Report:
    seq = _module_or_algebra_sequence(config)
    rows = [{"i": i, "dim": v, "exact": e} for i, (v, e) in enumerate(zip(seq.values, seq.exact))]
    return Report("dims", rows, ["i", "dim", "exact"], {"source": seq.source})


def cmd_gk(config: ExperimentConfig) -> Report:
    seq = _module_or_algebra_sequence(config)
    bound = _degree_bound(config, len(seq), 1)
    fit = fit_quasi_polynomial(seq, 1, bound)
    return Report("gk", [fit.to_json()], meta={"source": seq.source, "max_degree": bound})


def cmd_hilbert(config: ExperimentConfig) -> Report:
    seq = _module_or_algebra_sequence(config)
    bound = _degree_bound(config, len(seq), config.period)
    fit = fit_quasi_polynomial(seq, config.period, bound)
    rows = []
    for j, coeffs in enumerate(fit.polynomials):
        poly = Polynomial(1, {(k,): c for k, c in enumerate(coeffs)})
        rows.append({"residue": j, "polynomial": render(poly).replace("x1", "i"), "coefficients": list(coeffs)})
    meta = {
        "source": seq.source, "status": fit.status, "degree": fit.degree,
        "leading_coefficient": fit.leading_coefficient, "multiplicity": fit.multiplicity,
        "fit_from": fit.fit_from, "denominators_ok": fit.denominators_ok(), "max_degree": bound,
    }
    return Report("hilbert", rows, ["residue", "polynomial", "coefficients"], meta)


def cmd_return_fn(config: ExperimentConfig) -> Report:
    mods = _modules(config)
    if mods:
        target = mods[0]
        if not isinstance(target, ConcreteModule):
            raise ConfigError("return-fn needs a concrete module (kind polynomial, twisted or sum)")
        profile = return_function_profile(target, config.imax, config.samples, config.seed, config.jmax)
    else:
        n = _need_n(config)
        if config.jobs > 1:
            with ProcessPoolExecutor(config.jobs) as pool:
                profile = return_function_profile(n, config.imax, config.samples, config.seed, executor=pool)
        else:
            profile = return_function_profile(n, config.imax, config.samples, config.seed)
    rows = [r.to_json() for r in profile.rows]
    fd = filter_dimension_consistency(profile)
    meta = {
        "target": profile.target, "samples": profile.samples, "seed": profile.seed,
        "certified_upper": profile.certified_upper, "cyclic_restricted": profile.cyclic_restricted,
        "fd_lower": fd.fd_lower, "fd_upper": fd.fd_upper,
        "fd_checks": [v.text() for v in fd.verdicts] + list(fd.notes),
    }
    falsified = any(v.falsification for v in fd.verdicts)
    # tables keep the interval columns; the JSON form carries the witness chains
    return Report("return-fn", rows, ["i", "lower", "upper", "exact"], meta, falsified)


def _fits_for(config: ExperimentConfig):
    named = []
    for desc, module in zip(config.modules, _modules(config)):
        named.append((getattr(module, "description", str(desc)), module))
    if config.random:
        rng = random.Random(config.seed)
        n = config.n or 1
        cutoff = config.cutoff if config.cutoff is not None else config.imax + 1
        for _ in range(config.random):
            module = random_cyclic_quotient(n, rng, cutoff)
            named.append((module.description, module))
    if not named:
        raise ConfigError(f"{config.command} needs --module or --random")
    fits = []
    for name, module in named:
        i_max = config.imax
        if not isinstance(module, ConcreteModule):
            i_max = min(i_max, module.cutoff)
        seq = module_dimension_sequence(module, i_max)
        bound = _degree_bound(config, len(seq), config.period)
        fits.append((name, module, fit_quasi_polynomial(seq, config.period, bound)))
    return fits


def cmd_bernstein(config: ExperimentConfig) -> Report:
    fits = _fits_for(config)
    ns = {m.n for _, m, _ in fits}
    if len(ns) != 1:
        raise ConfigError("all modules in one run must share n")
    n = ns.pop()
    verdicts = first_filter_report(n, [f for _, _, f in fits], [name for name, _, _ in fits])
    rows = []
    for (name, _, fit), verdict in zip(fits, verdicts):
        rows.append({
            "module": name, "gk": fit.degree, "multiplicity": fit.multiplicity,
            "exact_data": fit.exact_data, "verdict": verdict.text(),
        })
    meta = {"n": n, "bound": first_filter_bound(2 * n, 1), "seed": config.seed}
    return Report("bernstein", rows, None, meta, any(v.falsification for v in verdicts))


def cmd_length_bounds(config: ExperimentConfig) -> Report:
    fits = _fits_for(config)
    rows = []
    falsified = False
    for name, module, fit in fits:
        row = {"module": name, "gk": fit.degree, "l": fit.leading_coefficient, "e": fit.multiplicity}
        try:
            holonomic, _ = holonomic_classify(module.n, fit)
        except ValueError as exc:
            row["status"] = f"skipped ({exc})"
            rows.append(row)
            continue
        if not holonomic:
            row["status"] = "skipped (not holonomic)"
            rows.append(row)
            continue
        bounds = length_bounds(module.n, fit, config.period)
        row.update(bound_lc=str(bounds.by_leading_coefficient), bound_mult=bounds.by_multiplicity,
                   c_A=str(bounds.c_A), c_A_squared=bounds.c_A.square)
        if config.length is not None:
            ok = bounds.admits(config.length)
            falsified |= not ok
            row["length"] = config.length
            row["status"] = "holds" if ok else "FALSIFIED"
        else:
            row["status"] = "computed"
        rows.append(row)
    return Report("length-bounds", rows, None, {"period": config.period}, falsified)


def cmd_bounds(config: ExperimentConfig) -> Report:
    rows = []
    for n in range(1, config.nmax + 1):
        const = weyl_constants(n)
        rows.append({
            "n": n, "GK": 2 * n, "d": const.filter_dimension,
            "first_filter_bound": first_filter_bound(2 * n, const.filter_dimension),
            "second_filter_bound": second_filter_bound(2 * n, const.filter_dimension),
            "commutative_subalgebra_bound": commutative_subalgebra_bound(2 * n, const.filter_dimension),
            "c_A_squared": const.c_A.square,
        })
    return Report("bounds", rows)


def cmd_poisson_check(config: ExperimentConfig) -> Report:
    n = _need_n(config)
    gens = [as_poisson(g, 2 * n) for g in config.gens]
    if not gens:
        raise ConfigError("poisson-check needs --gens")
    iso = isotropic_check(gens)
    row = {
        "n": n, "generators": [str(g) for g in gens], "isotropic": iso.isotropic,
        "independent": independence_check(gens),
    }
    if not iso.isotropic:
        f, g = iso.pair
        row["offending_pair"] = f"{{{f}, {g}}} = {iso.bracket}"
    elif row["independent"]:
        rep = isotropic_bound_report(n, gens)
        row.update(bound=rep.bound, margin=rep.margin, tight=rep.margin == 0,
                   symbols_independent=rep.symbols_independent, holds=rep.holds)
        return Report("poisson-check", [row], None, {}, not rep.holds)
    return Report("poisson-check", [row])


HANDLERS = {
    "dims": cmd_dims,
    "gk": cmd_gk,
    "hilbert": cmd_hilbert,
    "return-fn": cmd_return_fn,
    "bernstein": cmd_bernstein,
    "length-bounds": cmd_length_bounds,
    "bounds": cmd_bounds,
    "poisson-check": cmd_poisson_check,
}


def execute(config: ExperimentConfig) -> Report:
    config.validate()
    return HANDLERS[config.command](config)


def run(config: ExperimentConfig, stdout=None) -> int:
    """Run one experiment, write its report, and return the exit status."""
    stdout = stdout or sys.stdout
    try:
        report = execute(config)
    except (ConfigError, ResourceLimitError, ValueError, KeyError, OSError) as exc:
        print(f"filtra: error: {exc}", file=sys.stderr)
        return 2
    fmt = config.format or DEFAULT_FORMAT.get(config.command, "markdown")
    text = emit_report(report, fmt, config.output)
    if config.output is None:
        stdout.write(text)
    return 1 if report.falsified else 0


def _relative_to(config_path: str, module):
    """Module file paths in a config file are resolved against the config's directory first."""
    if not isinstance(module, str) or module.lstrip().startswith("{"):
        return module
    candidate = Path(config_path).resolve().parent / module
    if not Path(module).is_absolute() and not Path(module).exists() and candidate.exists():
        return str(candidate)
    return module


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="filtra", description="Filtered Weyl-algebra experiments.",
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument("--config", help="JSON experiment config (keys mirror the long options)")
    sub = parser.add_subparsers(dest="command")
    sub_kwargs = {"argument_default": argparse.SUPPRESS}

    def common(p):
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--output")
        p.add_argument("--jobs", type=int)

    def module_opts(p):
        p.add_argument("--module", dest="modules", action="append",
                       help="module description file or inline JSON (repeatable)")

    p = sub.add_parser("dims", help="filtration dimensions of A_n or a module", **sub_kwargs)
    p.add_argument("--n", type=int)
    p.add_argument("--imax", type=int)
    module_opts(p)
    common(p)

    for name, help_text in (("gk", "GK dimension fit"), ("hilbert", "quasi-polynomial Hilbert functions")):
        p = sub.add_parser(name, help=help_text, **sub_kwargs)
        p.add_argument("--n", type=int)
        p.add_argument("--imax", type=int)
        p.add_argument("--max-degree", type=int)
        if name == "hilbert":
            p.add_argument("--period", type=int)
        module_opts(p)
        common(p)

    p = sub.add_parser("return-fn", help="return-function profile", **sub_kwargs)
    p.add_argument("--n", type=int)
    p.add_argument("--imax", type=int)
    p.add_argument("--jmax", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    module_opts(p)
    common(p)

    for name, help_text in (("bernstein", "first filter / Bernstein inequality"),
                            ("length-bounds", "holonomic length bounds")):
        p = sub.add_parser(name, help=help_text, **sub_kwargs)
        p.add_argument("--n", type=int)
        p.add_argument("--imax", type=int)
        p.add_argument("--cutoff", type=int)
        p.add_argument("--random", type=int, help="number of random cyclic modules")
        p.add_argument("--seed", type=int)
        p.add_argument("--period", type=int)
        p.add_argument("--max-degree", type=int)
        if name == "length-bounds":
            p.add_argument("--length", type=int, help="known length to check against the bounds")
        module_opts(p)
        common(p)

    p = sub.add_parser("bounds", help="second filter and commutative-subalgebra bound tables", **sub_kwargs)
    p.add_argument("--nmax", type=int)
    common(p)

    p = sub.add_parser("poisson-check", help="isotropy, independence and GK bound in P_2n", **sub_kwargs)
    p.add_argument("--n", type=int)
    p.add_argument("--gens", type=lambda s: [g.strip() for g in s.split(",") if g.strip()])
    common(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    data = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"filtra: error: cannot read config: {exc}", file=sys.stderr)
            return 2
        data["modules"] = [_relative_to(args.config, m) for m in data.get("modules", [])]
    if getattr(args, "command", None) is None and "command" not in data:
        parser.print_help(sys.stderr)
        return 2
    # explicit command-line values win over the config file
    cli = {k: v for k, v in vars(args).items() if k != "config" and v is not None}
    data.update(cli)
    try:
        config = ExperimentConfig.from_dict(data)
    except (ConfigError, TypeError) as exc:
        print(f"filtra: error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
