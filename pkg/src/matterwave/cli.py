"""Command-line front end: ``python -m matterwave <experiment> [flags]``.

Subcommands are generated from the experiment registry. Parameters can also
come from an INI-style config file (one section per experiment, plus an
optional ``[global]`` section for output, format, seed and threads);
command-line flags override the file.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys

from . import __version__
from .acceptance import format_table
from .experiments import REGISTRY, InvalidParameter, UnknownExperiment, run_experiment
from .grid import ConfigurationError
from .report import ExperimentConfig

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3
EXIT_INVALID = 4
EXIT_IO = 5

EPILOG = """exit codes:
  0  success
  1  a check or acceptance criterion failed (suite, or a report with pass = false)
  2  usage error (bad flag, unknown suite name)
  3  unknown experiment
  4  invalid parameter value or unknown config key
  5  I/O failure (config file unreadable, output not writable)

errors are written to stderr as one JSON object: {"error", "message", "exit_code"}"""

GLOBAL_KEYS = ("output", "format", "seed", "threads")


class _Exit(Exception):
    def __init__(self, code, kind, message):
        super().__init__(message)
        self.code, self.kind, self.message = code, kind, message


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        if message.startswith("argument EXPERIMENT: invalid choice"):
            raise _Exit(EXIT_UNKNOWN, "unknown_experiment", message)
        raise _Exit(EXIT_USAGE, "usage", f"{self.prog}: {message}")


def _global_flags(parser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--output", default=default, help="write the report to this path instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default=default, help="report format (default json)")
    parser.add_argument("--seed", default=default, help="RNG seed for stochastic experiments")
    parser.add_argument("--threads", default=default, help="worker cap for the acceptance suite (default 1)")
    parser.add_argument("--config", default=default, help="INI config file with per-experiment sections")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="matterwave", description="Material-wave numerical laboratory.",
                     epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="experiment", metavar="EXPERIMENT", parser_class=_Parser)
    for exp in REGISTRY.values():
        sp = sub.add_parser(exp.name, help=exp.help, description=exp.help, parents=[common],
                            epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
        for p in exp.params:
            hint = f"{p.help} (default {p.default!r}"
            hint += f"; one of {', '.join(map(str, p.choices))})" if p.choices else ")"
            if p.positional:
                sp.add_argument(p.key, nargs="?", default=argparse.SUPPRESS, choices=p.choices, help=hint)
            elif p.type is bool:
                sp.add_argument(f"--{p.name}", dest=p.key, nargs="?", const="true", default=argparse.SUPPRESS,
                                help=hint)
            else:
                sp.add_argument(f"--{p.name}", dest=p.key, default=argparse.SUPPRESS, help=hint)
    return parser


def _read_config(path: str, experiment: str) -> tuple[dict, dict]:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise _Exit(EXIT_IO, "io", f"cannot read config {path!r}: {exc.strerror or exc}") from None
    except configparser.Error as exc:
        raise _Exit(EXIT_INVALID, "invalid_parameter", f"malformed config {path!r}: {exc}") from None
    for section in cp.sections():
        if section != "global" and section not in REGISTRY:
            raise _Exit(EXIT_INVALID, "invalid_parameter", f"config section {section!r} is not an experiment")
    glob = dict(cp["global"]) if cp.has_section("global") else {}
    unknown = set(glob) - set(GLOBAL_KEYS)
    if unknown:
        raise _Exit(EXIT_INVALID, "invalid_parameter", f"unknown [global] keys: {sorted(unknown)}")
    params = dict(cp[experiment]) if cp.has_section(experiment) else {}
    return glob, params


def _int(value, name, minimum=None):
    try:
        f = float(value)
        if not f.is_integer():
            raise ValueError
        v = int(f)
    except (TypeError, ValueError):
        raise _Exit(EXIT_INVALID, "invalid_parameter", f"--{name} expects an integer, got {value!r}") from None
    if minimum is not None and v < minimum:
        raise _Exit(EXIT_INVALID, "invalid_parameter", f"--{name} must be at least {minimum}")
    return v


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    name = args.experiment
    exp = REGISTRY[name]
    keys = {p.key for p in exp.params}
    glob, params = ({}, {})
    if getattr(args, "config", None):
        glob, params = _read_config(args.config, name)
    for key in keys:
        if hasattr(args, key):
            params[key] = getattr(args, key)
    settings = {k: glob.get(k) for k in GLOBAL_KEYS}
    for k in GLOBAL_KEYS:
        if getattr(args, k, None) is not None:
            settings[k] = getattr(args, k)
    fmt = settings["format"] or "json"
    if fmt not in ("json", "csv"):
        raise _Exit(EXIT_INVALID, "invalid_parameter", f"format must be json or csv, got {fmt!r}")
    seed = _int(settings["seed"], "seed") if settings["seed"] is not None else None
    threads = _int(settings["threads"], "threads", 1) if settings["threads"] is not None else 1
    return ExperimentConfig(experiment=name, params=params, output=settings["output"], format=fmt,
                            seed=seed, threads=threads)


def run(config: ExperimentConfig, stdout=None) -> int:
    """Run one configured experiment, write its report and return the exit code."""
    stdout = stdout or sys.stdout
    ctx = {}
    try:
        report = run_experiment(config.experiment, config.params, seed=config.seed, threads=config.threads, ctx=ctx)
    except UnknownExperiment as exc:
        raise _Exit(EXIT_UNKNOWN, "unknown_experiment", f"unknown experiment {exc.args[0]!r}") from None
    except (InvalidParameter, ConfigurationError, ValueError) as exc:
        raise _Exit(EXIT_INVALID, "invalid_parameter", str(exc)) from None
    text = report.render(config.format)
    if "suite_results" in ctx:
        stdout.write(format_table(ctx["suite_results"]) + "\n")
    if config.output:
        try:
            with open(config.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise _Exit(EXIT_IO, "io", f"cannot write {config.output!r}: {exc.strerror or exc}") from None
    elif "suite_results" not in ctx:
        stdout.write(text)
    return EXIT_FAILED if report.passed is False else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.experiment:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        return run(_config_from_args(args))
    except _Exit as exc:
        sys.stderr.write(json.dumps({"error": exc.kind, "message": exc.message, "exit_code": exc.code},
                                    sort_keys=True) + "\n")
        return exc.code
