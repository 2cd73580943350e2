"""Command-line entry point: point evaluations, model solves, geometry checks and sweeps."""

from __future__ import annotations

import argparse
import asyncio
import logging
import pathlib
import sys
import typing

from alterna import errors
from alterna import geometry
from alterna import model1d
from alterna import models
from alterna import specfun
from alterna.impl import config_factory
from alterna.impl import runner
from alterna.internal import data_binding

__all__: typing.Sequence[str] = (
    "build_parser",
    "cmd_specfun",
    "cmd_model",
    "cmd_geometry_validate",
    "cmd_run",
    "main",
)


_LOGGER = logging.getLogger("alterna.cli")

_SPECFUN_NAMES: typing.Final[typing.Sequence[str]] = (
    "X",
    "X_series",
    "Y",
    "Y1",
    "X_eta",
    "Z",
    "theta",
)


def _format(value: float) -> str:
    return f"{value:.12g}"


# Subcommands...


def cmd_specfun(args: argparse.Namespace) -> int:
    name: str = args.function
    first: float = args.first
    second: float = args.second
    ctl = models.SeriesControl(max_terms=args.max_terms, tail_bound=args.tail_bound)

    if name == "theta":
        result = specfun.eval_theta(models.ThetaArguments(first, second), ctl)
        print(f"theta({first:g}, {second:g}) = {_format(result.value)}")
        print(f"tail bound: {result.tail_bound:.3e}")
        print(f"branch: series with {result.terms} terms and a Hurwitz zeta tail correction")
        return 0

    point = models.PlanePoint(first, second)
    label = f"{name}({first:g}, {second:g})"

    if name == "X":
        value = specfun.eval_X(point)
        print(f"{label} = {_format(value)}")
        print("tail bound: 0 (closed form)")
        print("branch: ln|1 - exp(2i(xi1 + i xi2))|")
        return 0

    if name == "X_series":
        result = specfun.eval_X_series(point, ctl)
        print(f"{label} = {_format(result.value)}")
        print(f"tail bound: {result.tail_bound:.3e}")
        print(f"branch: Fourier series with {result.terms} terms")
        return 0

    if name in ("Y", "Y1"):
        value = specfun.eval_Y(point) if name == "Y" else specfun.eval_Y1_leading(point)
        print(f"{label} = {_format(value)}")
        print("tail bound: 0 (closed form)")
        print("branch: sqrt(z - 1) sqrt(z + 1) with the cut on [-1, 1]")
        return 0

    if name == "X_eta":
        value = specfun.eval_X_eta(point, args.eta)
        print(f"{label} = {_format(value)} (eta={args.eta:g})")
        print("tail bound: 0 (closed form)")
        print("branch: xi1 folded onto [0, pi/2]; principal square root")
        return 0

    result = specfun.eval_Z(point, args.eps_b, args.beta, ctl)
    print(f"{label} = {_format(result.value)} (eps_b={args.eps_b:g}, beta={args.beta:g})")
    print(f"tail bound: {result.tail_bound:.3e}")
    print(f"branch: series with {result.terms} terms")
    return 0


def cmd_model(args: argparse.Namespace) -> int:
    coefficient = models.RobinCoefficient(b=args.b, K=args.K, mu=args.mu)

    if args.sub == "lambda":
        print("n\tLambda_n\tresidual\tbranch")
        for eigenvalue in model1d.lambda_spectrum(coefficient, args.n, args.tol):
            branch = "hyperbolic" if eigenvalue.value < 0.0 else "trigonometric"
            print(
                f"{eigenvalue.index}\t{_format(eigenvalue.value)}\t{eigenvalue.residual:.2e}\t{branch}",
            )

        return 0

    if args.sub == "bottom":
        root = model1d.solve_bottom_root(args.eps, coefficient, args.tol)
        leading = model1d.lambda_n(coefficient, 1, args.tol)
        print("epsilon\tLambda_1\tLambda\tresidual\tmethod")
        print(
            f"{args.eps:g}\t{_format(leading.value)}\t{_format(root.value)}"
            f"\t{root.residual:.2e}\t{root.method}",
        )
        return 0

    candidates = model1d.upsilon_candidates(coefficient)
    print("coefficient\tvalue")
    print(f"published_first\t{_format(candidates.published_first)}")
    print(f"published_second\t{_format(candidates.published_second)}")
    for power, value in sorted(candidates.taylor.items()):
        print(f"taylor_eps{power}\t{_format(value)}")

    if args.epsilons:
        fit = model1d.upsilon_fit(coefficient, args.epsilons, args.degree)
        for power, value in enumerate(fit.coefficients, start=1):
            print(f"fit_eps{power}\t{_format(value)}")

        print(f"fit_residual\t{fit.residual:.3e}")

    return 0


def _load_document(path: str) -> data_binding.JSONObject:
    try:
        text = pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"Cannot read {path}: {exc.strerror or exc}."
        raise errors.ConfigError(msg) from exc

    try:
        payload = data_binding.load_json(text)
    except data_binding.JSONDecodeError as exc:
        msg = f"{path} is not valid JSON: {exc}"
        raise errors.ConfigError(msg) from exc

    if not isinstance(payload, typing.Mapping):
        msg = f"{path} must contain a JSON object."
        raise errors.ConfigError(msg)

    return typing.cast(data_binding.JSONObject, payload)


def cmd_geometry_validate(args: argparse.Namespace) -> int:
    factory = config_factory.ConfigFactory()
    geom = factory.deserialize_geometry(_load_document(args.document))
    report = geometry.validate_assumptions(geom)

    print(f"c1\t{_format(report.c1)}")
    if report.c2 is not None:
        print(f"c2\t{_format(report.c2)}")
    if report.c3 is not None:
        print(f"c3\t{_format(report.c3)}")
    print(f"overlap_margin\t{_format(report.overlap_margin)}")
    print(f"anchor_error\t{report.anchor_error:.3e}")
    for name, passed in report.passed.items():
        print(f"{name}\t{'pass' if passed else 'FAIL'}")

    return 0 if report.ok else 1


async def _run(config: models.RunConfig) -> data_binding.JSONObject:
    async with runner.SweepRunner.from_config(config) as sweep_runner:
        return await sweep_runner.run_and_write(config.plan)


def cmd_run(args: argparse.Namespace) -> int:
    factory = config_factory.ConfigFactory()
    config = factory.deserialize_run_config(_load_document(args.config))
    if args.workers is not None:
        config = models.RunConfig(
            plan=config.plan,
            output_directory=config.output_directory,
            workers=args.workers,
        )

    summary = asyncio.run(_run(config))

    observables = typing.cast(typing.Sequence[data_binding.JSONObject], summary["observables"])
    for entry in observables:
        fit = typing.cast("data_binding.JSONObject | None", entry["rate_fit"])
        slope = "-" if fit is None else f"{typing.cast(float, fit['slope']):.3f}"
        print(f"{entry['name']}\tslope {slope}\trecords {entry['records']}")

    print(f"Wrote {config.plan.experiment.csv_name} to {config.output_directory}")
    return 0


# Parser...


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alterna")
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
    )
    parser.add_argument("--json-impl", default="json", choices=("json", "orjson"))
    commands = parser.add_subparsers(dest="command", required=True)

    special = commands.add_parser("specfun", help="evaluate a special function at one point")
    special.add_argument("function", choices=_SPECFUN_NAMES)
    special.add_argument("first", type=float)
    special.add_argument("second", type=float)
    special.add_argument("--eta", type=float, default=0.5)
    special.add_argument("--eps-b", type=float, default=0.0)
    special.add_argument("--beta", type=float, default=0.0)
    special.add_argument("--max-terms", type=int, default=200_000)
    special.add_argument("--tail-bound", type=float, default=1e-12)
    special.set_defaults(handler=cmd_specfun)

    model = commands.add_parser("model", help="solve the one-dimensional model problem")
    model.add_argument("sub", choices=("lambda", "bottom", "upsilon"))
    model.add_argument("--b", type=float, default=0.0)
    model.add_argument("--K", type=float, default=0.0)
    model.add_argument("--mu", type=float, default=0.0)
    model.add_argument("--n", type=int, default=3)
    model.add_argument("--eps", type=float, default=0.05)
    model.add_argument("--epsilons", type=float, nargs="*", default=())
    model.add_argument("--degree", type=int, default=3)
    model.add_argument("--tol", type=float, default=1e-10)
    model.set_defaults(handler=cmd_model)

    geometry_parser = commands.add_parser("geometry", help="inspect geometry documents")
    geometry_commands = geometry_parser.add_subparsers(dest="geometry_command", required=True)
    validate = geometry_commands.add_parser("validate", help="check the structural assumptions")
    validate.add_argument("document")
    validate.set_defaults(handler=cmd_geometry_validate)

    run = commands.add_parser("run", help="run the experiment described by a config document")
    run.add_argument("config")
    run.add_argument("--workers", type=int, default=None)
    run.set_defaults(handler=cmd_run)

    return parser


def main(argv: typing.Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(levelname)s %(name)s: %(message)s",
    )
    data_binding.set_json_impl(impl=data_binding.JSONImpl[args.json_impl.upper()])

    handler = typing.cast(typing.Callable[[argparse.Namespace], int], args.handler)
    try:
        return handler(args)
    except errors.AlternaError as exc:
        _LOGGER.debug("Command failed.", exc_info=exc)
        print(f"error: {exc}", file=sys.stderr)
        return 2

