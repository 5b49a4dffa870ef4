"""Command-line front end.

One subcommand per catalog operator. Flags override the values of `--config`, which
override the operator defaults. Log verbosity is read from FRONT_FIXING_LOG_LEVEL only.
"""

import argparse
import logging
import os
import sys

from catalog import catalog
from front_fixing.model import Scheme
from pricing_operators.config import load_config_file
from richardson.refinement import Estimator
from runtime.enums import ExitCode
from runtime.operator_definition import TaskDefinition
from runtime.runtimes import Runtime

LOG_LEVEL_VARIABLE = "FRONT_FIXING_LOG_LEVEL"

logger = logging.getLogger("cli")


def configure_logging():
    logging.basicConfig(
        level=os.environ.get(LOG_LEVEL_VARIABLE, "WARNING").upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _common_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps absent flags out of the namespace, so they never mask config values.
    parser = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    parser.add_argument("--config", help="JSON file with flat run settings")
    parser.add_argument("--r", type=float, help="interest rate")
    parser.add_argument("--sigma", type=float, help="volatility")
    parser.add_argument("--T", type=float, help="maturity")
    parser.add_argument("--E", type=float, help="exercise price")
    parser.add_argument("--J", type=int, help="space intervals")
    parser.add_argument("--scheme", choices=[s.value for s in Scheme])
    parser.add_argument("--residual-tol", dest="residual_tol", type=float)
    parser.add_argument("--sf-tol", dest="sf_tol", type=float)
    parser.add_argument("--max-iters", dest="max_iters", type=int)
    parser.add_argument("--bracket-floor", dest="bracket_floor", type=float)
    parser.add_argument("--out", help="output directory")
    return parser


def _grid_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--xinf", dest="x_inf", type=float, help="truncated boundary")
    parser.add_argument("--mu", type=float, help="grid ratio dtau / dx^2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="front-fixing", description=catalog.description
    )
    commands = parser.add_subparsers(dest="command", required=True)
    common = _common_flags()

    def command(name: str) -> argparse.ArgumentParser:
        operator = catalog.get_operator(name)
        return commands.add_parser(
            name,
            parents=[common],
            help=operator.meta_description,
            argument_default=argparse.SUPPRESS,
        )

    _grid_flags(command("solve"))

    extrapolate = command("extrapolate")
    _grid_flags(extrapolate)
    extrapolate.add_argument("--levels", type=int, help="number of doublings G")

    refine = command("refine")
    _grid_flags(refine)
    refine.add_argument("--eps", type=float, help="error tolerance")
    refine.add_argument("--max-levels", dest="max_levels", type=int)
    refine.add_argument("--estimator", choices=[e.value for e in Estimator])

    stability = command("stability")
    stability.add_argument("--xinf", dest="x_inf", type=float, help="truncated boundary")
    stability.add_argument("--mu", dest="mu_values", type=float, nargs="+")
    stability.add_argument("--samples", type=int, help="phase samples per curve")
    stability.add_argument(
        "--front-levels", dest="front_levels", type=int, nargs="+",
        help="time levels whose frozen front term is scanned",
    )

    price = command("price")
    _grid_flags(price)
    price.add_argument("--assets", type=float, nargs="+")
    price.add_argument("--extrapolate", action="store_true")
    price.add_argument("--reference", action="store_true")

    xinf = command("xinf")
    xinf.add_argument("--xinf", dest="x_inf_values", type=float, nargs="+")
    xinf.add_argument("--mu", type=float, help="grid ratio dtau / dx^2")
    return parser


def main(argv: list[str] | None = None) -> int:
    configure_logging()
    arguments = vars(build_parser().parse_args(argv))
    command = arguments.pop("command")

    options = {}
    if config_file := arguments.pop("config", None):
        try:
            options.update(load_config_file(config_file))
        except OSError as err:
            logger.error(f"Cannot read {config_file}: {err}")
            return ExitCode.IO_FAILURE
        except ValueError as err:
            logger.error(f"Invalid config file {config_file}: {err}")
            return ExitCode.INVALID_ARGUMENTS
    options.update(arguments)

    task = TaskDefinition(
        operator=command, options=options, output_dir=options.get("out", ".")
    )
    return Runtime(catalog).run(task)


if __name__ == "__main__":
    sys.exit(main())
