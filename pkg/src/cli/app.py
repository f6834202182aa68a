"""Argument parsing, validation and dispatch for the qgase command line."""

import argparse
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from entropy import QuadratureConfig
from families import FamilyKind, FamilySpec, Letter, Word, parse_word, uniform_word
from graph import BoundaryKind
from utils.config import load_user_config, resolve_workers
from utils.errors import (
    ConflictingFlagsError,
    MissingRequiredError,
    QgaseError,
    UnknownFlagError,
    UsageError,
    ValidationError,
)
from utils.log import setup_logging
from . import commands
from .output import open_output, write_csv, write_json, write_table

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('ase', 'curve', 'sweep', 'fibonacci', 'ensemble', 'smatrix')
DEFAULT_CURVE_POINTS = 256
DEFAULT_GENERATIONS = 7


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises typed usage errors instead of exiting."""

    def error(self, message):
        if message.startswith('unrecognized arguments'):
            raise UnknownFlagError(message)
        if 'required' in message:
            raise MissingRequiredError(message)
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class Command:
    """A validated invocation: one subcommand plus its options."""

    name: str
    family: Optional[FamilyKind] = None
    word: Optional[Word] = None
    n: Optional[int] = None
    letter: Optional[Letter] = None
    graph_file: Optional[str] = None
    entrance: int = 0
    quadrature: QuadratureConfig = QuadratureConfig()
    seed: int = 0
    output_format: str = 'csv'
    output: Optional[str] = None
    workers: int = 1
    dead_end: BoundaryKind = BoundaryKind.NEUMANN
    oracle: bool = False
    verbosity: int = 0
    all_entrances: bool = False
    points: int = DEFAULT_CURVE_POINTS
    k: Optional[float] = None
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    generations: int = DEFAULT_GENERATIONS
    sizes: tuple[int, ...] = field(default_factory=tuple)
    samples: int = 100
    dump_values: Optional[str] = None

    def family_spec(self) -> FamilySpec:
        if self.family.uses_word:
            word = self.word if self.word is not None else uniform_word(self.letter, self.n)
            return FamilySpec(self.family, word=word, dead_end=self.dead_end)
        return FamilySpec(self.family, n=self.n)


def _sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid size list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    shared = _ArgumentParser(add_help=False)
    shared.add_argument('--family', choices=[kind.value for kind in FamilyKind],
                        help="Graph family")
    shared.add_argument('--word', help="Word over {a, b}, e.g. abba (line/circle/circle2)")
    shared.add_argument('--n', type=int, help="Uniform word length or unit count")
    shared.add_argument('--letter', choices=['a', 'b'], help="Letter of a uniform word")
    shared.add_argument('--graph-file', help="JSON graph file instead of a family")
    shared.add_argument('--entrance', type=int, default=0, help="Entrance channel (default: 0)")
    shared.add_argument('--tol', type=float, help="Quadrature tolerance (default: 1e-7)")
    shared.add_argument('--seed', type=int, default=0, help="Random seed (unsigned 64-bit)")
    shared.add_argument('--format', choices=['csv', 'json'], dest='output_format',
                        help="Output format")
    shared.add_argument('--output', help="Output path (default: stdout)")
    shared.add_argument('--workers', type=int, help="Worker processes (capped by QGASE_THREADS)")
    shared.add_argument('--dirichlet', action='store_true',
                        help="Dirichlet instead of Neumann dead ends for family builders")
    shared.add_argument('--oracle', action='store_true',
                        help="Cross-check against the bond scattering matrix implementation")
    shared.add_argument('-v', '--verbose', action='count', default=0, help="More logging (repeatable)")

    parser = _ArgumentParser(
        prog='qgase',
        description="Average scattering entropy of open quantum graphs."
    )
    sub = parser.add_subparsers(dest='command', required=True, metavar='command')

    ase = sub.add_parser('ase', parents=[shared], help="Average scattering entropy of one graph")
    ase.add_argument('--all-entrances', action='store_true', help="One row per entrance channel")

    curve = sub.add_parser('curve', parents=[shared], help="Entropy H(k) over one period")
    curve.add_argument('--points', type=int, default=DEFAULT_CURVE_POINTS, help="Grid size")

    sweep = sub.add_parser('sweep', parents=[shared], help="ASE of a periodic family for a range of n")
    sweep.add_argument('--n-min', type=int, required=True)
    sweep.add_argument('--n-max', type=int, required=True)

    fib = sub.add_parser('fibonacci', parents=[shared], help="ASE of Fibonacci words")
    fib.add_argument('--generations', type=int, default=DEFAULT_GENERATIONS)

    ens = sub.add_parser('ensemble', parents=[shared], help="Random-word ensemble statistics")
    ens.add_argument('--sizes', type=_sizes, required=True, help="Comma separated sizes, e.g. 13,21")
    ens.add_argument('--samples', type=int, default=100)
    ens.add_argument('--dump-values', help="Write per-sample ASE values to this CSV path")

    smatrix = sub.add_parser('smatrix', parents=[shared], help="Scattering matrix at one k")
    smatrix.add_argument('--k', type=float, required=True, help="Wave number")

    return parser


def _quadrature_config(args, user_config: dict) -> QuadratureConfig:
    values = dict(user_config)
    if args.tol is not None:
        values['tolerance'] = args.tol
    return QuadratureConfig.from_dict(values)


def _check_graph_source(args):
    if args.graph_file and args.family:
        raise ConflictingFlagsError("--graph-file and --family are mutually exclusive")
    if not args.graph_file and not args.family:
        raise MissingRequiredError(f"'{args.command}' needs --family or --graph-file")
    if args.graph_file and (args.word or args.n is not None):
        raise ConflictingFlagsError("--word/--n cannot be combined with --graph-file")


def _check_family_parameter(args, family: FamilyKind):
    if args.word is not None and args.n is not None:
        raise ConflictingFlagsError("--word and --n are mutually exclusive")
    if family.uses_word:
        if args.word is None and args.n is None:
            raise MissingRequiredError(f"Family '{family.value}' needs --word or --n with --letter")
        if args.n is not None and args.letter is None:
            raise MissingRequiredError("--n on a word family needs --letter")
    else:
        if args.word is not None:
            raise ConflictingFlagsError(f"Family '{family.value}' takes --n, not --word")
        if args.n is None:
            raise MissingRequiredError(f"Family '{family.value}' needs --n")


def _check_output_path(flag: str, path: Optional[str]):
    """
    Make sure an output file can be created before anything is computed.

    Args:
        flag: Option name for the error message
        path: Requested path; None or '-' means stdout

    Raises:
        UsageError: If the path is a directory, its directory is missing, or
            either is not writable
    """
    if path is None or path == '-':
        return
    target = Path(path)
    if target.is_dir():
        raise UsageError(f"{flag} {path} is a directory")
    parent = target.parent
    if not parent.is_dir():
        raise UsageError(f"{flag} {path}: directory {parent} does not exist")
    writable = os.access(target, os.W_OK) if target.exists() else os.access(parent, os.W_OK)
    if not writable:
        raise UsageError(f"{flag} {path} is not writable")


def parse_invocation(argv: Sequence[str]) -> Command:
    """
    Parse and validate a command line.

    Only flags are checked here; graph construction errors (e.g. a ring word
    that is too short) surface when the command runs.

    Raises:
        UnknownFlagError, MissingRequiredError, ConflictingFlagsError, UsageError
    """
    args = build_parser().parse_args(list(argv))
    user_config = load_user_config()

    family = FamilyKind(args.family) if args.family else None
    word = parse_word(args.word) if args.word is not None else None
    letter = Letter(args.letter) if args.letter else None

    if args.command in ('ase', 'curve', 'smatrix'):
        _check_graph_source(args)
        if family is not None:
            _check_family_parameter(args, family)
    elif args.command == 'sweep':
        if family is None:
            raise MissingRequiredError("'sweep' needs --family")
        if args.word is not None or args.n is not None:
            raise ConflictingFlagsError("'sweep' takes --n-min/--n-max, not --word/--n")
        if family.uses_word and letter is None:
            raise MissingRequiredError(f"'sweep' on family '{family.value}' needs --letter")
    elif args.command in ('fibonacci', 'ensemble'):
        if family is None:
            raise MissingRequiredError(f"'{args.command}' needs --family")
        if not family.uses_word:
            raise UsageError(f"'{args.command}' needs family line, circle or circle2")
        if args.word is not None or args.n is not None:
            raise ConflictingFlagsError(f"'{args.command}' builds its own words; drop --word/--n")

    if args.entrance < 0:
        raise UsageError(f"--entrance must be non-negative, got {args.entrance}")
    if args.n is not None and args.n < 1:
        raise UsageError(f"--n must be at least 1, got {args.n}")
    if args.workers is not None and args.workers < 1:
        raise UsageError(f"--workers must be at least 1, got {args.workers}")
    if not 0 <= args.seed < 2 ** 64:
        raise UsageError(f"--seed must be an unsigned 64-bit integer, got {args.seed}")
    _check_output_path('--output', args.output)
    if args.command == 'ensemble':
        _check_output_path('--dump-values', args.dump_values)

    output_format = args.output_format or ('json' if args.command == 'smatrix' else 'csv')
    workers = args.workers if args.workers is not None else user_config.get('workers')

    options = {}
    if args.command == 'ase':
        options['all_entrances'] = args.all_entrances
    elif args.command == 'curve':
        if args.points < 1:
            raise UsageError(f"--points must be at least 1, got {args.points}")
        options['points'] = args.points
    elif args.command == 'sweep':
        options['n_min'] = args.n_min
        options['n_max'] = args.n_max
    elif args.command == 'fibonacci':
        if args.generations < 1:
            raise UsageError(f"--generations must be at least 1, got {args.generations}")
        options['generations'] = args.generations
    elif args.command == 'ensemble':
        if not args.sizes:
            raise UsageError("--sizes needs at least one size")
        options['sizes'] = args.sizes
        options['samples'] = args.samples
        options['dump_values'] = args.dump_values
    elif args.command == 'smatrix':
        if not math.isfinite(args.k):
            raise UsageError(f"--k must be a finite wave number, got {args.k}")
        options['k'] = args.k

    try:
        quadrature = _quadrature_config(args, user_config)
    except ValidationError as e:
        raise UsageError(str(e)) from e

    return Command(
        name=args.command,
        family=family,
        word=word,
        n=args.n,
        letter=letter,
        graph_file=args.graph_file,
        entrance=args.entrance,
        quadrature=quadrature,
        seed=args.seed,
        output_format=output_format,
        output=args.output,
        workers=resolve_workers(workers),
        dead_end=BoundaryKind.DIRICHLET if args.dirichlet else BoundaryKind.NEUMANN,
        oracle=args.oracle,
        verbosity=args.verbose,
        **options
    )


def execute(command: Command):
    """Run a parsed command and write its output."""
    if command.name == 'ase':
        result = commands.run_ase(command)
    elif command.name == 'curve':
        result = commands.run_curve(command)
    elif command.name == 'sweep':
        result = commands.run_sweep(
            command.family, command.n_min, command.n_max, command.letter,
            command.quadrature, command.workers, command.dead_end
        )
    elif command.name == 'fibonacci':
        result = commands.run_fibonacci(
            command.family, command.generations, command.quadrature,
            command.workers, command.dead_end
        )
    elif command.name == 'ensemble':
        result, values = commands.run_ensemble_command(command)
        if values is not None:
            with open_output(command.dump_values) as stream:
                write_csv(values, stream)
    else:
        result = commands.run_smatrix(command)

    with open_output(command.output) as stream:
        if isinstance(result, dict):
            write_json(result, stream)
        else:
            write_table(result, command.output_format, stream)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point.

    Returns:
        Exit code: 0 success, 2 usage/validation error, 3 numerical failure
    """
    setup_logging(0)
    try:
        command = parse_invocation(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else 0
    except QgaseError as e:
        logger.error("%s", e)
        return e.exit_code

    setup_logging(command.verbosity)
    try:
        execute(command)
    except QgaseError as e:
        logger.error("%s", e)
        return e.exit_code
    except OSError as e:
        # unreadable graph file or an output that became unwritable
        logger.error("%s", e)
        return ValidationError.exit_code
    return 0
