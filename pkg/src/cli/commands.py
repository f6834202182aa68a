"""Subcommand implementations; each returns a Table or a JSON document."""

import logging
from pathlib import Path
from typing import Optional

from entropy import (
    QuadratureConfig,
    average_scattering_entropy,
    ase_by_entrance,
    entropy_curve,
    curve_span,
    uniform_grid,
)
from ensemble import EnsembleSpec, run_ensemble
from families import (
    FamilyKind,
    FamilySpec,
    Letter,
    build_family,
    fibonacci_word,
    uniform_word,
)
from graph import BoundaryKind, MetricGraph, load_graph_file
from scattering import (
    ScatteringSolver,
    bond_scattering_matrix,
    max_deviation,
    unitarity_defect,
)
from utils.errors import ValidationError
from utils.parallel import map_ordered
from .output import Table

logger = logging.getLogger(__name__)

# k-points used by the --oracle cross-check
ORACLE_POINTS = 64

SKIP_MARKER = 'skip'


def command_graph(command) -> tuple[MetricGraph, str, str]:
    """Graph selected by --graph-file or --family; returns (graph, family label, parameter)."""
    if command.graph_file:
        return load_graph_file(command.graph_file), 'file', Path(command.graph_file).name
    spec = command.family_spec()
    return build_family(spec), spec.kind.value, spec.label


def oracle_deviation(graph: MetricGraph, ks) -> float:
    """Largest |sigma_path - sigma_bond| over the given wave numbers."""
    solver = ScatteringSolver(graph)
    worst = 0.0
    for k in ks:
        s, _ = solver.evaluate(float(k))
        worst = max(worst, max_deviation(s, bond_scattering_matrix(graph, s.k)))
    return worst


def run_ase(command) -> Table:
    graph, family, parameter = command_graph(command)
    header = ['family', 'parameter', 'entrance', 'ase', 'error_estimate', 'panels', 'singular_retries']
    if command.oracle:
        header.append('oracle_max_deviation')

    if command.all_entrances:
        results = ase_by_entrance(graph, command.quadrature)
    else:
        results = [average_scattering_entropy(graph, command.entrance, command.quadrature)]

    deviation = None
    if command.oracle:
        deviation = oracle_deviation(graph, uniform_grid(curve_span(graph), ORACLE_POINTS))

    table = Table(header)
    for result in results:
        row = [family, parameter, result.entrance, result.value, result.error_estimate,
               result.panels, result.singular_retries]
        if deviation is not None:
            row.append(deviation)
        table.rows.append(row)
    return table


def run_curve(command) -> Table:
    graph, _, _ = command_graph(command)
    grid = uniform_grid(curve_span(graph), command.points)
    points = entropy_curve(graph, command.entrance, grid)

    header = ['k', 'H'] + [f'p_{j}' for j in range(graph.num_channels)]
    table = Table(header)
    for point in points:
        table.rows.append([point.k, point.entropy] + [float(p) for p in point.probabilities.entries])

    if command.oracle:
        logger.info("Oracle max deviation over curve grid: %.3e", oracle_deviation(graph, grid))
    return table


def run_smatrix(command):
    graph, _, _ = command_graph(command)
    s, retries = ScatteringSolver(graph).evaluate(command.k)
    defect = unitarity_defect(s)

    if command.output_format == 'csv':
        table = Table(['exit', 'entrance', 're', 'im'])
        for f in range(s.num_channels):
            for i in range(s.num_channels):
                value = complex(s.entries[f, i])
                table.rows.append([f, i, value.real, value.imag])
        return table

    document = {
        'k': s.k,
        'matrix': [
            [{'re': float(value.real), 'im': float(value.imag)} for value in row]
            for row in s.entries
        ],
        'unitarity_defect': defect
    }
    if retries:
        document['singular_retries'] = retries
    if command.oracle:
        document['oracle_max_deviation'] = max_deviation(s, bond_scattering_matrix(graph, s.k))
    return document


def _ase_of_spec(args: tuple) -> float:
    """Worker: ASE of one family graph (entrance channel 0)."""
    spec, config = args
    return average_scattering_entropy(build_family(spec), 0, config).value


def _sweep_spec(family: FamilyKind, n: int, letter: Letter, dead_end: BoundaryKind) -> FamilySpec:
    if family.uses_word:
        return FamilySpec(family, word=uniform_word(letter, n), dead_end=dead_end)
    return FamilySpec(family, n=n)


def run_sweep(
    family: FamilyKind,
    n_min: int,
    n_max: int,
    letter: Letter,
    config: QuadratureConfig,
    workers: int = 1,
    dead_end: BoundaryKind = BoundaryKind.NEUMANN
) -> Table:
    """
    ASE for n = n_min..n_max of a periodic family (alpha_n, beta_n, gamma_n, ...).

    Raises:
        ValidationError: n_min > n_max or n_min < 1
    """
    if n_min < 1 or n_min > n_max:
        raise ValidationError(f"Sweep needs 1 <= n-min <= n-max, got {n_min}..{n_max}")

    ns = list(range(n_min, n_max + 1))
    # builders validate before any worker starts
    specs = [_sweep_spec(family, n, letter, dead_end) for n in ns]
    for spec in specs:
        build_family(spec)

    values = map_ordered(_ase_of_spec, [(spec, config) for spec in specs], workers)
    return Table(['n', 'ase'], [[n, value] for n, value in zip(ns, values)])


def run_fibonacci(
    family: FamilyKind,
    max_generation: int,
    config: QuadratureConfig,
    workers: int = 1,
    dead_end: BoundaryKind = BoundaryKind.NEUMANN
) -> Table:
    """
    ASE of the Fibonacci words w_1..w_max on line, circle or circle2.

    Ring families cannot hold words shorter than 3; those generations are
    emitted with a 'skip' marker.
    """
    if family not in (FamilyKind.LINE, FamilyKind.CIRCLE, FamilyKind.CIRCLE2):
        raise ValidationError(f"Fibonacci words need family line, circle or circle2, got '{family.value}'")
    if max_generation < 1:
        raise ValidationError(f"Fibonacci generations must be >= 1, got {max_generation}")

    words = [fibonacci_word(m) for m in range(1, max_generation + 1)]
    ring = family is not FamilyKind.LINE
    runnable = [
        (m, word) for m, word in enumerate(words, start=1)
        if not (ring and len(word) < 3)
    ]
    values = map_ordered(
        _ase_of_spec,
        [(FamilySpec(family, word=word, dead_end=dead_end), config) for _, word in runnable],
        workers
    )
    computed = {m: value for (m, _), value in zip(runnable, values)}

    table = Table(['generation', 'length', 'ase'])
    for m, word in enumerate(words, start=1):
        table.rows.append([m, len(word), computed.get(m, SKIP_MARKER)])
    return table


def run_ensemble_command(command) -> tuple[Table, Optional[Table]]:
    spec = EnsembleSpec(
        family=command.family,
        sizes=tuple(command.sizes),
        samples=command.samples,
        seed=command.seed,
        quadrature=command.quadrature,
        workers=command.workers
    )

    def progress(current: int, total: int, label: str):
        logger.info("[%d/%d] %s", current, total, label)

    stats = run_ensemble(spec, progress)

    summary = Table(['family', 'size', 'samples', 'seed', 'mean', 'std_dev'])
    values = Table(['family', 'size', 'sample', 'ase'])
    for entry in stats:
        summary.rows.append([spec.family.value, entry.size, spec.samples, spec.seed, entry.mean, entry.std_dev])
        for index, value in enumerate(entry.values):
            values.rows.append([spec.family.value, entry.size, index, value])

    return summary, (values if command.dump_values else None)

