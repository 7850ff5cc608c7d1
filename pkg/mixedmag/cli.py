"""Command line interface: solve, study, compare, material-check and mesh-info."""

from __future__ import annotations

import argparse
from collections.abc import Sequence
from dataclasses import replace
import logging
from pathlib import Path
import sys
from typing import Any, NoReturn

from mixedmag.__version__ import __version__
from mixedmag.exceptions import ConfigError, InputError, NewtonFailureError, SolverError
from mixedmag.export import (
    certification_text,
    comparison_csv,
    mesh_info_text,
    report_text,
    save_vtk,
    study_csv,
    write_text,
)
from mixedmag.loader import ConfigLoader, MaterialLoader, validate_config
from mixedmag.material import MaterialMap
from mixedmag.mesh import mesh_info, refine
from mixedmag.models import Formulation, Mesh, RunConfig, StudyRow
from mixedmag.post import (
    ManufacturedCase,
    case_by_name,
    compare_formulations,
    convergence_study,
    formulations_of,
    solve_formulation,
)
from mixedmag.util import load_mesh, newton_options

_LOGGER = logging.getLogger("mixedmag.log")

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_SOLVER_ERROR = 2

SUBCOMMANDS = ("solve", "study", "compare", "material-check", "mesh-info")


class _ArgumentParser(argparse.ArgumentParser):
    """Report usage errors as input errors instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser; unset options stay None so config files can fill them."""
    parser = _ArgumentParser(prog="mixedmag", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--mesh", type=Path, help="Gmsh 2.2 (.msh) or native mesh file")
    parser.add_argument("--materials", type=Path, help="material definition JSON file")
    parser.add_argument("--config", type=Path, help="study configuration JSON file")
    parser.add_argument("--case", help="synthetic case used when no mesh is given")
    parser.add_argument(
        "--formulation", type=Formulation, choices=list(Formulation), metavar="{primal,mixed,both}"
    )
    parser.add_argument("--order", type=int, help="element order 1 or 2")
    parser.add_argument("--levels", type=int, help="number of refinement levels")
    parser.add_argument("--base-n", dest="base_n", type=int, help="cells per side of the base mesh")
    parser.add_argument("--sigma", type=float, help="conductivity of manufactured cases")
    parser.add_argument("--tol", type=float, help="relative Newton residual tolerance")
    parser.add_argument("--max-iterations", dest="max_iterations", type=int)
    parser.add_argument("--out", dest="output", type=Path, help="output directory")
    parser.add_argument("--seed", type=int, help="seed of the certification sampling")
    parser.add_argument(
        "--no-timings", dest="timings", action="store_false", help="write zero timings"
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def parse_config(argv: Sequence[str]) -> tuple[RunConfig, bool]:
    """Merge defaults, the configuration file and command line flags, in that order."""
    args = vars(build_parser().parse_args(argv))
    verbose = bool(args.pop("verbose"))
    config = RunConfig(subcommand=args.pop("subcommand"), timings=bool(args.pop("timings")))
    overrides: dict[str, Any] = {key: value for key, value in args.items() if value is not None}
    if overrides.get("config") is not None:
        config = ConfigLoader.merge(config, ConfigLoader.load(overrides["config"]))
    return validate_config(replace(config, **overrides)), verbose


def _case(config: RunConfig) -> ManufacturedCase:
    if config.materials is not None:
        return ManufacturedCase(name="custom", materials=MaterialLoader.load(config.materials))
    return case_by_name(config.case, config.sigma)


def _mesh(config: RunConfig, case: ManufacturedCase) -> Mesh:
    if config.mesh is not None:
        return load_mesh(config.mesh)
    if config.materials is not None:
        raise ConfigError("--materials needs --mesh")
    return case.base_mesh(config.base_n)


def _certified(config: RunConfig, materials: MaterialMap, mesh: Mesh | None = None) -> MaterialMap:
    if mesh is not None:
        materials.check_regions(mesh.region_tags)
    if not materials.certified:
        materials.certify(seed=config.seed)
    return materials


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _mesh_info(config: RunConfig) -> None:
    if config.mesh is not None:
        mesh = load_mesh(config.mesh)
    else:
        mesh = case_by_name(config.case, config.sigma).base_mesh(config.base_n)
    _emit(mesh_info_text(mesh_info(mesh)))


def _material_check(config: RunConfig) -> None:
    materials = _certified(config, _case(config).materials)
    text = certification_text(materials.reports)
    write_text(config.output / "certification.txt", text)
    _emit(text)


def _solve(config: RunConfig) -> None:
    case = _case(config)
    mesh = _mesh(config, case)
    materials = _certified(config, case.materials, mesh)
    options = newton_options(config)
    for formulation in formulations_of(config.formulation):
        solution = solve_formulation(mesh, materials, formulation, config.k, options)
        stem = f"{formulation.value}_order{config.order}"
        save_vtk(config.output / f"solution_{stem}.vtk", solution)
        text = report_text(solution.report, config.timings)
        write_text(config.output / f"report_{stem}.txt", text)
        _emit(text)


def _study(config: RunConfig) -> None:
    case = _case(config)
    base_mesh = None if config.mesh is None and config.materials is None else _mesh(config, case)
    _certified(config, case.materials, base_mesh)
    rows: list[StudyRow] = []
    try:
        convergence_study(
            case,
            config.formulation,
            config.k,
            config.levels,
            config.base_n,
            newton_options(config),
            base_mesh=base_mesh,
            timings=config.timings,
            rows=rows,
        )
    finally:
        text = study_csv(rows)
        write_text(config.output / "study.csv", text)
    _emit(text)


def _compare(config: RunConfig) -> None:
    case = _case(config)
    mesh = refine(_mesh(config, case), config.levels - 1)
    materials = _certified(config, case.materials, mesh)
    text = comparison_csv(compare_formulations(mesh, materials, timings=config.timings))
    write_text(config.output / "compare.csv", text)
    _emit(text)


_HANDLERS = {
    "solve": _solve,
    "study": _study,
    "compare": _compare,
    "material-check": _material_check,
    "mesh-info": _mesh_info,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return the process exit code.

    0 on success, 1 on invalid input (bad flags, configuration or files) and
    2 on solver failure, in which case the partial Newton report is dumped.
    """
    try:
        config, verbose = parse_config(sys.argv[1:] if argv is None else argv)
    except InputError as err:
        sys.stderr.write(f"mixedmag: error: {err}\n")
        return EXIT_INPUT_ERROR
    except SystemExit as err:
        return int(err.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    _LOGGER.debug("Running %s with %s", config.subcommand, config)
    try:
        _HANDLERS[config.subcommand](config)
    except InputError as err:
        sys.stderr.write(f"mixedmag: error: {err}\n")
        return EXIT_INPUT_ERROR
    except NewtonFailureError as err:
        sys.stderr.write(f"mixedmag: solver failure: {err}\n")
        if err.report is not None:
            text = report_text(err.report, config.timings)
            write_text(config.output / "failed_report.txt", text)
            sys.stderr.write(text)
        return EXIT_SOLVER_ERROR
    except SolverError as err:
        sys.stderr.write(f"mixedmag: solver failure: {err}\n")
        return EXIT_SOLVER_ERROR
    return EXIT_OK


def main() -> None:
    """Console script entry point."""
    sys.exit(run())
