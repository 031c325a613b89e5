"""Command-line interface.

Exit codes (stable contract):

====  =====================================================
code  meaning
====  =====================================================
0     success / symmetry verdict passed
2     finding: failed symmetry, second-class pair, closure
      failure, or declared levels that do not match
3     invalid input (file, expression, flags, dependent
      primaries, reserved parameter names)
4     constraint hierarchy continues past the tertiary level
5     internal error
6     inconsistent system (nonzero constant residual)
====  =====================================================
"""

from __future__ import annotations

import argparse
import sys

from . import report as rpt
from .chain import (
    ConstraintChain,
    RationalSpan,
    assemble_total_hamiltonian,
    first_class_check,
    generate_chain,
)
from .errors import (
    ChainBeyondTertiaryError,
    DependentPrimariesError,
    DiracSymmetryError,
    InconsistentSystemError,
    ModelFileError,
    ParseError,
    ReservedParameterError,
)
from .membership import CoefficientMode
from .modelfile import ModelFile, load_model_file
from .symmetry import classify, closure_and_structure_constants

EXIT_OK = 0
EXIT_FINDING = 2
EXIT_INVALID_INPUT = 3
EXIT_BEYOND_TERTIARY = 4
EXIT_INTERNAL = 5
EXIT_INCONSISTENT = 6


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirac-symmetry",
        description=(
            "Exact constraint-chain generation and dynamical-symmetry "
            "verification for polynomial Hamiltonian systems."
        ),
        epilog=(
            "exit codes: 0 ok, 2 finding, 3 invalid input, "
            "4 chain beyond tertiary, 5 internal error, 6 inconsistent system"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "chain": "generate the primary/secondary/tertiary constraint hierarchy",
        "total-hamiltonian": "assemble H_tot with multiplier parameters",
        "first-class": "test every constraint pair against the on-shell module",
        "check-symmetry": "classify a generator set against the symmetry rules",
        "structure-constants": "extract Lie structure constants of a generator set",
    }
    for name, help_text in commands.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("file", help="model file to analyse")
        cmd.add_argument("--set", dest="set_name", help="generator set name")
        cmd.add_argument(
            "--degree-bound",
            type=int,
            dest="degree_bound",
            help="cap on coefficient-polynomial degree in membership searches",
        )
        cmd.add_argument(
            "--on-shell-energy",
            choices=("true", "false"),
            dest="on_shell_energy",
            help="include the on-shell generator H_d - E in the ideal",
        )
        cmd.add_argument(
            "--coefficients",
            choices=("constant", "polynomial"),
            dest="coefficients",
            help="coefficient class for level-preservation decompositions",
        )
        cmd.add_argument(
            "--format",
            choices=("text", "structured"),
            default="text",
            dest="format",
            help="output format (structured = JSON with exact rationals)",
        )
    return parser


def _resolve_options(args, model: ModelFile):
    degree_bound = args.degree_bound
    if degree_bound is None:
        degree_bound = model.options.degree_bound
    if degree_bound is not None and degree_bound < 0:
        raise ModelFileError("--degree-bound must be >= 0")
    if args.on_shell_energy is not None:
        include_energy = args.on_shell_energy == "true"
    elif model.options.on_shell_energy is not None:
        include_energy = model.options.on_shell_energy
    else:
        include_energy = True
    if args.coefficients is not None:
        mode = CoefficientMode(args.coefficients)
    elif model.options.coefficient_mode is not None:
        mode = model.options.coefficient_mode
    else:
        mode = CoefficientMode.POLYNOMIAL
    return degree_bound, include_energy, mode


def _compare_declared_levels(chain: ConstraintChain, model: ModelFile) -> dict | None:
    declared_by_level = {
        "secondary": model.declared_secondaries,
        "tertiary": model.declared_tertiaries,
    }
    if all(value is None for value in declared_by_level.values()):
        return None
    match = True
    details: list[str] = []
    for level, declared in declared_by_level.items():
        if declared is None:
            continue
        level_ok = True
        generated = chain.level_polys(level)
        if len(declared) != len(generated):
            level_ok = False
            details.append(
                f"{level}: declared {len(declared)} constraints, "
                f"generated {len(generated)}"
            )
        else:
            span = RationalSpan()
            for poly in generated:
                span.add(poly.terms)
            for name, poly in declared:
                if span.reduce(poly.terms):
                    level_ok = False
                    details.append(
                        f"{level}: declared {name} is outside the generated span"
                    )
            declared_span = RationalSpan()
            for _, poly in declared:
                declared_span.add(poly.terms)
            if len(declared_span) != len(generated):
                level_ok = False
                details.append(f"{level}: declared constraints are dependent")
        if level_ok:
            details.append(f"{level}: spans agree ({len(generated)} constraints)")
        else:
            match = False
    return {"match": match, "details": details}


def _require_set(model: ModelFile, set_name: str | None):
    if set_name is None:
        raise ModelFileError("--set NAME is required for this command")
    if set_name not in model.generator_sets:
        known = ", ".join(sorted(model.generator_sets)) or "(none)"
        raise ModelFileError(
            f"unknown generator set {set_name!r}; file declares: {known}"
        )
    return model.generator_sets[set_name]


def _run(args) -> int:
    model = load_model_file(args.file)
    degree_bound, include_energy, mode = _resolve_options(args, model)

    if args.command == "chain":
        chain = generate_chain(model.system, degree_bound)
        declared = _compare_declared_levels(chain, model)
        report = rpt.chain_report(chain, args.file, declared)
        sys.stdout.write(
            rpt.render(report, rpt.chain_text(chain, report), args.format)
        )
        if declared is not None and not declared["match"]:
            return EXIT_FINDING
        return EXIT_OK

    if args.command == "total-hamiltonian":
        chain = generate_chain(model.system, degree_bound)
        total = assemble_total_hamiltonian(model.system, chain)
        report = rpt.total_hamiltonian_report(chain, total, args.file)
        sys.stdout.write(
            rpt.render(report, rpt.total_hamiltonian_text(chain, total, report), args.format)
        )
        return EXIT_OK

    if args.command == "first-class":
        chain = generate_chain(model.system, degree_bound)
        result = first_class_check(chain, degree_bound, include_energy)
        report = rpt.first_class_report(chain, result, args.file)
        sys.stdout.write(
            rpt.render(report, rpt.first_class_text(chain, result, report), args.format)
        )
        return EXIT_OK if result.all_first_class else EXIT_FINDING

    if args.command == "check-symmetry":
        gen_set = _require_set(model, args.set_name)
        chain = generate_chain(model.system, degree_bound)
        verdict = classify(
            gen_set, model.system, chain, degree_bound, include_energy, mode
        )
        report = rpt.symmetry_report(chain, verdict, args.set_name, args.file)
        sys.stdout.write(
            rpt.render(report, rpt.symmetry_text(chain, verdict, report), args.format)
        )
        if report["overall"] in ("StrictSymmetry", "DynamicalSymmetry"):
            return EXIT_OK
        return EXIT_FINDING

    if args.command == "structure-constants":
        gen_set = _require_set(model, args.set_name)
        closure = closure_and_structure_constants(gen_set, degree_bound)
        report = rpt.structure_constants_report(closure, args.set_name, args.file)
        sys.stdout.write(
            rpt.render(report, rpt.structure_constants_text(report), args.format)
        )
        return EXIT_OK if report["closure"]["closed"] else EXIT_FINDING

    raise RuntimeError(f"unhandled command {args.command!r}")  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    parser = _build_arg_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (ModelFileError, ParseError, DependentPrimariesError, ReservedParameterError) as exc:
        sys.stderr.write(f"error: invalid input: {exc}\n")
        return EXIT_INVALID_INPUT
    except InconsistentSystemError as exc:
        sys.stderr.write(f"finding: inconsistent system: {exc}\n")
        return EXIT_INCONSISTENT
    except ChainBeyondTertiaryError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BEYOND_TERTIARY
    except DiracSymmetryError as exc:  # remaining library errors are unexpected
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - last-resort exit-code mapping
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
