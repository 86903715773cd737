"""Abstract inductive invariant synthesis for small CFG programs.

Programs use the same text format as the ``ainv`` command line tool.
"""

from pathlib import Path

from ._core import (
    Error,
    IterationBudgetExceeded,
    ParseError,
    Program,
    Unsupported,
    affine_hull,
    analyze,
    analyze_json,
    const_alpha,
    parse_program,
    print_program,
    run_suite,
    suite_names,
)

__all__ = [
    "Error",
    "IterationBudgetExceeded",
    "ParseError",
    "Program",
    "Unsupported",
    "affine_hull",
    "analyze",
    "analyze_json",
    "const_alpha",
    "load_program",
    "parse_program",
    "print_program",
    "run_suite",
    "suite_names",
]


def load_program(path):
    """Parse a program file."""
    return parse_program(Path(path).read_text())
