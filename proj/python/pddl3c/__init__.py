"""Lifted compilation of PDDL3 state-trajectory constraints.

The heavy lifting lives in the C++ extension module; this package
re-exports its surface.
"""

from pddl3c._core import (
    Domain,
    PddlParseError,
    Problem,
    ResourceLimitError,
    UnsupportedFeatureError,
    __version__,
    check_equivalence,
    compile,
    enumerate_valid_plans,
    parse_domain,
    parse_problem,
    print_domain,
    print_problem,
    regress,
    validate,
)

__all__ = [
    "Domain",
    "Problem",
    "PddlParseError",
    "ResourceLimitError",
    "UnsupportedFeatureError",
    "__version__",
    "check_equivalence",
    "compile",
    "enumerate_valid_plans",
    "parse_domain",
    "parse_problem",
    "print_domain",
    "print_problem",
    "regress",
    "validate",
]
