"""Explicit bounds for prime-counting functions.

Multiprecision results come back as decimal strings; wrap them in float() or
decimal.Decimal as needed.
"""

import json as _json

from ._core import (
    CoverageError,
    DomainError,
    Error,
    IoError,
    OverflowError,
    ParameterError,
    ParseError,
    bessel_i1,
    check_admissible,
    count,
    counterexample,
    derive,
    derive_weak,
    error_profile,
    li,
    partial_summation,
    precision_bits,
    prime_count,
    ramanujan_steps,
    run_cli,
    scan,
    set_precision_bits,
    solve_x_max,
    table1,
    table2,
    zero_sum,
)


def published_values():
    """Printed reference values as a dict."""
    from ._core import published_values_json

    return _json.loads(published_values_json())


__all__ = [name for name in dir() if not name.startswith("_")]
