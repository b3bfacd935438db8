# SPDX-License-Identifier: Apache-2.0
"""Exact queries over weighted structures and feedforward ReLU networks.

Numbers come back as :class:`fractions.Fraction`; the undefined value is
``None``.  Inputs accept ``int``, ``Fraction`` or strings such as ``"3/4"``.
"""

from ._wsq import (
    Error,
    Fnn,
    ParseError,
    Pwl,
    ResourceError,
    Structure,
    StructureError,
    SymbolMismatchError,
    UnboundVariableError,
    builtin,
    builtins,
    check,
    desugar,
    evaluate,
    format,
)

__all__ = [
    "Error",
    "Fnn",
    "ParseError",
    "Pwl",
    "ResourceError",
    "Structure",
    "StructureError",
    "SymbolMismatchError",
    "UnboundVariableError",
    "builtin",
    "builtins",
    "check",
    "desugar",
    "evaluate",
    "format",
]
