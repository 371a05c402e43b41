"""Exact-arithmetic workbench for finitely presented k-linear categories.

Builds the dual coalgebra of a presented category, translates between module
and comodule/contramodule data, and decides recognition, frontier, duality,
and extension-closure questions over exact fields (the rationals or F_p).
"""

from locfin.scalar import FieldDescriptor, Scalar, QQ, GF
from locfin.verdict import Verdict

__all__ = ["FieldDescriptor", "Scalar", "QQ", "GF", "Verdict"]
