"""Minimal graded free resolutions and the shift inequalities on their Betti tables."""

from .algebra import FieldSpec, Polynomial, RingSpec, compare, format_polynomial
from .errors import (BudgetExceededError, ContractError, DegreeError, DimensionError,
                     ImproperIdealError, InternalContradictionError, ParseError, RingMismatchError,
                     SyzShiftError)
from .groebner import GroebnerBasis, buchberger, check_basis, lift, normal_form, syzygy_basis
from .ideal_io import InputDocument, emit_report, parse, print_betti
from .modules import GradedFreeModule, GradedMatrix, ModuleElement
from .resolution import (BettiTable, GradedFreeResolution, betti_table, free_resolution,
                         hilbert_consistency, minimalize, resolve)
from .shifts import (GorensteinInfo, InequalityReport, PurityProfile, WitnessCertificate, analyze,
                     check_inequalities, construct_witness, detect_gorenstein, detect_pure)
from .explorer import SearchParams, random_ideal, search

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "Polynomial", "RingSpec", "compare", "format_polynomial",
    "BudgetExceededError", "ContractError", "DegreeError", "DimensionError", "ImproperIdealError",
    "InternalContradictionError", "ParseError", "RingMismatchError", "SyzShiftError",
    "GroebnerBasis", "buchberger", "check_basis", "lift", "normal_form", "syzygy_basis",
    "InputDocument", "emit_report", "parse", "print_betti",
    "GradedFreeModule", "GradedMatrix", "ModuleElement",
    "BettiTable", "GradedFreeResolution", "betti_table", "free_resolution", "hilbert_consistency",
    "minimalize", "resolve",
    "GorensteinInfo", "InequalityReport", "PurityProfile", "WitnessCertificate", "analyze",
    "check_inequalities", "construct_witness", "detect_gorenstein", "detect_pure",
    "SearchParams", "random_ideal", "search",
]
