"""Recovery of sparse bivariate generators behind finite-field tables, and
completion of tables with missing cells.

The pipeline detects a fully (or almost fully) known hyperbolic window,
synthesizes a minimal set of linear recurrence polynomials over it,
recovers the generator from the basis roots, verifies it against every
known cell, and fills the holes.
"""

from .bipoly import (BivariatePolynomial, EvaluationPoint, NeededCellUnknown,
                     format_poly, parse_poly)
from .bms import BmsOutcome, BmsState, closure_check, init_state, run as bms_run
from .estimator import CompletionError, HyperbolicTableCompleter
from .gf import (Field, FieldElement, FieldError, FieldSpec, build_field,
                 field_for, root_of_unity)
from .inference import (STATUS_AMBIGUOUS, STATUS_BUDGET, STATUS_COMPLETED,
                        STATUS_NOT_SYNDROME, STATUS_OVERFLOW, CompletionReport,
                        classify_hole, resolve)
from .lattice import (GRADED, LEX, DoesNotFit, UnsupportedRegime, border_set,
                      hyperbolic_set)
from .recovery import NotSyndrome, defining_set, descend_to_base, verify_afforded
from .tables import (IncompleteTable, TableFormatError, WorkingArray,
                     complete_table, detect_hyperbolic, extract_working,
                     format_table, parse_table)

__version__ = "0.1.0"

__all__ = [
    "BivariatePolynomial", "BmsOutcome", "BmsState", "CompletionError",
    "CompletionReport", "DoesNotFit", "EvaluationPoint", "Field",
    "FieldElement", "FieldError", "FieldSpec", "GRADED", "HyperbolicTableCompleter",
    "IncompleteTable", "LEX", "NeededCellUnknown", "NotSyndrome",
    "STATUS_AMBIGUOUS", "STATUS_BUDGET", "STATUS_COMPLETED",
    "STATUS_NOT_SYNDROME", "STATUS_OVERFLOW", "TableFormatError",
    "UnsupportedRegime", "WorkingArray", "bms_run", "border_set",
    "build_field", "classify_hole", "closure_check", "complete_table",
    "defining_set", "descend_to_base", "detect_hyperbolic", "extract_working",
    "field_for", "format_poly", "format_table", "hyperbolic_set", "init_state",
    "parse_poly", "parse_table", "resolve", "root_of_unity", "verify_afforded",
]
