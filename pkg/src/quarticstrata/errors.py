"""Exception hierarchy. Every error carries a machine-readable ``code``."""


class StrataError(Exception):
    code = "error"

    def __init__(self, message="", code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


def _make(name, code):
    return type(name, (StrataError,), {"code": code})


DivisionByZero = _make("DivisionByZero", "division_by_zero")
ZeroPolynomial = _make("ZeroPolynomial", "zero_polynomial")
NotPrime = _make("NotPrime", "not_prime")
SingularMatrix = _make("SingularMatrix", "singular_matrix")
DimensionMismatch = _make("DimensionMismatch", "dimension_mismatch")
ParseError = _make("ParseError", "parse_error")
NonUnitLeadCoefficient = _make("NonUnitLeadCoefficient", "non_unit_lead_coefficient")
ZeroDivisorInput = _make("ZeroDivisorInput", "zero_divisor_input")
WrongShape = _make("WrongShape", "wrong_shape")
InconsistentRanks = _make("InconsistentRanks", "inconsistent_ranks")
DegenerateForm = _make("DegenerateForm", "degenerate_form")
UnsplitScheme = _make("UnsplitScheme", "unsplit_scheme")
TableMismatch = _make("TableMismatch", "table_mismatch")
WrongSubtypePath = _make("WrongSubtypePath", "wrong_subtype_path")
UnstableGin = _make("UnstableGin", "unstable_gin")
DuplicatePoint = _make("DuplicatePoint", "duplicate_point")
ConstraintUnsatisfiable = _make("ConstraintUnsatisfiable", "constraint_unsatisfiable")
RetriesExhausted = _make("RetriesExhausted", "retries_exhausted")
InitialIdealMismatch = _make("InitialIdealMismatch", "initial_ideal_mismatch")
