"""Exception hierarchy.

Every domain error carries a short ``code`` (used verbatim by the CLI) and an
optional JSON-friendly ``witness`` describing what went wrong.
"""


class SkewRingError(Exception):
    code = "SkewRingError"

    def __init__(self, message="", witness=None):
        super().__init__(message or self.code)
        self.witness = witness

    def to_json(self):
        out = {"error": self.code, "message": str(self)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _error(name, *bases, doc=None):
    cls = type(name, bases or (SkewRingError,), {"code": name, "__doc__": doc})
    return cls


# gf
NotPrime = _error("NotPrime")
FieldTooLarge = _error("FieldTooLarge")
DivisionByZero = _error("DivisionByZero", SkewRingError, ZeroDivisionError)
LogOfZero = _error("LogOfZero", SkewRingError, ValueError)
FieldMismatch = _error("FieldMismatch")

# matfq
DimensionMismatch = _error("DimensionMismatch")
Singular = _error("Singular")
EigenvalueOutsideField = _error("EigenvalueOutsideField")
NotDiagonalizable = _error("NotDiagonalizable")

# morphism
NotMultiplicativeOrder = _error("NotMultiplicativeOrder")
AdditivityViolation = _error("AdditivityViolation")
MultiplicativityViolation = _error("MultiplicativityViolation")
NonCommutingPair = _error("NonCommutingPair")
LeibnizViolation = _error("LeibnizViolation")
VerificationFailed = _error("VerificationFailed")
NotFrobeniusEigenvalue = _error("NotFrobeniusEigenvalue")
ExponentOutOfRange = _error("ExponentOutOfRange")

# freering
RingMismatch = _error("RingMismatch")
ZeroConjugator = _error("ZeroConjugator")

# transform
ChainMismatch = _error("ChainMismatch")
NotAffine = _error("NotAffine")
SingularLinearPart = _error("SingularLinearPart")
IncompatibleMorphisms = _error("IncompatibleMorphisms")
IncompatibleDerivations = _error("IncompatibleDerivations")

# classify
SearchSpaceTooLarge = _error("SearchSpaceTooLarge")


class MalformedInput(SkewRingError, ValueError):
    """Input JSON that does not follow the documented schemas (CLI exit 1)."""

    code = "MalformedInput"
