"""Exception types shared across the package."""


class QF2Error(Exception):
    pass


class FieldMismatch(QF2Error):
    pass


class DivisionByZero(QF2Error):
    pass


class DimensionMismatch(QF2Error):
    pass


class ZeroScalar(QF2Error):
    pass


class MalformedCertificate(QF2Error):
    pass


class NotAnisotropic(QF2Error):
    pass


class NeedsWitness(QF2Error):
    pass


class HypothesisUnmet(QF2Error):
    pass


class NoDrop(QF2Error):
    pass


class VariableClash(QF2Error):
    pass


class ConstructionError(QF2Error):
    """Adjoining sqrt(d) with d a square, or wp(d) with d in the wp-image."""


class ScriptError(QF2Error):
    """DSL parse/run errors; carries position info where available."""

    def __init__(self, message, line=None, col=None):
        super().__init__(message)
        self.line = line
        self.col = col


class UndeclaredVariable(ScriptError):
    pass
