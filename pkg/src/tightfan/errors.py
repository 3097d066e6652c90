"""Exception types.

:class:`TightFanError` covers invalid input and unmet preconditions.
:class:`InvariantViolation` signals that a result contradicts a theorem the
library relies on; it should never be raised on correct code.
"""


class TightFanError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    pass


class NotAHyperplane(TightFanError):
    pass


class NotFullDim(TightFanError):
    def __init__(self, affine_dim: int, message: str = ""):
        self.affine_dim = affine_dim
        super().__init__(message or f"point set spans an affine space of dim {affine_dim}")


class NotInterior(TightFanError):
    pass


class PoleUndefined(TightFanError):
    pass


class Unbounded(TightFanError):
    pass


class InvalidFan(TightFanError):
    pass


class NotAStar(TightFanError):
    pass


class NotCompletePointed(TightFanError):
    pass


class WrongDim(TightFanError):
    pass


class BadChain(TightFanError):
    pass


class IncompleteScaling(TightFanError):
    pass


class NonzeroTorsion(TightFanError):
    def __init__(self, ridge: int, torsion=None):
        self.ridge = ridge
        self.torsion = torsion
        super().__init__(f"nonzero torsion at ridge {ridge}")


class NotPosDef(TightFanError):
    pass


class ClassificationConflict(InvariantViolation):
    pass


class NotConvex(InvariantViolation):
    pass


class TightnessViolation(InvariantViolation):
    pass


class MalformedInput(TightFanError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
