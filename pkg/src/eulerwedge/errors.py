"""Exception hierarchy shared by all modules."""


class EulerWedgeError(Exception):
    """Base class for every error raised by the package."""


class MalformedInput(EulerWedgeError, ValueError):
    """Input data does not have the required shape or type."""


class AlgebraMismatch(EulerWedgeError, ValueError):
    """Two elements belong to different Lie algebras."""


class ClosureError(EulerWedgeError, ValueError):
    """A matrix that should lie in the span of a basis does not."""


class NotEuler(EulerWedgeError, ValueError):
    pass


class NotSl2Triple(EulerWedgeError, ValueError):
    pass


class NonCentral(EulerWedgeError, ValueError):
    """A covering-group element expected to be central is not."""


class NotInStabilizer(EulerWedgeError, ValueError):
    """g does not map h to +h or -h."""


class LiftError(EulerWedgeError, ArithmeticError):
    """Path lifting on a covering space could not be resolved."""


class NonStandard(EulerWedgeError, ValueError):
    pass


class PairAxiomError(EulerWedgeError, ValueError):
    """A (Delta, J) candidate violates one of the modular pair axioms."""

    def __init__(self, axiom: str, residual: float):
        super().__init__(f"modular pair axiom '{axiom}' violated (residual {residual:.3e})")
        self.axiom = axiom
        self.residual = residual


class CompatibilityError(EulerWedgeError, ValueError):
    pass


class ConeError(EulerWedgeError, ValueError):
    pass


class UnsupportedFamily(EulerWedgeError, ValueError):
    pass


class MissingData(EulerWedgeError, KeyError):
    """A requested check needs representation data that was not supplied."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing data"
