"""
Exceptions raised by kloops.

Every domain failure is an `AlgebraError`, which is a `ValueError`. Properties
that may legitimately be false (is_bol, is_normal, ...) are returned as
booleans and never raised.
"""


class AlgebraError(ValueError):
    pass


class MalformedInput(AlgebraError):
    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NoIdentity(AlgebraError):
    pass


class NotLatin(AlgebraError):
    def __init__(self, message: str, witness: tuple = None):
        self.witness = witness
        super().__init__(message)


class PowerAmbiguous(AlgebraError):
    pass


class NotTwoDivisible(AlgebraError):
    pass


class CapExceeded(AlgebraError):
    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


class NotNormal(AlgebraError):
    pass


class NotSymetron(AlgebraError):
    def __init__(self, message: str, axiom: int = None, witness: tuple = None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message)


class NoUniqueMidpoint(AlgebraError):
    def __init__(self, message: str, witness: tuple = None):
        self.witness = witness
        super().__init__(message)


class StepBudgetExceeded(AlgebraError):
    def __init__(self, message: str, partial=None, steps: int = None):
        self.partial = partial
        self.steps = steps
        super().__init__(message)


class EvenOrder(AlgebraError):
    pass


class NotAGroup(AlgebraError):
    pass


class NotTwoDivisibleGroup(AlgebraError):
    pass


class NotAutomorphism(AlgebraError):
    pass


class NotInvolutive(AlgebraError):
    pass


class NotClosed(AlgebraError):
    pass


class NotTwoDivisibleSet(AlgebraError):
    pass


class OrderTooLarge(AlgebraError):
    pass


class PreconditionError(AlgebraError):
    pass


class InvariantViolation(AlgebraError):
    """
    A property that holds by theorem failed on a concrete table. This signals a
    bug in kloops, never a property of the input.
    """


def ensure(condition: bool, message: str):
    if not condition:
        raise InvariantViolation(message)
