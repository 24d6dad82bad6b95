"""Exception hierarchy.

Two families matter to callers: ``ValidationError`` for bad inputs (CLI exit
code 2) and ``NumericalAbort`` for runs that stop mid-march (exit code 3).
"""


class WaterHammerError(Exception):
    pass


class ValidationError(WaterHammerError, ValueError):
    pass


class DomainError(ValidationError):
    pass


class ParameterError(ValidationError):
    pass


class GridError(ValidationError):
    pass


class PhaseError(WaterHammerError, RuntimeError):
    pass


class ScenarioParseError(ValidationError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class InsufficientDataError(ValidationError):
    pass


class SupportError(ValidationError):
    pass


class AlignmentError(ValidationError):
    pass


class CharacteristicCrossingError(ValidationError):
    pass


class NumericalAbort(WaterHammerError, ArithmeticError):
    """A march stopped because the discrete solution became unusable."""

    def __init__(self, message, *, step=None, node=None, t=None):
        self.step = step
        self.node = node
        self.t = t
        where = []
        if step is not None:
            where.append(f"step={step}")
        if node is not None:
            where.append(f"node={node}")
        if t is not None:
            where.append(f"t={t:.6g}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class CFLViolation(NumericalAbort):
    def __init__(self, courant, **kwargs):
        self.courant = courant
        super().__init__(f"time step refused: Courant number {courant:.6g} exceeds 1", **kwargs)


class SingularityError(NumericalAbort):
    pass


class BoundaryDegeneracyError(NumericalAbort):
    pass


class MonitorViolation(NumericalAbort):
    def __init__(self, kind, value, **kwargs):
        self.kind = kind
        self.value = value
        super().__init__(f"monitor violation: {kind} (value {value:.6g})", **kwargs)


class OutputExistsError(ValidationError):
    pass


class OutputError(WaterHammerError, OSError):
    pass
