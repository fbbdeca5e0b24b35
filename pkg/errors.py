class PrecompactError(Exception):
    """Base class for every error raised by the engine."""


class MalformedElementError(PrecompactError, ValueError):
    pass


class GroupMismatchError(PrecompactError, ValueError):
    pass


class PreconditionError(PrecompactError, ValueError):
    pass


class CapacityError(PrecompactError):
    def __init__(self, order: int, bound: int, what: str = "subgroup enumeration"):
        self.order = order
        self.bound = bound
        super().__init__(f"{what} needs order {order}, above the bound {bound} (raise PD_MAX_ORDER to allow it)")


class InconsistencyError(PrecompactError, AssertionError):
    """Two independent computations of the same quantity disagreed."""


class SpecParseError(PrecompactError, ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")

    def annotated(self) -> str:
        return f"{self.args[0]}\n  {self.text}\n  {' ' * self.position}^"


class UnknownSuiteError(PrecompactError, KeyError):
    def __str__(self) -> str:
        return f"unknown suite {self.args[0]!r}"
