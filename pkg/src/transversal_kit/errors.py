"""Exception hierarchy shared by every module.

``InputError`` covers anything the caller supplied wrongly; the CLI maps it
to exit code 2. ``VerificationError`` signals an internal invariant that
failed to hold, which should never happen on valid input.
"""


class TransversalKitError(Exception):
    pass


class InputError(TransversalKitError, ValueError):
    pass


class CapacityError(InputError):
    def __init__(self, cap: int):
        super().__init__(f"group closure exceeds cap of {cap} elements")
        self.cap = cap


class SpecError(InputError):
    """Invalid spec document; ``path`` points into the JSON (e.g. ``generators[0]``)."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{message} at {path}" if path else message)
        self.path = path


class ConditioningError(InputError):
    pass


class NotCauchyError(InputError):
    pass


class VerificationError(TransversalKitError, AssertionError):
    pass
