"""Exception types shared across the package."""


class CapExceeded(RuntimeError):
    """A group closure or search grew past its configured cap."""


class NotASubgroup(ValueError):
    pass


class NotCentralInvolution(ValueError):
    pass


class InvalidName(ValueError):
    pass


class CosetLimitExceeded(RuntimeError):
    """Coset enumeration did not close within ``max_cosets``."""


class IncompleteTable(ValueError):
    pass


class InfeasibleDescriptor(ValueError):
    pass


class MismatchedR(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


class VerificationFailed(AssertionError):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail
