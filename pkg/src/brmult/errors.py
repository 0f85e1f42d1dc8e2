"""Exception hierarchy shared by all layers."""


class BrimError(Exception):
    """Base class for library errors."""


class RingMismatchError(BrimError):
    pass


class HomogeneityError(BrimError):
    pass


class ResourceError(BrimError):
    """A configured budget (reductions, sample window) was exhausted."""


class HypothesisError(BrimError):
    """An input violates a precondition of a multiplicity computation.

    ``clause`` names the violated hypothesis so reports can cite it.
    """

    def __init__(self, clause, detail=""):
        self.clause = clause
        self.detail = detail
        super().__init__(f"{clause}: {detail}" if detail else clause)


class NotContainedError(BrimError):
    """M is not a submodule of N."""


class MultiplicityError(BrimError):
    """The sampled length polynomial is inconsistent with the theory."""
