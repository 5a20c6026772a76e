class MtGroupsError(Exception):
    pass


class BoundExceeded(MtGroupsError):
    """A computation would exceed a configured order/degree bound."""


class HypothesisNotSatisfied(MtGroupsError):
    """The instance does not meet the hypotheses of the requested check.

    Carries the name of the failing condition so callers can count the
    instance as inapplicable rather than as a counterexample.
    """

    def __init__(self, condition, detail=""):
        self.condition = condition
        self.detail = detail
        super().__init__(f"{condition}: {detail}" if detail else condition)


class NotSolvable(HypothesisNotSatisfied):
    def __init__(self, detail=""):
        super().__init__("group not solvable", detail)


class TheoremViolation(MtGroupsError):
    """An instance satisfied a theorem's hypotheses but not its conclusion."""

    def __init__(self, suite, message, counterexample=None):
        self.suite = suite
        self.counterexample = counterexample or {}
        super().__init__(f"[{suite}] {message}")
