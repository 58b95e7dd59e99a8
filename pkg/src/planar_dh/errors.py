"""Exception hierarchy shared by every module."""


class StructureError(ValueError):
    """Input violates a structural invariant (asymmetric rotation, bad face, ...)."""


class ContractError(ValueError):
    """An operation was called outside its precondition."""


class AcyclicityError(ValueError):
    """An arc set contains a directed cycle."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("directed cycle: " + " -> ".join(map(str, self.cycle)))


class ProofStepError(RuntimeError):
    """A step of a constructive proof found its invariant violated (a bug)."""


class DischargingContradiction(ProofStepError):
    """No reducible configuration exists in a triangulation."""


class BudgetExceeded(RuntimeError):
    """The exact search ran out of its edge or node budget."""


class GraphFormatError(ValueError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)
