"""Exception types shared across the package."""


class MaxleafError(Exception):
    """Base class for all package-specific errors."""


class ParseError(MaxleafError):
    """Malformed digraph text input."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GenerationError(MaxleafError):
    """Generator parameters are infeasible or sampling gave up."""


class ContractError(MaxleafError):
    """A documented precondition was violated by the caller."""


class NoOutBranchingError(ContractError):
    """An out-branching was required but the digraph has none."""

    def __init__(self, source_components: list[list[int]]) -> None:
        self.source_components = [sorted(c) for c in source_components]
        super().__init__(
            "no out-branching: %d source strong components %s"
            % (len(self.source_components), self.source_components)
        )


class OverBudgetError(MaxleafError):
    """A size, state or node budget was exceeded."""


class InvariantError(MaxleafError):
    """An internal invariant failed.  Always indicates a bug, never bad input."""
