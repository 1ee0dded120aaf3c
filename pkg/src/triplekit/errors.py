class PreconditionError(ValueError):
    """An operation was called on data that does not meet its hypotheses."""


class ConstructionError(RuntimeError):
    """A construction produced something inconsistent (an internal bug)."""


class ScalarFieldError(ValueError):
    """Data needs Q(w) (or exact scalars) and got something else."""
