"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Inadmissible numeric parameters (divisibility, ranges)."""


class StructureError(ValueError):
    """Input violates a structural precondition (not a clique, not complete, ...)."""


class LabelDomainError(KeyError):
    """An edge was looked up outside the labeling's domain."""


class InfeasibleError(RuntimeError):
    """The graph has no perfect tiling."""


class TemplateArithmeticError(ArithmeticError):
    """Template size and coverage disagree (s * r != s' * |F|)."""
