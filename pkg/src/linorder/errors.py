"""Exception hierarchy shared by every module of the package."""


class OrderError(Exception):
    """Base class for all domain errors raised by linorder."""

    kind = "order_error"
    module = "linorder"

    def to_json(self):
        return {"error": self.kind, "module": self.module, "message": str(self)}


class TermSyntaxError(OrderError, ValueError):
    kind = "term_syntax"
    module = "order-term-core"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position

    def to_json(self):
        out = super().to_json()
        out["position"] = self.position
        return out


class ElementSyntaxError(OrderError, ValueError):
    kind = "element_syntax"
    module = "order-term-core"


class InvalidElementError(OrderError, ValueError):
    kind = "invalid_element"
    module = "order-term-core"


class SymbolicTermError(OrderError):
    """Raised by element-level operations on terms that contain R."""

    kind = "symbolic_term"
    module = "order-term-core"


class NotSeparableError(OrderError):
    kind = "not_separable"
    module = "order-analysis"


class UncountableJumpsError(OrderError):
    kind = "uncountable_jumps"
    module = "order-analysis"


class NotEmbeddableError(OrderError):
    kind = "not_embeddable_into_reals"
    module = "order-analysis"


class DensityError(OrderError):
    """A dense-set candidate failed the budgeted density check."""

    kind = "not_dense"
    module = "order-analysis"

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class EmbeddingError(OrderError):
    kind = "embedding"
    module = "order-embed"


class OrderViolationError(EmbeddingError):
    """A user-supplied rational table is not order preserving."""

    kind = "order_violation"

    def __init__(self, message, pair):
        super().__init__(message)
        self.pair = pair


class NoLowerWitnessError(EmbeddingError):
    kind = "no_lower_witness"


class PartialMapError(OrderError, ValueError):
    kind = "partial_map"
    module = "order-homog"
