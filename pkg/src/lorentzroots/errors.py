"""Exception hierarchy shared across the package.

Everything that is a *mathematical domain* violation (bad input for the
operation, degenerate data, budgets that make an answer undecidable)
derives from DomainError so the CLI can map it to a single exit code.
"""


class DomainError(ValueError):
    """Input is outside the mathematical domain of the operation."""


class DimensionError(DomainError):
    """Vector or matrix sizes do not match the lattice rank."""


class DegenerateFormError(DomainError):
    """The bilinear form (or a required restriction of it) is singular."""


class ControllerOnMirrorError(DomainError):
    """The chamber-selection point lies on a mirror of the root system."""

    def __init__(self, root):
        self.root = tuple(root)
        super().__init__(f"controller is orthogonal to the root {self.root}")


class UnderDeterminedError(DomainError):
    """A linear system has too few independent conditions to pin the answer."""


class IndeterminateFixedSpaceError(DomainError):
    """The common fixed space is too large for an exact isotropic-vector decision."""


class NonObtusePairError(DomainError):
    """Two chamber walls have a positive pairing."""

    def __init__(self, a, b, value):
        self.pair = (tuple(a), tuple(b))
        self.value = value
        super().__init__(f"walls {self.pair[0]} and {self.pair[1]} pair to {value} > 0")


class DenominatorMismatchError(DomainError):
    """The graded identity cannot be balanced; carries the first bad exponent."""

    def __init__(self, exponent, lhs, rhs):
        self.exponent = tuple(exponent)
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"identity mismatch at exponent {self.exponent}: product {lhs} != sum {rhs}"
        )
