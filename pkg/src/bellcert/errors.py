"""Exception types shared across the package."""


class BellCertError(ValueError):
    """Base class for all library errors."""


class InvalidArgument(BellCertError):
    pass


class InvalidState(BellCertError):
    pass


class NonDichotomic(BellCertError):
    """An observable fails ``O @ O == I`` beyond tolerance."""

    def __init__(self, label, residual):
        self.label = label
        self.residual = residual
        super().__init__(f"observable {label} is not dichotomic (|O^2 - I| = {residual:.3e})")


class DegenerateRow(BellCertError):
    """A correlation row has zero mass, so Bob's weights are undefined."""

    def __init__(self, label):
        self.label = label
        super().__init__(f"correlation row for {label} has zero mass")


class ConstructionInvalid(BellCertError):
    pass


class FrameRejected(BellCertError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"frame does not diagonalize the correlation matrix (off-diagonal norm {residual:.3e})")


class StateFileError(BellCertError):
    pass
