"""Exception types shared across the solver and the CLI."""


class ConfigurationError(ValueError):
    """Invalid grid, run, or file configuration."""


class SamplingError(ValueError):
    """A sampled function produced a non-finite value."""


class GridMismatchError(ValueError):
    """Operands live on incompatible grids."""


class SpectralResidueError(RuntimeError):
    """Imaginary residue after an inverse transform exceeded tolerance."""


class BlowUpError(RuntimeError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, message, *, stage=None, node=None, step=None, time=None):
        super().__init__(message)
        self.stage = stage
        self.node = node
        self.step = step
        self.time = time


class RunawayError(RuntimeError):
    """Subcycle step count exceeded the configured ceiling."""


class FitError(ValueError):
    """A power-law fit rejected its input samples."""
