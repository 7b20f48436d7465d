"""Exception types shared across the package."""


class ArgumentError(ValueError):
    """Invalid argument (bad shape, empty input, out-of-range parameter)."""


class DegenerateFeatureError(ArgumentError):
    """A feature has zero sample variance and cannot be standardized."""

    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(f"feature ({i}, {j}) has zero sample variance")


class ModelError(RuntimeError):
    """A generative model is numerically invalid (e.g. covariance not SPD)."""
