"""Named simulation designs used throughout the benchmark suite.

Each preset is a factory (n, seed) -> config. The main designs use 100x100
matrices with ten moderately unbalanced clusters per axis and Toeplitz
latent covariances; `supp-table1` is the smaller split-comparison design;
`unbalanced` shrinks q to 15; `tensor-g32` is the 15x10x10 three-way
design.
"""

from __future__ import annotations

from .exceptions import ArgumentError
from .simulate import NoiseSpec, SimConfig, TensorSimConfig

MAIN_SIZES = (3, 6, 6, 8, 10, 10, 12, 12, 14, 19)
UNBALANCED_COL_SIZES = (2, 2, 2, 3, 6)
TABLE1_SIZES = (4, 6, 9, 11)
# The three-way design's cluster sizes per mode; the reference experiment
# reports only the dimensions (15 x 10 x 10), so these fix one concrete
# moderately unbalanced choice.
TENSOR_SIZES = ((2, 2, 3, 4, 4), (2, 2, 3, 3), (2, 2, 3, 3))


def _main(noise: NoiseSpec, n: int, seed: int) -> SimConfig:
    return SimConfig(
        row_sizes=MAIN_SIZES,
        col_sizes=MAIN_SIZES,
        u_decay=-0.4,
        v_decay=0.3,
        noise=noise,
        n=n,
        seed=seed,
    )


def preset(name: str, n: int, seed: int) -> SimConfig | TensorSimConfig:
    """Instantiate a named design at the given sample size and seed."""
    if name == "main-homogeneous":
        return _main(NoiseSpec("homogeneous", 15.0), n, seed)
    if name == "main-proportional":
        return _main(NoiseSpec("proportional", 15.0), n, seed)
    if name == "main-random":
        return _main(NoiseSpec("random", 15.0, h=0.87), n, seed)
    if name == "supp-table1":
        return SimConfig(
            row_sizes=TABLE1_SIZES,
            col_sizes=TABLE1_SIZES,
            u_decay=-0.2,
            v_decay=0.2,
            noise=NoiseSpec("proportional", 15.0),
            n=n,
            seed=seed,
        )
    if name == "unbalanced":
        return SimConfig(
            row_sizes=MAIN_SIZES,
            col_sizes=UNBALANCED_COL_SIZES,
            u_decay=-0.4,
            v_decay=0.3,
            noise=NoiseSpec("homogeneous", 15.0),
            n=n,
            seed=seed,
        )
    if name == "tensor-g32":
        return TensorSimConfig(
            sizes=TENSOR_SIZES,
            decays=(-0.4, 0.3, -0.2),
            noise_var=15.0,
            n=n,
            seed=seed,
        )
    raise ArgumentError(f"unknown preset {name!r}")


PRESET_NAMES = (
    "main-homogeneous",
    "main-proportional",
    "main-random",
    "supp-table1",
    "unbalanced",
    "tensor-g32",
)
