"""Seeded matrix-normal and tensor-normal simulators with Toeplitz factors.

Each dataset is generated from X = A Z B^T + Gamma with Z ~ MN(0, U, V),
U and V Toeplitz in the cluster index, and one of three noise-variance
regimes. All randomness flows through purpose-keyed Philox streams derived
from the config seed, so a config reproduces its dataset bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .exceptions import ArgumentError, ModelError
from .partition import Partition, membership_matrix, partition_from_labels
from .population import PopulationModel
from .rng import stream


@dataclass(frozen=True)
class NoiseSpec:
    """Noise-variance regime: homogeneous, proportional, or random.

    `mean` is the target average variance (exactly attained for the
    proportional and random regimes via normalization). `h` is the power
    applied to the uniform draws in the random regime.
    """

    regime: str
    mean: float = 15.0
    h: float = 0.87

    def __post_init__(self):
        if self.regime not in ("homogeneous", "proportional", "random"):
            raise ArgumentError(f"unknown noise regime {self.regime!r}")
        if self.mean <= 0:
            raise ArgumentError("mean noise variance must be positive")


@dataclass(frozen=True)
class SimConfig:
    """Design of one matrix-data simulation."""

    row_sizes: tuple[int, ...]
    col_sizes: tuple[int, ...]
    u_decay: float
    v_decay: float
    noise: NoiseSpec
    n: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "row_sizes", tuple(int(s) for s in self.row_sizes))
        object.__setattr__(self, "col_sizes", tuple(int(s) for s in self.col_sizes))
        for sizes in (self.row_sizes, self.col_sizes):
            if not sizes or any(s < 1 for s in sizes):
                raise ArgumentError("cluster sizes must all be >= 1")
        if not (abs(self.u_decay) < 1 and abs(self.v_decay) < 1):
            raise ArgumentError("Toeplitz decay bases must satisfy |rho| < 1")
        if self.n < 1:
            raise ArgumentError("n must be >= 1")

    @property
    def p(self) -> int:
        return sum(self.row_sizes)

    @property
    def q(self) -> int:
        return sum(self.col_sizes)


def toeplitz(rho: float, k: int) -> np.ndarray:
    """Toeplitz matrix M_jk = rho^|j-k|; SPD for |rho| < 1."""
    if abs(rho) >= 1:
        raise ArgumentError("|rho| must be < 1 for positive definiteness")
    if k < 1:
        raise ArgumentError("dimension must be >= 1")
    return scipy.linalg.toeplitz(rho ** np.arange(k, dtype=np.float64))


def _sizes_to_partition(sizes: tuple[int, ...]) -> Partition:
    return partition_from_labels(np.repeat(np.arange(len(sizes)), sizes))


def noise_variances(config: SimConfig) -> np.ndarray:
    """p x q noise variances under the configured regime.

    proportional: sigma2_ij proportional to m_p(i) * m_q(j) (the sizes of
    i's row cluster and j's column cluster), normalized to the exact mean.
    random: sigma2_ij proportional to u_ij^h with u ~ Unif(0,1), normalized
    to the exact mean.
    """
    p, q = config.p, config.q
    spec = config.noise
    if spec.regime == "homogeneous":
        return np.full((p, q), spec.mean)
    if spec.regime == "proportional":
        row_m = np.repeat(np.asarray(config.row_sizes, dtype=np.float64), config.row_sizes)
        col_m = np.repeat(np.asarray(config.col_sizes, dtype=np.float64), config.col_sizes)
        v = np.outer(row_m, col_m)
    else:  # random
        rng = stream(config.seed, "noise-variances")
        v = rng.uniform(size=(p, q)) ** spec.h
    return spec.mean * p * q * v / v.sum()


def _chol(mat: np.ndarray, name: str) -> np.ndarray:
    try:
        return np.linalg.cholesky(mat)
    except np.linalg.LinAlgError as exc:
        raise ModelError(f"{name} is not positive definite") from exc


def population_from_config(config: SimConfig) -> PopulationModel:
    """Exact generative model implied by a config (including drawn noise)."""
    return PopulationModel(
        row_partition=_sizes_to_partition(config.row_sizes),
        col_partition=_sizes_to_partition(config.col_sizes),
        u=toeplitz(config.u_decay, len(config.row_sizes)),
        v=toeplitz(config.v_decay, len(config.col_sizes)),
        sigma2=noise_variances(config),
    )


def sample_matrix_normal_dataset(
    config: SimConfig,
) -> tuple[np.ndarray, PopulationModel]:
    """Draw n samples X_i = A Z_i B^T + Gamma_i; returns (data, model).

    Z = chol(U) E chol(V)^T with E filled row-major from the latent stream,
    so vec(Z) ~ N(0, V kron U) and the draw order is fixed for
    reproducibility.
    """
    model = population_from_config(config)
    a = membership_matrix(model.row_partition).astype(np.float64)
    b = membership_matrix(model.col_partition).astype(np.float64)
    lu = _chol(model.u, "U")
    lv = _chol(model.v, "V")
    k1, k2 = model.u.shape[0], model.v.shape[0]
    p, q = config.p, config.q
    sd = np.sqrt(model.sigma2)
    latent = stream(config.seed, "latent")
    noise = stream(config.seed, "noise")
    data = np.empty((config.n, p, q))
    for i in range(config.n):
        e = latent.standard_normal((k1, k2))
        z = lu @ e @ lv.T
        gamma = sd * noise.standard_normal((p, q))
        data[i] = a @ z @ b.T + gamma
    return data, model


@dataclass(frozen=True)
class TensorSimConfig:
    """Design of one 3-way tensor simulation (modes: rows, cols, tubes)."""

    sizes: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    decays: tuple[float, float, float]
    noise_var: float
    n: int
    seed: int

    def __post_init__(self):
        object.__setattr__(
            self, "sizes", tuple(tuple(int(s) for s in mode) for mode in self.sizes)
        )
        if len(self.sizes) != 3 or len(self.decays) != 3:
            raise ArgumentError("exactly three modes required")
        for mode in self.sizes:
            if not mode or any(s < 1 for s in mode):
                raise ArgumentError("cluster sizes must all be >= 1")
        if any(abs(r) >= 1 for r in self.decays):
            raise ArgumentError("Toeplitz decay bases must satisfy |rho| < 1")
        if self.noise_var <= 0:
            raise ArgumentError("noise variance must be positive")
        if self.n < 1:
            raise ArgumentError("n must be >= 1")

    @property
    def dims(self) -> tuple[int, int, int]:
        return tuple(sum(mode) for mode in self.sizes)


def sample_tensor_dataset(
    config: TensorSimConfig,
) -> tuple[np.ndarray, tuple[Partition, Partition, Partition]]:
    """Draw n tensors X = Z x1 A x2 B x3 C + Gamma.

    Z is separable normal: vec(Z) ~ N(0, T3 kron T2 kron T1) with Toeplitz
    factors per mode, realized as Z = E x1 chol(T1) x2 chol(T2) x3 chol(T3).
    """
    parts = tuple(_sizes_to_partition(mode) for mode in config.sizes)
    membs = tuple(membership_matrix(pt).astype(np.float64) for pt in parts)
    chols = [
        _chol(toeplitz(rho, len(mode)), f"mode-{j+1} factor")
        for j, (rho, mode) in enumerate(zip(config.decays, config.sizes))
    ]
    ks = tuple(len(mode) for mode in config.sizes)
    dims = config.dims
    sd = np.sqrt(config.noise_var)
    latent = stream(config.seed, "tensor-latent")
    noise = stream(config.seed, "tensor-noise")
    data = np.empty((config.n, *dims))
    for i in range(config.n):
        z = latent.standard_normal(ks)
        z = np.einsum("ja,abc->jbc", chols[0], z)
        z = np.einsum("pb,jbc->jpc", chols[1], z)
        z = np.einsum("qc,jpc->jpq", chols[2], z)
        x = np.einsum("ja,abc->jbc", membs[0], z)
        x = np.einsum("pb,jbc->jpc", membs[1], x)
        x = np.einsum("qc,jpc->jpq", membs[2], x)
        data[i] = x + sd * noise.standard_normal(dims)
    return data, parts
