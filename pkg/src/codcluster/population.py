"""Exact population quantities under the matrix-normal latent block model.

The model is X = A Z B^T + Gamma with Z ~ MN(0, U, V) (so E(Z_jk Z_j'k') =
U_jj' V_kk') and independent noise Gamma_ab ~ (0, sigma2_ab). These oracles
are used by simulators and by tests that check the sample path against an
analytic target.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ArgumentError
from .partition import Partition, membership_matrix
from .weights import Weight


@dataclass(frozen=True)
class PopulationModel:
    """Exact generative parameters (A, B, U, V, noise variances)."""

    row_partition: Partition
    col_partition: Partition
    u: np.ndarray  # K1 x K1 row covariance of Z, SPD
    v: np.ndarray  # K2 x K2 column covariance of Z, SPD
    sigma2: np.ndarray  # p x q noise variances, entries > 0

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.float64)
        v = np.asarray(self.v, dtype=np.float64)
        s2 = np.asarray(self.sigma2, dtype=np.float64)
        k1, k2 = self.row_partition.n_clusters, self.col_partition.n_clusters
        if u.shape != (k1, k1) or v.shape != (k2, k2):
            raise ArgumentError("U/V shapes must match the cluster counts")
        for name, mat in (("U", u), ("V", v)):
            if not np.allclose(mat, mat.T):
                raise ArgumentError(f"{name} must be symmetric")
            if np.linalg.eigvalsh(mat).min() <= 0:
                raise ArgumentError(f"{name} must be positive definite")
        if s2.shape != (len(self.row_partition), len(self.col_partition)):
            raise ArgumentError("sigma2 must be p x q")
        if np.any(s2 <= 0):
            raise ArgumentError("noise variances must be positive")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "sigma2", s2)
        for a in (u, v, s2):
            a.setflags(write=False)

    @property
    def p(self) -> int:
        return len(self.row_partition)

    @property
    def q(self) -> int:
        return len(self.col_partition)

    @property
    def a(self) -> np.ndarray:
        return membership_matrix(self.row_partition)

    @property
    def b(self) -> np.ndarray:
        return membership_matrix(self.col_partition)


def population_weighted_covariance(
    model: PopulationModel, weight: Weight, mode: str = "rows"
) -> np.ndarray:
    """Exact E(X W X^T) (rows) or E(X^T W X) (columns).

    Rows: A M A^T + diag_a(sum_b sigma2_ab W_bb) with
    M_jj' = U_jj' * tr((B^T W B) V); columns swap the roles of (A, U) and
    (B, V).
    """
    w = weight.matrix
    if mode == "rows":
        if weight.dim != model.q:
            raise ArgumentError("weight dim must equal q in rows mode")
        memb, cov = model.b, model.v
        outer, outer_cov = model.a, model.u
        noise = np.diag(model.sigma2 @ np.diag(w))
    elif mode == "columns":
        if weight.dim != model.p:
            raise ArgumentError("weight dim must equal p in columns mode")
        memb, cov = model.a, model.u
        outer, outer_cov = model.b, model.v
        noise = np.diag(model.sigma2.T @ np.diag(w))
    else:
        raise ArgumentError("mode must be 'rows' or 'columns'")
    trace = np.trace(memb.T @ w @ memb @ cov)
    signal = outer @ (outer_cov * trace) @ outer.T
    return signal + noise


def population_x_norm(
    model: PopulationModel, weight: Weight, mode: str = "rows"
) -> tuple[float, int]:
    """sqrt(K2) * max_a || L^T Var(X_a.) L ||_F and the argmax row.

    Var(X_a.) = U_r(a)r(a) * B V B^T + diag(sigma2_a.); in columns mode the
    symmetric expression over columns is used with K1 in place of K2.
    """
    if mode == "rows":
        if weight.dim != model.q:
            raise ArgumentError("weight dim must equal q in rows mode")
        memb = model.b
        diag_cov = np.diag(model.u)[model.row_partition.labels]
        inner = model.v
        noise = model.sigma2
        k_other = model.col_partition.n_clusters
    elif mode == "columns":
        if weight.dim != model.p:
            raise ArgumentError("weight dim must equal p in columns mode")
        memb = model.a
        diag_cov = np.diag(model.v)[model.col_partition.labels]
        inner = model.u
        noise = model.sigma2.T
        k_other = model.row_partition.n_clusters
    else:
        raise ArgumentError("mode must be 'rows' or 'columns'")
    base = memb @ inner @ memb.T
    lmat = weight.factor
    best, argmax = -np.inf, -1
    for a in range(noise.shape[0]):
        var_row = diag_cov[a] * base + np.diag(noise[a])
        val = np.linalg.norm(lmat.T @ var_row @ lmat, "fro")
        if val > best:
            best, argmax = val, a
    return float(np.sqrt(k_other) * best), argmax


def cod_from_matrix(sigma: np.ndarray, a: int, b: int) -> float:
    """max_{c != a,b} |sigma_ac - sigma_bc| for one pair."""
    diff = np.abs(sigma[a] - sigma[b])
    mask = np.ones(sigma.shape[0], dtype=bool)
    mask[[a, b]] = False
    return float(diff[mask].max())


def population_mcod(
    model: PopulationModel,
    weight: Weight,
    truth: Partition | None = None,
    mode: str = "rows",
) -> float:
    """Minimum COD over pairs in different true clusters, on the exact
    population covariance."""
    if truth is None:
        truth = model.row_partition if mode == "rows" else model.col_partition
    if truth.n_clusters < 2:
        raise ArgumentError("MCOD is undefined for a single cluster")
    sigma = population_weighted_covariance(model, weight, mode)
    m = len(truth)
    best = np.inf
    for a in range(m):
        for b in range(a + 1, m):
            if truth.labels[a] == truth.labels[b]:
                continue
            best = min(best, cod_from_matrix(sigma, a, b))
    return float(best)


def gamma_diagnostic(noise_wcov: np.ndarray) -> float:
    """max_{a,b} max_{c != a,b} |M_ac - M_bc| for M = E(Gamma W Gamma^T).

    Zero for independent noise (diagonal M); positive values quantify how
    dependent noise inflates the cluster separation the algorithm needs.
    """
    mat = np.asarray(noise_wcov, dtype=np.float64)
    p = mat.shape[0]
    if mat.ndim != 2 or mat.shape[1] != p:
        raise ArgumentError("input must be a square matrix")
    if p < 3:
        raise ArgumentError("need p >= 3 so that some c != a,b exists")
    best = 0.0
    for a in range(p):
        for b in range(a + 1, p):
            best = max(best, cod_from_matrix(mat, a, b))
    return best


@dataclass(frozen=True)
class StabilityReport:
    """Theory-condition diagnostics for an estimated column clustering."""

    g: np.ndarray  # K2 x s overlap matrix, columns sum to 1
    lambda_min: float  # smallest eigenvalue of G G^T
    lambda_max: float  # largest eigenvalue of G G^T
    c_k: float  # weighted error-variance average over true clusters
    c_s: float  # same over estimated clusters
    separation_margin: float  # min pair separation minus its required bound
    separation_ok: bool
    stability_case: str  # "i" or "ii", whichever branch applies
    stability_ok: bool


def stability_diagnostics(
    model: PopulationModel,
    bhat: np.ndarray | Partition,
    *,
    c0: float,
    c1: float,
    c_min: float,
    c_max: float,
    n: int,
) -> StabilityReport:
    """Evaluate the cluster-separation and stability conditions for bhat.

    The constants (c0 >= 4, c1, and the eigenvalue bounds c_min/c_max on V)
    are theory inputs supplied by the caller; nothing is defaulted.
    """
    if isinstance(bhat, Partition):
        bhat = membership_matrix(bhat)
    bhat = np.asarray(bhat, dtype=np.float64)
    b = model.b
    if bhat.shape[0] != model.q:
        raise ArgumentError("bhat must have q rows")
    sizes_hat = bhat.sum(axis=0)
    if np.any(sizes_hat < 1):
        raise ArgumentError("bhat has an empty cluster")
    g = b.T @ bhat / sizes_hat[None, :]
    gg = g @ g.T
    eigs = np.linalg.eigvalsh(gg)
    k2 = model.col_partition.n_clusters
    s = bhat.shape[1]
    p = model.p

    def weighted_avg(memb: np.ndarray) -> float:
        sizes = memb.sum(axis=0)
        block_sums = model.sigma2 @ memb  # p x clusters
        per_row = (block_sums**2 / sizes[None, :] ** 4).sum(axis=1) / memb.shape[1]
        return float(per_row.max())

    c_k = weighted_avg(b)
    c_s = weighted_avg(bhat)

    u = model.u
    diag_max = float(np.diag(u).max())
    diag_min = float(np.diag(u).min())
    tr_v = float(np.trace(model.v))
    bound = (
        c0
        * c1
        * np.sqrt(np.log(p) / (n * k2))
        * (k2 / tr_v)
        * (diag_max * c_max + np.sqrt(c_k))
    )
    k1 = model.row_partition.n_clusters
    pair_sep = np.inf
    for j in range(k1):
        for k in range(j + 1, k1):
            pair_sep = min(pair_sep, float(np.abs(u[j] - u[k]).max()))
    margin = pair_sep - bound

    lam_min, lam_max = float(eigs[0]), float(eigs[-1])
    lhs = np.sqrt(min(s, k2)) * abs(lam_max) * diag_max * c_max
    rhs = np.sqrt(s) * np.sqrt(c_s)
    if lhs <= rhs:
        case = "i"
        ok = 1.0 / lam_min <= (c0 / 8.0) * np.sqrt(c_k / c_s) * np.sqrt(k2 / s)
    else:
        case = "ii"
        ok = lam_max / lam_min <= (c0 / 8.0) * (c_min / c_max) * (
            diag_min / diag_max
        ) * np.sqrt(k2 / min(s, k2))
    return StabilityReport(
        g=g,
        lambda_min=lam_min,
        lambda_max=lam_max,
        c_k=c_k,
        c_s=c_s,
        separation_margin=float(margin),
        separation_ok=bool(margin > 0),
        stability_case=case,
        stability_ok=bool(ok),
    )
