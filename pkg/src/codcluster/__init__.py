"""Row/column clustering of matrix-valued data via covariance differences."""

from .cod import Dendrogram, agglomerate, cluster_covariance, cod_matrix, mcod
from .estimators import CODCluster, NestedCODCluster, TensorCODCluster
from .exceptions import ArgumentError, DegenerateFeatureError, ModelError
from .io import Dataset, read_dataset, read_result, write_dataset, write_result
from .metrics import (
    PairwiseReport,
    adjusted_rand_index,
    ari_degenerate,
    sensitivity_specificity,
)
from .partition import (
    Partition,
    canonical_labels,
    concat_partitions,
    membership_matrix,
    partition_from_labels,
    partition_from_membership,
    restrict_partition,
)
from .pipelines import (
    ClusterResult,
    MeanLayerSpec,
    NestedResult,
    PipelineOptions,
    StepTrace,
    StopRule,
    cluster_naive,
    cluster_nested,
    cluster_one_step,
    cluster_two_step,
    split_folds,
)
from .population import (
    PopulationModel,
    StabilityReport,
    gamma_diagnostic,
    population_mcod,
    population_weighted_covariance,
    population_x_norm,
    stability_diagnostics,
)
from .preprocess import check_dataset, standardize
from .presets import PRESET_NAMES, preset
from .simulate import (
    NoiseSpec,
    SimConfig,
    TensorSimConfig,
    noise_variances,
    population_from_config,
    sample_matrix_normal_dataset,
    sample_tensor_dataset,
    toeplitz,
)
from .tensor import cluster_tensor_identity, fold, matricize, mode_covariance
from .tuning import TuneReport, default_grid, select_alpha, smooth
from .weights import (
    Weight,
    identity_weight,
    optimal_weight,
    sample_weighted_covariance,
)

__version__ = "0.1.0"
