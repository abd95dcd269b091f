"""Precision-recall curves between two sample distributions.

Exact discrete computation, a classifier-based estimator for
continuous/high-dimensional features, the k-means discretization
baseline, ROC and mode-collapse-region frontiers, and synthetic
benchmarks with closed-form reference curves.
"""

from .accel import BACKEND
from .clustering import KMeansModel, fit_kmeans, histogram_prd
from .data import SampleSet
from .ensemble import (EnsembleModel, LabeledTrainSet, TrainingConfig,
                       predict, train)
from .errors import FileFormatError, InputError, PRDError
from .estimator import (ErrorRatePoint, PairedDataset, ScoredTestSet,
                        SplitResult, create_train_test, default_lambda_grid,
                        error_rates_from_scores, estimate_pr_curve,
                        estimate_prd)
from .measures import (DiscreteDistribution, LambdaGrid, PRCurve, PRPoint,
                       exact_pr_curve, exact_pr_endpoints, exact_pr_point,
                       min_measure, prd_membership, symmetry_swap)
from .rocmcr import ROCPoint, mcr_frontier_discrete, roc_from_scores
from .synth import (MixtureSpec, TheoreticalCurveSpec,
                    class_overlap_experiment, class_subset_experiment,
                    disjoint_split_experiment, gaussian_optimal_curve,
                    reweighting_experiment, sample_mixture,
                    theoretical_rectangle_curve)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DiscreteDistribution", "LambdaGrid", "PRCurve", "PRPoint",
    "min_measure", "exact_pr_point", "exact_pr_endpoints", "exact_pr_curve",
    "prd_membership", "symmetry_swap",
    "SampleSet", "LabeledTrainSet", "TrainingConfig", "EnsembleModel",
    "train", "predict",
    "PairedDataset", "SplitResult", "ScoredTestSet", "ErrorRatePoint",
    "create_train_test", "error_rates_from_scores", "estimate_prd",
    "estimate_pr_curve", "default_lambda_grid",
    "KMeansModel", "fit_kmeans", "histogram_prd",
    "ROCPoint", "roc_from_scores", "mcr_frontier_discrete",
    "MixtureSpec", "TheoreticalCurveSpec", "sample_mixture",
    "class_subset_experiment", "class_overlap_experiment",
    "disjoint_split_experiment", "reweighting_experiment",
    "gaussian_optimal_curve",
    "theoretical_rectangle_curve",
    "PRDError", "InputError", "FileFormatError",
]
