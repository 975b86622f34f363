"""Adaptive variance-based sensitivity analysis with steerable sampling."""

from .bootstrap import BootstrapSpec, bootstrap_curves, bootstrap_indices, percentile_band
from .campaign import Campaign, CampaignConfig, blocks_from_log_lines, init_campaign
from .design import (
    DesignRow,
    EvaluationRequest,
    build_design_rows,
    evaluation_plan,
    hybrid_point,
    transform_points,
)
from .estimators import (
    EvaluationBlock,
    IndexAccumulator,
    SensitivityIndices,
    compute_indices,
    estimate_first_order,
    estimate_total,
    estimate_variance,
    indices_from_csv,
    indices_to_csv,
)
from .evaluators import EvaluatorPool, ExternalEvaluator, ExternalEvaluatorSpec
from .models import (
    SyntheticModelParams,
    builtin_evaluator,
    default_synthetic_params,
    ishigami,
    synthetic_eval,
    synthetic_eval_batch,
    synthetic_z,
)
from .regional import (
    AlphaEpsilon,
    CumulativeCurve,
    PiecewiseConstantDensity,
    average_density,
    boxcar_contributions,
    cumulative_density,
    cumulative_local,
    inverse_cdf,
    mix_uniform,
    sensitivity_density,
)
from .sobol import SobolStream, sobol_points

__version__ = "0.1.0"

__all__ = [
    "AlphaEpsilon",
    "BootstrapSpec",
    "Campaign",
    "CampaignConfig",
    "CumulativeCurve",
    "DesignRow",
    "EvaluationBlock",
    "EvaluationRequest",
    "EvaluatorPool",
    "ExternalEvaluator",
    "ExternalEvaluatorSpec",
    "IndexAccumulator",
    "PiecewiseConstantDensity",
    "SensitivityIndices",
    "SobolStream",
    "SyntheticModelParams",
    "average_density",
    "blocks_from_log_lines",
    "bootstrap_curves",
    "bootstrap_indices",
    "boxcar_contributions",
    "build_design_rows",
    "builtin_evaluator",
    "compute_indices",
    "cumulative_density",
    "cumulative_local",
    "default_synthetic_params",
    "estimate_first_order",
    "estimate_total",
    "estimate_variance",
    "evaluation_plan",
    "hybrid_point",
    "indices_from_csv",
    "indices_to_csv",
    "init_campaign",
    "inverse_cdf",
    "ishigami",
    "mix_uniform",
    "percentile_band",
    "sensitivity_density",
    "sobol_points",
    "synthetic_eval",
    "synthetic_eval_batch",
    "synthetic_z",
    "transform_points",
]
