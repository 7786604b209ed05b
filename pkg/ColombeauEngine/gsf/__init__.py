"""
Generalized smooth functions: expressions, evaluation, extremes and support
"""

from .Constructions import (
    cutoff_embed_cgf,
    delta_embedding,
    mollified_representative,
    smoothed_box_indicator,
)
from .Extremes import ExtremeValues, ImageEnclosure, extreme_values, image_enclosure, image_member
from .Gsf import CompactlySupportedGsf, Counterexample, ExteriorSample, Gsf, check_inside, evaluate_expr
from .Optimizer import OptimizerResult, SearchBudget, optimize
from .Primitives import bump, plateau
from .SmoothExpr import SmoothExpr, multi_indices, variables
from .Support import (
    extend_global,
    global_sup,
    moderateness_certificate,
    support_positive_at,
    verify_compact_support,
)
