"""Multi-domain two-class performance: mixtures, ranking scores, and preference tiles."""

__version__ = "0.1.0"

from .analysis import (
    TIE_TOL,
    Selection,
    bottleneck_domain,
    easiest_domain,
    most_difficult_domain,
    preponderant_domain,
)
from .core import (
    MASS_TOL,
    SCORE_DOMAIN_EPS,
    ExpectedValueRatioScore,
    ExpectedValueScore,
    Importance,
    Performance,
    RandomVariable,
    RankingScore,
    SampleSpace,
    ev_score,
    evr_score,
    expected_value,
    make_performance,
    mixture,
    ranking_score,
)
from .raster import (
    DEFAULT_RESOLUTION,
    FLAVORS,
    TIE,
    UNDEFINED,
    RenderStyle,
    TileGrid,
    encode_png,
    encode_svg,
    flavor_tile,
    grid_axes,
    grid_points,
    sidecar_metadata,
    value_tile,
    weight_tile,
)
from .summarize import (
    WEIGHT_SUM_TOL,
    DomainEntry,
    DomainSet,
    WeightVector,
    summarize,
    weights_for_ev_score,
    weights_for_evr_score,
    weights_for_ranking_score,
)
from .twoclass import (
    TWO_CLASS_LABELS,
    ConfusionInput,
    TilePoint,
    canonical_importance,
    canonical_score_value,
    named_score_points,
    performance_from_confusion,
    tile_point_from_importance,
    two_class_satisfaction,
    two_class_space,
)

__all__ = [
    "__version__",
    "MASS_TOL",
    "SCORE_DOMAIN_EPS",
    "TIE_TOL",
    "WEIGHT_SUM_TOL",
    "SampleSpace",
    "RandomVariable",
    "Importance",
    "Performance",
    "make_performance",
    "mixture",
    "expected_value",
    "ExpectedValueScore",
    "ExpectedValueRatioScore",
    "RankingScore",
    "ev_score",
    "evr_score",
    "ranking_score",
    "DomainEntry",
    "DomainSet",
    "WeightVector",
    "summarize",
    "weights_for_ev_score",
    "weights_for_evr_score",
    "weights_for_ranking_score",
    "Selection",
    "easiest_domain",
    "most_difficult_domain",
    "preponderant_domain",
    "bottleneck_domain",
    "TWO_CLASS_LABELS",
    "ConfusionInput",
    "TilePoint",
    "two_class_space",
    "two_class_satisfaction",
    "performance_from_confusion",
    "canonical_importance",
    "canonical_score_value",
    "tile_point_from_importance",
    "named_score_points",
    "DEFAULT_RESOLUTION",
    "FLAVORS",
    "TIE",
    "UNDEFINED",
    "TileGrid",
    "RenderStyle",
    "grid_axes",
    "grid_points",
    "value_tile",
    "weight_tile",
    "flavor_tile",
    "encode_png",
    "encode_svg",
    "sidecar_metadata",
]
