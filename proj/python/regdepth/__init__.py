"""Location and regression depth, deepest fits and depth surfaces."""

from ._regdepth import (
    Error,
    InvalidArgument,
    ParseError,
    SingularMatrix,
    SolverFailure,
    deepest_fit,
    gen_synthetic,
    location_depth,
    ols,
    regression_depth,
    surface,
    zonoid_lp,
)

__all__ = [
    "Error",
    "InvalidArgument",
    "ParseError",
    "SingularMatrix",
    "SolverFailure",
    "deepest_fit",
    "gen_synthetic",
    "location_depth",
    "ols",
    "regression_depth",
    "surface",
    "zonoid_lp",
]
