"""Plan future studies against a meta-analytic evidence model.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (
    CovariateEvaluation,
    CovariateRecord,
    MinSampleResult,
    RunConfig,
    SweepPoint,
    __version__,
    evaluate_records,
    load_records,
    min_sample_size,
    parse_records,
    render_classify,
    render_rank,
    serialize_records,
    sweep_prior,
    sweep_sample_size,
)

__all__ = [
    "CovariateEvaluation",
    "CovariateRecord",
    "MinSampleResult",
    "RunConfig",
    "SweepPoint",
    "__version__",
    "evaluate_records",
    "load_records",
    "min_sample_size",
    "parse_records",
    "render_classify",
    "render_rank",
    "serialize_records",
    "sweep_prior",
    "sweep_sample_size",
]
