"""SCOT: scoring for identifier-tagged building-footprint time series.

Thin package wrapper around the compiled extension. Everything lives in
``scot._scot``; this module just re-exports the public surface.
"""

from ._scot import (
    AoiScores,
    DatasetStats,
    DegenerateGeometry,
    DuplicateLabel,
    EmptyDataset,
    EmptyDirectory,
    Error,
    FilterPolicy,
    Footprint,
    Frame,
    IdSwapEvent,
    InfeasiblePacking,
    InvalidGeometry,
    IoFailure,
    MatchCounts,
    MatchResult,
    MatchedPair,
    MisalignedSeries,
    MissingId,
    Perturbed,
    PerturbationSpec,
    Polygon,
    Scenario,
    ScenarioSpec,
    ScoreReport,
    ScoreStats,
    ScotConfig,
    SelfIntersection,
    TimeSeries,
    TooLarge,
    ZeroGroundTruth,
    __version__,
    apply_filters,
    area,
    brute_force_match,
    combine,
    f_change,
    f_track,
    gen_scenario,
    intersection_area,
    iou,
    legacy_f1,
    load_dataset,
    load_polygon_frames,
    load_series,
    match_frame,
    mota,
    perturb,
    polygonize_mask,
    propagate_ids,
    rasterize_polygons,
    read_pgm,
    read_report,
    rect,
    score_aoi,
    score_dataset,
    write_pgm,
    write_report,
    write_series,
)

__all__ = [
    "AoiScores",
    "DatasetStats",
    "DegenerateGeometry",
    "DuplicateLabel",
    "EmptyDataset",
    "EmptyDirectory",
    "Error",
    "FilterPolicy",
    "Footprint",
    "Frame",
    "IdSwapEvent",
    "InfeasiblePacking",
    "InvalidGeometry",
    "IoFailure",
    "MatchCounts",
    "MatchResult",
    "MatchedPair",
    "MisalignedSeries",
    "MissingId",
    "Perturbed",
    "PerturbationSpec",
    "Polygon",
    "Scenario",
    "ScenarioSpec",
    "ScoreReport",
    "ScoreStats",
    "ScotConfig",
    "SelfIntersection",
    "TimeSeries",
    "TooLarge",
    "ZeroGroundTruth",
    "__version__",
    "apply_filters",
    "area",
    "brute_force_match",
    "combine",
    "f_change",
    "f_track",
    "gen_scenario",
    "intersection_area",
    "iou",
    "legacy_f1",
    "load_dataset",
    "load_polygon_frames",
    "load_series",
    "match_frame",
    "mota",
    "perturb",
    "polygonize_mask",
    "propagate_ids",
    "rasterize_polygons",
    "read_pgm",
    "read_report",
    "rect",
    "score_aoi",
    "score_dataset",
    "write_pgm",
    "write_report",
    "write_series",
]
