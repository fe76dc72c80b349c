#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scot/metric.hpp"
#include "scot/series.hpp"
#include "scot/synth.hpp"
#include "scot/tracker.hpp"

namespace scot {

struct FilterPolicy {
  double min_area = 4.0;             // px²; strictly smaller footprints go
  double udm_overlap_fraction = 0.5; // drop when more than this share is masked
};

// Reads one frame per vector file in dir, sorted by timestep label
// (= filename stem). Sibling files named "<label>_UDM" carry the
// frame's unusable-data regions. Every feature needs a polygon geometry
// and an id property. Throws MissingId / InvalidGeometry (naming file
// and feature index), DuplicateLabel, EmptyDirectory, IoFailure.
TimeSeries load_series(const std::filesystem::path& dir,
                       const std::string& id_property = "id");

// Inverse of load_series: "<label>.geojson" per frame plus
// "<label>_UDM.geojson" for frames with masked regions.
void write_series(const TimeSeries& series, const std::filesystem::path& dir);

// Drops footprints smaller than min_area and footprints with more than
// udm_overlap_fraction of their area under the frame's masked regions.
// The two-argument form uses the series' own udm lists; the overload
// takes them from matching frames of udm_source (the ground truth, when
// filtering proposals). Idempotent.
TimeSeries apply_filters(const TimeSeries& series, const FilterPolicy& policy);
TimeSeries apply_filters(const TimeSeries& series, const FilterPolicy& policy,
                         const TimeSeries& udm_source);

// Frame geometries without identifier requirements (tracker input).
// Returns labels and polygon lists, sorted by label.
std::pair<std::vector<std::string>, std::vector<std::vector<ValidatedPolygon>>>
load_polygon_frames(const std::filesystem::path& dir);

// 8-bit PGM rasters (P5 or P2); nonzero pixels are foreground.
BinaryMask read_pgm(const std::filesystem::path& path);
void write_pgm(const BinaryMask& mask, const std::filesystem::path& path);

// Pairs AOI subdirectories of the two roots (a root with loose frame
// files is treated as a single AOI). A ground-truth AOI without a
// proposal counterpart scores against an empty series and emits a
// warning; a proposal AOI without ground truth is an error.
std::vector<std::pair<TimeSeries, TimeSeries>> load_dataset(
    const std::filesystem::path& gt_root,
    const std::filesystem::path& prop_root,
    const std::string& id_property = "id", std::ostream* warnings = nullptr);

// JSON report with stable key order; read_report(write_report(r))
// reproduces every field exactly. Undefined MOTA values appear as null.
void write_report(const ScoreReport& report, const std::filesystem::path& path);
ScoreReport read_report(const std::filesystem::path& path);

struct SynthJob {
  ScenarioSpec scenario;
  std::optional<PerturbationSpec> perturbation;
};

// Parses a scenario description file; all fields are optional and
// default as in the spec structs. A "perturbation" object requests a
// proposal series alongside the ground truth.
SynthJob read_synth_spec(const std::filesystem::path& path);

// Writes gt/<aoi>/ frames, proposals/<aoi>/ when given, and a
// metadata.json with first appearances and id-swap events.
void write_synth_output(const Scenario& scenario, const Perturbed* perturbed,
                        const std::filesystem::path& out_dir);

}  // namespace scot
