// Python bindings for the scot library. Polygons cross the boundary as
// sequences of (x, y) pairs, masks as 2-d uint8 numpy arrays, file paths
// as str / os.PathLike.

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "scot/errors.hpp"
#include "scot/geometry.hpp"
#include "scot/io.hpp"
#include "scot/matching.hpp"
#include "scot/metric.hpp"
#include "scot/synth.hpp"
#include "scot/tracker.hpp"

namespace py = pybind11;

namespace {

std::vector<scot::Point> ring_from_py(const py::handle& obj) {
  std::vector<scot::Point> ring;
  for (const py::handle& vertex : obj) {
    const auto xy = vertex.cast<std::pair<double, double>>();
    ring.push_back({xy.first, xy.second});
  }
  return ring;
}

scot::ValidatedPolygon polygon_from_py(const py::iterable& exterior,
                                       const py::iterable& holes) {
  scot::Polygon raw;
  raw.exterior = ring_from_py(exterior);
  for (const py::handle& hole : holes) {
    raw.holes.push_back(ring_from_py(hole));
  }
  return scot::validate(raw);
}

py::list ring_to_py(const std::vector<scot::Point>& ring) {
  py::list out;
  for (const scot::Point& p : ring) {
    out.append(py::make_tuple(p.x, p.y));
  }
  return out;
}

using MaskArray =
    py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

scot::BinaryMask mask_from_array(const MaskArray& arr) {
  if (arr.ndim() != 2) {
    throw py::value_error("mask must be a 2-d array of uint8");
  }
  scot::BinaryMask mask;
  mask.height = static_cast<int>(arr.shape(0));
  mask.width = static_cast<int>(arr.shape(1));
  mask.data.assign(arr.data(), arr.data() + arr.size());
  return mask;
}

py::array_t<std::uint8_t> mask_to_array(const scot::BinaryMask& mask) {
  py::array_t<std::uint8_t> arr(
      std::vector<py::ssize_t>{mask.height, mask.width});
  std::copy(mask.data.begin(), mask.data.end(), arr.mutable_data());
  return arr;
}

void register_errors(py::module_& m) {
  auto& base = py::register_exception<scot::Error>(m, "Error", PyExc_RuntimeError);
  // Specific errors are registered after the base so their translators
  // run first and each C++ type maps to its own Python class.
  py::register_exception<scot::DegenerateGeometry>(m, "DegenerateGeometry", base.ptr());
  py::register_exception<scot::SelfIntersection>(m, "SelfIntersection", base.ptr());
  py::register_exception<scot::MisalignedSeries>(m, "MisalignedSeries", base.ptr());
  py::register_exception<scot::ZeroGroundTruth>(m, "ZeroGroundTruth", base.ptr());
  py::register_exception<scot::EmptyDataset>(m, "EmptyDataset", base.ptr());
  py::register_exception<scot::InfeasiblePacking>(m, "InfeasiblePacking", base.ptr());
  py::register_exception<scot::TooLarge>(m, "TooLarge", base.ptr());
  py::register_exception<scot::MissingId>(m, "MissingId", base.ptr());
  py::register_exception<scot::InvalidGeometry>(m, "InvalidGeometry", base.ptr());
  py::register_exception<scot::DuplicateLabel>(m, "DuplicateLabel", base.ptr());
  py::register_exception<scot::EmptyDirectory>(m, "EmptyDirectory", base.ptr());
  py::register_exception<scot::IoFailure>(m, "IoFailure", base.ptr());
}

void register_geometry(py::module_& m) {
  py::class_<scot::ValidatedPolygon>(m, "Polygon",
      "Simple polygon with optional holes, validated on construction.\n"
      "Vertices are (x, y) pairs in pixel units; rings are stored open\n"
      "(first vertex not repeated). Raises DegenerateGeometry or\n"
      "SelfIntersection for unusable input.")
      .def(py::init(&polygon_from_py), py::arg("exterior"),
           py::arg("holes") = py::list())
      .def_property_readonly(
          "exterior",
          [](const scot::ValidatedPolygon& p) { return ring_to_py(p.exterior()); },
          "Exterior ring as a list of (x, y) tuples, counter-clockwise.")
      .def_property_readonly(
          "holes",
          [](const scot::ValidatedPolygon& p) {
            py::list out;
            for (const auto& hole : p.holes()) out.append(ring_to_py(hole));
            return out;
          },
          "Hole rings as lists of (x, y) tuples, clockwise.")
      .def_property_readonly(
          "area", [](const scot::ValidatedPolygon& p) { return p.area(); },
          "Exterior area minus hole areas, in px^2.")
      .def_property_readonly(
          "bbox",
          [](const scot::ValidatedPolygon& p) {
            const scot::BoundingBox& b = p.bbox();
            return py::make_tuple(b.min_x, b.min_y, b.max_x, b.max_y);
          },
          "Axis-aligned bounds as (min_x, min_y, max_x, max_y).")
      .def("__repr__", [](const scot::ValidatedPolygon& p) {
        std::ostringstream os;
        os << "Polygon(vertices=" << p.exterior().size()
           << ", holes=" << p.holes().size() << ", area=" << p.area() << ")";
        return os.str();
      });

  m.def("rect", &scot::make_rect, py::arg("x"), py::arg("y"),
        py::arg("width"), py::arg("height"),
        "Axis-aligned rectangle with its corner at (x, y).");
  m.def(
      "area", [](const scot::ValidatedPolygon& p) { return scot::area(p); },
      py::arg("polygon"), "Exterior area minus hole areas, in px^2.");
  m.def("intersection_area", &scot::intersection_area, py::arg("a"),
        py::arg("b"), "Overlap area of two polygons; 0 when disjoint.");
  m.def("iou", &scot::iou, py::arg("a"), py::arg("b"),
        "Intersection over union, in [0, 1].");
}

void register_matching(py::module_& m) {
  py::class_<scot::MatchedPair>(m, "MatchedPair")
      .def_readonly("gt_index", &scot::MatchedPair::gt_index)
      .def_readonly("prop_index", &scot::MatchedPair::prop_index)
      .def_readonly("iou", &scot::MatchedPair::iou)
      .def("__repr__", [](const scot::MatchedPair& p) {
        std::ostringstream os;
        os << "MatchedPair(gt_index=" << p.gt_index
           << ", prop_index=" << p.prop_index << ", iou=" << p.iou << ")";
        return os.str();
      });

  py::class_<scot::MatchResult>(m, "MatchResult",
      "One frame's optimal assignment. pairs is sorted by\n"
      "(gt_index, prop_index); the unmatched lists complete the partition\n"
      "of both input sets.")
      .def_readonly("pairs", &scot::MatchResult::pairs)
      .def_readonly("unmatched_gt", &scot::MatchResult::unmatched_gt)
      .def_readonly("unmatched_prop", &scot::MatchResult::unmatched_prop)
      .def("iou_sum", &scot::MatchResult::iou_sum,
           "Sum of the matched pair IOUs.");

  m.def(
      "match_frame",
      [](std::vector<scot::ValidatedPolygon> gt,
         std::vector<scot::ValidatedPolygon> proposals, double threshold) {
        return scot::match_frame(gt, proposals, threshold);
      },
      py::arg("gt"), py::arg("proposals"), py::arg("threshold") = 0.25,
      "Optimal one-to-one matching of one frame: maximum number of pairs\n"
      "with IOU >= threshold, then maximum IOU sum, remaining ties broken\n"
      "by lowest (gt_index, prop_index).");
  m.def(
      "brute_force_match",
      [](std::vector<scot::ValidatedPolygon> gt,
         std::vector<scot::ValidatedPolygon> proposals, double threshold) {
        return scot::brute_force_match(gt, proposals, threshold);
      },
      py::arg("gt"), py::arg("proposals"), py::arg("threshold") = 0.25,
      "Exhaustive reference matcher with the same contract as match_frame.\n"
      "Raises TooLarge when the smaller side exceeds 10 polygons.");
}

void register_series(py::module_& m) {
  py::class_<scot::Footprint>(m, "Footprint",
      "One building outline at one timestep, tagged with a persistent id.")
      .def(py::init([](std::string id, scot::ValidatedPolygon geometry) {
             return scot::Footprint{std::move(id), std::move(geometry)};
           }),
           py::arg("id"), py::arg("geometry"))
      .def_readwrite("id", &scot::Footprint::id)
      .def_readwrite("geometry", &scot::Footprint::geometry)
      .def("__repr__", [](const scot::Footprint& f) {
        std::ostringstream os;
        os << "Footprint(id=" << py::repr(py::cast(f.id))
           << ", area=" << f.geometry.area() << ")";
        return os.str();
      });

  py::class_<scot::Frame>(m, "Frame",
      "All footprints of one timestep plus its unusable-data masks.")
      .def(py::init([](std::string label, std::vector<scot::Footprint> fps,
                       std::vector<scot::ValidatedPolygon> udm) {
             return scot::Frame{std::move(label), std::move(fps), std::move(udm)};
           }),
           py::arg("timestep_label"),
           py::arg("footprints") = std::vector<scot::Footprint>{},
           py::arg("udm") = std::vector<scot::ValidatedPolygon>{})
      .def_readwrite("timestep_label", &scot::Frame::timestep_label)
      .def_readwrite("footprints", &scot::Frame::footprints)
      .def_readwrite("udm", &scot::Frame::udm);

  py::class_<scot::TimeSeries>(m, "TimeSeries",
      "Frames of one AOI, sorted by unique timestep label.")
      .def(py::init([](std::string aoi_id, std::vector<scot::Frame> frames) {
             return scot::TimeSeries{std::move(aoi_id), std::move(frames)};
           }),
           py::arg("aoi_id"), py::arg("frames") = std::vector<scot::Frame>{})
      .def_readwrite("aoi_id", &scot::TimeSeries::aoi_id)
      .def_readwrite("frames", &scot::TimeSeries::frames)
      .def("__repr__", [](const scot::TimeSeries& s) {
        std::ostringstream os;
        os << "TimeSeries(aoi_id=" << py::repr(py::cast(s.aoi_id))
           << ", frames=" << s.frames.size()
           << ", footprints=" << scot::total_footprints(s) << ")";
        return os.str();
      });
}

void register_metric(py::module_& m) {
  py::class_<scot::MatchCounts>(m, "MatchCounts")
      .def(py::init([](std::int64_t tp, std::int64_t fp, std::int64_t fn,
                       std::int64_t mm, std::int64_t tp_new,
                       std::int64_t fp_new, std::int64_t fn_new) {
             return scot::MatchCounts{tp, fp, fn, mm, tp_new, fp_new, fn_new};
           }),
           py::arg("tp") = 0, py::arg("fp") = 0, py::arg("fn") = 0,
           py::arg("mm") = 0, py::arg("tp_new") = 0, py::arg("fp_new") = 0,
           py::arg("fn_new") = 0)
      .def_readwrite("tp", &scot::MatchCounts::tp)
      .def_readwrite("fp", &scot::MatchCounts::fp)
      .def_readwrite("fn", &scot::MatchCounts::fn)
      .def_readwrite("mm", &scot::MatchCounts::mm)
      .def_readwrite("tp_new", &scot::MatchCounts::tp_new)
      .def_readwrite("fp_new", &scot::MatchCounts::fp_new)
      .def_readwrite("fn_new", &scot::MatchCounts::fn_new)
      .def(py::self == py::self)
      .def("__repr__", [](const scot::MatchCounts& c) {
        std::ostringstream os;
        os << "MatchCounts(tp=" << c.tp << ", fp=" << c.fp << ", fn=" << c.fn
           << ", mm=" << c.mm << ", tp_new=" << c.tp_new
           << ", fp_new=" << c.fp_new << ", fn_new=" << c.fn_new << ")";
        return os.str();
      });

  py::class_<scot::ScotConfig>(m, "ScotConfig")
      .def(py::init([](double beta, double iou_threshold, double min_area) {
             return scot::ScotConfig{beta, iou_threshold, min_area};
           }),
           py::arg("beta") = 2.0, py::arg("iou_threshold") = 0.25,
           py::arg("min_area") = 4.0)
      .def_readwrite("beta", &scot::ScotConfig::beta)
      .def_readwrite("iou_threshold", &scot::ScotConfig::iou_threshold)
      .def_readwrite("min_area", &scot::ScotConfig::min_area)
      .def("__repr__", [](const scot::ScotConfig& c) {
        std::ostringstream os;
        os << "ScotConfig(beta=" << c.beta
           << ", iou_threshold=" << c.iou_threshold
           << ", min_area=" << c.min_area << ")";
        return os.str();
      });

  py::class_<scot::AoiScores>(m, "AoiScores")
      .def_readonly("aoi_id", &scot::AoiScores::aoi_id)
      .def_readonly("counts", &scot::AoiScores::counts)
      .def_readonly("total_gt", &scot::AoiScores::total_gt)
      .def_readonly("f1", &scot::AoiScores::f1)
      .def_readonly("f_track", &scot::AoiScores::f_track)
      .def_readonly("f_change", &scot::AoiScores::f_change)
      .def_readonly("f_scot", &scot::AoiScores::f_scot)
      .def_readonly("mota", &scot::AoiScores::mota,
                    "NaN when the AOI has no ground-truth footprints.")
      .def("__repr__", [](const scot::AoiScores& s) {
        std::ostringstream os;
        os << "AoiScores(aoi_id=" << py::repr(py::cast(s.aoi_id))
           << ", f_scot=" << s.f_scot << ", f_track=" << s.f_track
           << ", f_change=" << s.f_change << ", f1=" << s.f1
           << ", mota=" << s.mota << ")";
        return os.str();
      });

  py::class_<scot::ScoreStats>(m, "ScoreStats")
      .def_readonly("mean", &scot::ScoreStats::mean)
      .def_readonly("stddev", &scot::ScoreStats::stddev)
      .def("__repr__", [](const scot::ScoreStats& s) {
        std::ostringstream os;
        os << "ScoreStats(mean=" << s.mean << ", stddev=" << s.stddev << ")";
        return os.str();
      });

  py::class_<scot::DatasetStats>(m, "DatasetStats")
      .def_readonly("f1", &scot::DatasetStats::f1)
      .def_readonly("f_track", &scot::DatasetStats::f_track)
      .def_readonly("f_change", &scot::DatasetStats::f_change)
      .def_readonly("f_scot", &scot::DatasetStats::f_scot)
      .def_readonly("mota", &scot::DatasetStats::mota);

  py::class_<scot::ScoreReport>(m, "ScoreReport")
      .def_readonly("config", &scot::ScoreReport::config)
      .def_readonly("per_aoi", &scot::ScoreReport::per_aoi)
      .def_readonly("dataset", &scot::ScoreReport::dataset);

  m.def("f_track", &scot::f_track, py::arg("counts"),
        "(tp - mm) / (tp + (fp + fn) / 2); 1.0 when the denominator is 0.");
  m.def("f_change", &scot::f_change, py::arg("counts"),
        "F1 over the *_new counts; 1.0 when the denominator is 0.");
  m.def("legacy_f1", &scot::legacy_f1, py::arg("counts"),
        "Plain detection F1 over tp / fp / fn, ignoring identifiers.");
  m.def("combine", &scot::combine, py::arg("f_track"), py::arg("f_change"),
        py::arg("beta"),
        "Weighted harmonic mean of the two scores; beta > 1 favours\n"
        "f_change. combine(0, 0, beta) is 0.");
  m.def("mota", &scot::mota, py::arg("counts"), py::arg("total_gt"),
        "1 - (fn + fp + mm) / total_gt. Unbounded below; raises\n"
        "ZeroGroundTruth when total_gt <= 0.");
  m.def("score_aoi", &scot::score_aoi, py::arg("gt"), py::arg("proposals"),
        py::arg("config") = scot::ScotConfig{},
        "Score one proposal series against its ground truth.");
  m.def(
      "score_dataset",
      [](std::vector<std::pair<scot::TimeSeries, scot::TimeSeries>> aois,
         const scot::ScotConfig& cfg) {
        return scot::score_dataset(aois, cfg);
      },
      py::arg("aois"), py::arg("config") = scot::ScotConfig{},
      "Score (gt, proposals) pairs and aggregate mean / population stddev\n"
      "per score across AOIs. Raises EmptyDataset for an empty list.");
}

void register_tracker(py::module_& m) {
  m.def(
      "polygonize_mask",
      [](const MaskArray& mask, double min_area) {
        return scot::polygonize_mask(mask_from_array(mask), min_area);
      },
      py::arg("mask"), py::arg("min_area") = 4.0,
      "Trace one polygon per 8-connected foreground component of a 2-d\n"
      "uint8 mask (nonzero = foreground). Holes are filled, diagonal\n"
      "pinch points bridged, components below min_area dropped.");
  m.def(
      "rasterize_polygons",
      [](std::vector<scot::ValidatedPolygon> polygons, int width, int height) {
        return mask_to_array(scot::rasterize_polygons(polygons, width, height));
      },
      py::arg("polygons"), py::arg("width"), py::arg("height"),
      "Render polygons into a (height, width) uint8 mask; a pixel is\n"
      "foreground when its center lies inside any polygon.");
  m.def(
      "propagate_ids",
      [](std::vector<std::vector<scot::ValidatedPolygon>> frames,
         double threshold, int lookback, std::vector<std::string> labels) {
        return scot::propagate_ids(frames, threshold, lookback,
                                   std::move(labels));
      },
      py::arg("frames"), py::arg("threshold") = 0.25, py::arg("lookback") = 1,
      py::arg("labels") = std::vector<std::string>{},
      "Baseline identifier propagation over per-frame polygon lists:\n"
      "matched footprints inherit the previous frame's id, unmatched ones\n"
      "draw fresh ids. Returns a TimeSeries.");
}

void register_synth(py::module_& m) {
  py::class_<scot::ScenarioSpec>(m, "ScenarioSpec")
      .def(py::init([](int n_initial_buildings, int n_frames,
                       double construction_rate, double occlusion_rate,
                       double grid_extent, double min_separation,
                       std::uint64_t seed) {
             scot::ScenarioSpec s;
             s.n_initial_buildings = n_initial_buildings;
             s.n_frames = n_frames;
             s.construction_rate = construction_rate;
             s.occlusion_rate = occlusion_rate;
             s.grid_extent = grid_extent;
             s.min_separation = min_separation;
             s.seed = seed;
             return s;
           }),
           py::arg("n_initial_buildings") = 4, py::arg("n_frames") = 5,
           py::arg("construction_rate") = 0.0, py::arg("occlusion_rate") = 0.0,
           py::arg("grid_extent") = 1024.0, py::arg("min_separation") = 4.0,
           py::arg("seed") = 0)
      .def_readwrite("n_initial_buildings", &scot::ScenarioSpec::n_initial_buildings)
      .def_readwrite("n_frames", &scot::ScenarioSpec::n_frames)
      .def_readwrite("construction_rate", &scot::ScenarioSpec::construction_rate)
      .def_readwrite("occlusion_rate", &scot::ScenarioSpec::occlusion_rate)
      .def_readwrite("grid_extent", &scot::ScenarioSpec::grid_extent)
      .def_readwrite("min_separation", &scot::ScenarioSpec::min_separation)
      .def_readwrite("seed", &scot::ScenarioSpec::seed);

  py::class_<scot::Scenario>(m, "Scenario")
      .def_readonly("series", &scot::Scenario::series)
      .def_readonly("first_visible", &scot::Scenario::first_visible,
                    "id -> frame index of first appearance.");

  py::class_<scot::PerturbationSpec>(m, "PerturbationSpec")
      .def(py::init([](double jitter_px, double drop_rate, double spurious_rate,
                       double id_swap_rate, int delay_frames,
                       std::uint64_t seed) {
             scot::PerturbationSpec s;
             s.jitter_px = jitter_px;
             s.drop_rate = drop_rate;
             s.spurious_rate = spurious_rate;
             s.id_swap_rate = id_swap_rate;
             s.delay_frames = delay_frames;
             s.seed = seed;
             return s;
           }),
           py::arg("jitter_px") = 0.0, py::arg("drop_rate") = 0.0,
           py::arg("spurious_rate") = 0.0, py::arg("id_swap_rate") = 0.0,
           py::arg("delay_frames") = 0, py::arg("seed") = 0)
      .def_readwrite("jitter_px", &scot::PerturbationSpec::jitter_px)
      .def_readwrite("drop_rate", &scot::PerturbationSpec::drop_rate)
      .def_readwrite("spurious_rate", &scot::PerturbationSpec::spurious_rate)
      .def_readwrite("id_swap_rate", &scot::PerturbationSpec::id_swap_rate)
      .def_readwrite("delay_frames", &scot::PerturbationSpec::delay_frames)
      .def_readwrite("seed", &scot::PerturbationSpec::seed);

  py::class_<scot::IdSwapEvent>(m, "IdSwapEvent")
      .def_readonly("frame", &scot::IdSwapEvent::frame)
      .def_readonly("gt_id", &scot::IdSwapEvent::gt_id)
      .def_readonly("old_prop_id", &scot::IdSwapEvent::old_prop_id)
      .def_readonly("new_prop_id", &scot::IdSwapEvent::new_prop_id)
      .def("__repr__", [](const scot::IdSwapEvent& e) {
        std::ostringstream os;
        os << "IdSwapEvent(frame=" << e.frame << ", gt_id="
           << py::repr(py::cast(e.gt_id)) << ", old_prop_id="
           << py::repr(py::cast(e.old_prop_id)) << ", new_prop_id="
           << py::repr(py::cast(e.new_prop_id)) << ")";
        return os.str();
      });

  py::class_<scot::Perturbed>(m, "Perturbed")
      .def_readonly("series", &scot::Perturbed::series)
      .def_readonly("id_swaps", &scot::Perturbed::id_swaps);

  m.def("gen_scenario", &scot::gen_scenario, py::arg("spec"),
        "Deterministic synthetic ground truth: rectangular buildings\n"
        "packed into the scene, persisting once constructed, occasionally\n"
        "occluded behind udm regions. Raises InfeasiblePacking when a\n"
        "building cannot be placed.");
  m.def("perturb", &scot::perturb, py::arg("gt"), py::arg("spec"),
        "Derive a proposal series from ground truth under a controllable\n"
        "noise model (vertex jitter, drops, spurious footprints, id swaps,\n"
        "detection delay). Deterministic given the spec.");
}

void register_io(py::module_& m) {
  py::class_<scot::FilterPolicy>(m, "FilterPolicy")
      .def(py::init([](double min_area, double udm_overlap_fraction) {
             return scot::FilterPolicy{min_area, udm_overlap_fraction};
           }),
           py::arg("min_area") = 4.0, py::arg("udm_overlap_fraction") = 0.5)
      .def_readwrite("min_area", &scot::FilterPolicy::min_area)
      .def_readwrite("udm_overlap_fraction", &scot::FilterPolicy::udm_overlap_fraction);

  m.def("load_series", &scot::load_series, py::arg("dir"),
        py::arg("id_property") = "id",
        "Read one frame per vector file in dir, sorted by timestep label\n"
        "(= filename stem); sibling <label>_UDM files carry unusable-data\n"
        "regions.");
  m.def("write_series", &scot::write_series, py::arg("series"), py::arg("dir"),
        "Inverse of load_series.");
  m.def(
      "apply_filters",
      [](const scot::TimeSeries& series, const scot::FilterPolicy& policy) {
        return scot::apply_filters(series, policy);
      },
      py::arg("series"), py::arg("policy") = scot::FilterPolicy{},
      "Drop footprints below min_area or mostly under the series' own\n"
      "unusable-data masks. Idempotent.");
  m.def(
      "apply_filters",
      [](const scot::TimeSeries& series, const scot::FilterPolicy& policy,
         const scot::TimeSeries& udm_source) {
        return scot::apply_filters(series, policy, udm_source);
      },
      py::arg("series"), py::arg("policy"), py::arg("udm_source"),
      "Same, but take the masks from matching frames of udm_source\n"
      "(the ground truth, when filtering proposals).");
  m.def("load_polygon_frames", &scot::load_polygon_frames, py::arg("dir"),
        "Frame geometries without identifier requirements (tracker input).\n"
        "Returns (labels, frames) sorted by label.");
  m.def(
      "read_pgm",
      [](const std::filesystem::path& path) {
        return mask_to_array(scot::read_pgm(path));
      },
      py::arg("path"),
      "Read an 8-bit PGM (P5 or P2) as a (height, width) uint8 array.");
  m.def(
      "write_pgm",
      [](const MaskArray& mask, const std::filesystem::path& path) {
        scot::write_pgm(mask_from_array(mask), path);
      },
      py::arg("mask"), py::arg("path"), "Write a 2-d uint8 array as PGM (P5).");
  m.def(
      "load_dataset",
      [](const std::filesystem::path& gt_root,
         const std::filesystem::path& prop_root,
         const std::string& id_property) {
        std::ostringstream warnings;
        auto pairs = scot::load_dataset(gt_root, prop_root, id_property, &warnings);
        const std::string text = warnings.str();
        if (!text.empty() &&
            PyErr_WarnEx(PyExc_RuntimeWarning, text.c_str(), 1) != 0) {
          throw py::error_already_set();
        }
        return pairs;
      },
      py::arg("gt_root"), py::arg("proposal_root"),
      py::arg("id_property") = "id",
      "Pair AOI subdirectories of the two roots (a root holding loose\n"
      "frame files is one AOI). A ground-truth AOI without proposals\n"
      "scores against an empty series and emits a RuntimeWarning; a\n"
      "proposal AOI without ground truth raises MisalignedSeries.");
  m.def("write_report", &scot::write_report, py::arg("report"), py::arg("path"),
        "Write a ScoreReport as JSON with stable key order; undefined MOTA\n"
        "values appear as null.");
  m.def("read_report", &scot::read_report, py::arg("path"),
        "Read back a report written by write_report, reproducing every\n"
        "field exactly.");
}

}  // namespace

PYBIND11_MODULE(_scot, m) {
  m.doc() =
      "SCOT: scoring for identifier-tagged building-footprint time series,\n"
      "plus the baseline id-propagation tracker and a synthetic-scenario\n"
      "generator.";
  m.attr("__version__") = "1.0.0";

  register_errors(m);
  register_geometry(m);
  register_matching(m);
  register_series(m);
  register_metric(m);
  register_tracker(m);
  register_synth(m);
  register_io(m);
}
