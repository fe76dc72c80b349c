#include "scot/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "scot/errors.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace scot {
namespace {

std::string dir_name(const fs::path& dir) {
  fs::path clean = dir;
  if (clean.filename().empty()) clean = clean.parent_path();
  return clean.filename().string();
}

ordered_json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure(path.string() + ": " + e.what());
  }
}

void write_json_file(const ordered_json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoFailure("failed writing " + path.string());
}

Polygon polygon_from_geojson(const ordered_json& geom) {
  if (!geom.is_object() || geom.value("type", std::string()) != "Polygon") {
    throw InvalidGeometry("geometry type must be Polygon");
  }
  const auto coords = geom.find("coordinates");
  if (coords == geom.end() || !coords->is_array() || coords->empty()) {
    throw InvalidGeometry("Polygon needs a non-empty coordinates array");
  }
  Polygon poly;
  bool first = true;
  for (const ordered_json& ring_json : *coords) {
    if (!ring_json.is_array()) {
      throw InvalidGeometry("ring must be an array of positions");
    }
    std::vector<Point> ring;
    for (const ordered_json& pos : ring_json) {
      if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() ||
          !pos[1].is_number()) {
        throw InvalidGeometry("position must be an [x, y] number pair");
      }
      ring.push_back(Point{pos[0].get<double>(), pos[1].get<double>()});
    }
    if (first) {
      poly.exterior = std::move(ring);
      first = false;
    } else {
      poly.holes.push_back(std::move(ring));
    }
  }
  return poly;
}

ordered_json ring_to_geojson(const std::vector<Point>& ring) {
  ordered_json out = ordered_json::array();
  for (const Point& p : ring) {
    out.push_back({p.x, p.y});
  }
  out.push_back({ring.front().x, ring.front().y});  // close on disk
  return out;
}

ordered_json polygon_to_geojson(const ValidatedPolygon& poly) {
  ordered_json coords = ordered_json::array();
  coords.push_back(ring_to_geojson(poly.exterior()));
  for (const auto& hole : poly.holes()) {
    coords.push_back(ring_to_geojson(hole));
  }
  return ordered_json{{"type", "Polygon"}, {"coordinates", coords}};
}

const ordered_json& features_of(const ordered_json& doc, const fs::path& path) {
  if (!doc.is_object() ||
      doc.value("type", std::string()) != "FeatureCollection") {
    throw IoFailure(path.string() + ": expected a FeatureCollection");
  }
  const auto features = doc.find("features");
  if (features == doc.end() || !features->is_array()) {
    throw IoFailure(path.string() + ": missing features array");
  }
  return *features;
}

ValidatedPolygon feature_geometry(const ordered_json& feature,
                                  const fs::path& path, std::size_t index) {
  const auto geom = feature.find("geometry");
  if (geom == feature.end()) {
    throw InvalidGeometry(path.string() + ": feature " + std::to_string(index) +
                          " has no geometry");
  }
  try {
    return validate(polygon_from_geojson(*geom));
  } catch (const Error& e) {
    throw InvalidGeometry(path.string() + ": feature " + std::to_string(index) +
                          ": " + e.what());
  }
}

std::vector<Footprint> read_footprints(const fs::path& path,
                                       const std::string& id_property) {
  ordered_json doc = read_json_file(path);
  std::vector<Footprint> out;
  std::set<std::string> seen_ids;
  std::size_t index = 0;
  for (const ordered_json& feature : features_of(doc, path)) {
    const auto props = feature.find("properties");
    std::string id;
    if (props != feature.end() && props->is_object() &&
        props->contains(id_property) && !(*props)[id_property].is_null()) {
      const ordered_json& value = (*props)[id_property];
      id = value.is_string() ? value.get<std::string>() : value.dump();
    } else {
      throw MissingId(path.string() + ": feature " + std::to_string(index) +
                      " lacks property '" + id_property + "'");
    }
    if (!seen_ids.insert(id).second) {
      throw DuplicateLabel(path.string() + ": duplicate footprint id '" + id +
                           "'");
    }
    out.push_back(Footprint{std::move(id), feature_geometry(feature, path, index)});
    ++index;
  }
  return out;
}

std::vector<ValidatedPolygon> read_geometries(const fs::path& path) {
  ordered_json doc = read_json_file(path);
  std::vector<ValidatedPolygon> out;
  std::size_t index = 0;
  for (const ordered_json& feature : features_of(doc, path)) {
    out.push_back(feature_geometry(feature, path, index));
    ++index;
  }
  return out;
}

bool is_vector_file(const fs::path& path) {
  return path.extension() == ".geojson" || path.extension() == ".json";
}

struct DirListing {
  std::map<std::string, fs::path> frames;  // label -> file
  std::map<std::string, fs::path> udm;     // label -> sibling UDM file
};

DirListing scan_series_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw IoFailure("not a directory: " + dir.string());
  }
  constexpr std::string_view kUdmSuffix = "_UDM";
  DirListing out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || !is_vector_file(entry.path())) continue;
    std::string stem = entry.path().stem().string();
    if (stem.size() > kUdmSuffix.size() && stem.ends_with(kUdmSuffix)) {
      std::string label = stem.substr(0, stem.size() - kUdmSuffix.size());
      if (!out.udm.emplace(label, entry.path()).second) {
        throw DuplicateLabel(dir.string() + ": two UDM files for label '" +
                             label + "'");
      }
    } else {
      if (!out.frames.emplace(stem, entry.path()).second) {
        throw DuplicateLabel(dir.string() + ": two files for timestep label '" +
                             stem + "'");
      }
    }
  }
  if (out.frames.empty()) {
    throw EmptyDirectory("no frame files in " + dir.string());
  }
  return out;
}

}  // namespace

TimeSeries load_series(const fs::path& dir, const std::string& id_property) {
  DirListing listing = scan_series_dir(dir);
  TimeSeries series;
  series.aoi_id = dir_name(dir);
  for (const auto& [label, path] : listing.frames) {
    Frame frame;
    frame.timestep_label = label;
    frame.footprints = read_footprints(path, id_property);
    auto udm_it = listing.udm.find(label);
    if (udm_it != listing.udm.end()) {
      frame.udm = read_geometries(udm_it->second);
    }
    series.frames.push_back(std::move(frame));
  }
  return series;
}

void write_series(const TimeSeries& series, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create " + dir.string() + ": " + ec.message());

  for (const Frame& frame : series.frames) {
    ordered_json features = ordered_json::array();
    for (const Footprint& f : frame.footprints) {
      features.push_back({{"type", "Feature"},
                          {"properties", {{"id", f.id}}},
                          {"geometry", polygon_to_geojson(f.geometry)}});
    }
    ordered_json doc{{"type", "FeatureCollection"}, {"features", features}};
    write_json_file(doc, dir / (frame.timestep_label + ".geojson"));

    if (!frame.udm.empty()) {
      ordered_json udm_features = ordered_json::array();
      for (const ValidatedPolygon& poly : frame.udm) {
        udm_features.push_back({{"type", "Feature"},
                                {"properties", ordered_json::object()},
                                {"geometry", polygon_to_geojson(poly)}});
      }
      ordered_json udm_doc{{"type", "FeatureCollection"},
                           {"features", udm_features}};
      write_json_file(udm_doc, dir / (frame.timestep_label + "_UDM.geojson"));
    }
  }
}

namespace {

TimeSeries apply_filters_impl(const TimeSeries& series,
                              const FilterPolicy& policy,
                              const TimeSeries* udm_source) {
  if (policy.min_area < 0.0) {
    throw std::invalid_argument("min_area must be non-negative");
  }
  if (!(policy.udm_overlap_fraction >= 0.0 &&
        policy.udm_overlap_fraction <= 1.0)) {
    throw std::invalid_argument("udm_overlap_fraction must lie in [0, 1]");
  }

  std::map<std::string, const std::vector<ValidatedPolygon>*> udm_by_label;
  if (udm_source) {
    for (const Frame& frame : udm_source->frames) {
      udm_by_label[frame.timestep_label] = &frame.udm;
    }
  }
  static const std::vector<ValidatedPolygon> kNoUdm;

  TimeSeries out;
  out.aoi_id = series.aoi_id;
  for (const Frame& frame : series.frames) {
    const std::vector<ValidatedPolygon>* udm = &frame.udm;
    if (udm_source) {
      auto it = udm_by_label.find(frame.timestep_label);
      udm = it != udm_by_label.end() ? it->second : &kNoUdm;
    }

    Frame filtered;
    filtered.timestep_label = frame.timestep_label;
    filtered.udm = frame.udm;
    for (const Footprint& f : frame.footprints) {
      if (f.geometry.area() < policy.min_area) continue;
      if (!udm->empty() &&
          covered_area(f.geometry, *udm) >
              policy.udm_overlap_fraction * f.geometry.area()) {
        continue;
      }
      filtered.footprints.push_back(f);
    }
    out.frames.push_back(std::move(filtered));
  }
  return out;
}

}  // namespace

TimeSeries apply_filters(const TimeSeries& series, const FilterPolicy& policy) {
  return apply_filters_impl(series, policy, nullptr);
}

TimeSeries apply_filters(const TimeSeries& series, const FilterPolicy& policy,
                         const TimeSeries& udm_source) {
  return apply_filters_impl(series, policy, &udm_source);
}

std::pair<std::vector<std::string>, std::vector<std::vector<ValidatedPolygon>>>
load_polygon_frames(const fs::path& dir) {
  DirListing listing = scan_series_dir(dir);
  std::vector<std::string> labels;
  std::vector<std::vector<ValidatedPolygon>> frames;
  for (const auto& [label, path] : listing.frames) {
    labels.push_back(label);
    frames.push_back(read_geometries(path));
  }
  return {std::move(labels), std::move(frames)};
}

namespace {

int parse_pgm_int(const std::string& token, const fs::path& path) {
  try {
    std::size_t pos = 0;
    int value = std::stoi(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw IoFailure(path.string() + ": bad header token '" + token + "'");
  }
}

}  // namespace

BinaryMask read_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());

  auto next_token = [&]() -> std::string {
    std::string token;
    int c;
    while ((c = in.get()) != EOF) {
      if (c == '#') {
        while ((c = in.get()) != EOF && c != '\n') {
        }
        continue;
      }
      if (!std::isspace(c)) break;
    }
    if (c == EOF) throw IoFailure(path.string() + ": truncated header");
    token.push_back(static_cast<char>(c));
    while ((c = in.get()) != EOF && !std::isspace(c)) {
      token.push_back(static_cast<char>(c));
    }
    return token;
  };

  const std::string magic = next_token();
  if (magic != "P5" && magic != "P2") {
    throw IoFailure(path.string() + ": unsupported raster format '" + magic +
                    "' (want P5 or P2)");
  }
  const int width = parse_pgm_int(next_token(), path);
  const int height = parse_pgm_int(next_token(), path);
  const int maxval = parse_pgm_int(next_token(), path);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255) {
    throw IoFailure(path.string() + ": unsupported dimensions or depth");
  }

  BinaryMask mask;
  mask.width = width;
  mask.height = height;
  mask.data.resize(static_cast<std::size_t>(width) * height);
  if (magic == "P5") {
    in.read(reinterpret_cast<char*>(mask.data.data()),
            static_cast<std::streamsize>(mask.data.size()));
    if (in.gcount() != static_cast<std::streamsize>(mask.data.size())) {
      throw IoFailure(path.string() + ": truncated pixel data");
    }
  } else {
    for (std::uint8_t& px : mask.data) {
      px = static_cast<std::uint8_t>(parse_pgm_int(next_token(), path));
    }
  }
  return mask;
}

void write_pgm(const BinaryMask& mask, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << "P5\n" << mask.width << ' ' << mask.height << "\n255\n";
  for (std::uint8_t px : mask.data) {
    out.put(px ? static_cast<char>(255) : static_cast<char>(0));
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

namespace {

bool has_frame_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) return false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_vector_file(entry.path())) return true;
  }
  return false;
}

std::map<std::string, fs::path> aoi_subdirs(const fs::path& root) {
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && has_frame_files(entry.path())) {
      out.emplace(entry.path().filename().string(), entry.path());
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<TimeSeries, TimeSeries>> load_dataset(
    const fs::path& gt_root, const fs::path& prop_root,
    const std::string& id_property, std::ostream* warnings) {
  if (!fs::is_directory(gt_root)) {
    throw IoFailure("not a directory: " + gt_root.string());
  }
  if (!fs::is_directory(prop_root)) {
    throw IoFailure("not a directory: " + prop_root.string());
  }

  std::vector<std::pair<TimeSeries, TimeSeries>> out;
  std::map<std::string, fs::path> gt_aois = aoi_subdirs(gt_root);

  if (gt_aois.empty()) {
    // single-AOI layout: frame files sit directly under the roots
    TimeSeries gt = load_series(gt_root, id_property);
    TimeSeries props;
    props.aoi_id = gt.aoi_id;
    if (has_frame_files(prop_root)) {
      props = load_series(prop_root, id_property);
      props.aoi_id = gt.aoi_id;
    } else if (warnings) {
      *warnings << "warning: no proposal frames in " << prop_root.string()
                << "; scoring AOI '" << gt.aoi_id << "' against an empty series\n";
    }
    out.emplace_back(std::move(gt), std::move(props));
    return out;
  }

  std::map<std::string, fs::path> prop_aois = aoi_subdirs(prop_root);
  for (const auto& [name, dir] : gt_aois) {
    TimeSeries gt = load_series(dir, id_property);
    gt.aoi_id = name;
    TimeSeries props;
    props.aoi_id = name;
    auto it = prop_aois.find(name);
    if (it != prop_aois.end()) {
      props = load_series(it->second, id_property);
      props.aoi_id = name;
      prop_aois.erase(it);
    } else if (warnings) {
      *warnings << "warning: no proposals for AOI '" << name
                << "'; scoring against an empty series\n";
    }
    out.emplace_back(std::move(gt), std::move(props));
  }
  if (!prop_aois.empty()) {
    throw MisalignedSeries("proposal AOI '" + prop_aois.begin()->first +
                           "' has no ground-truth counterpart");
  }
  return out;
}

namespace {

ordered_json counts_to_json(const MatchCounts& c) {
  return ordered_json{{"tp", c.tp},         {"fp", c.fp},
                      {"fn", c.fn},         {"mm", c.mm},
                      {"tp_new", c.tp_new}, {"fp_new", c.fp_new},
                      {"fn_new", c.fn_new}};
}

MatchCounts counts_from_json(const ordered_json& j) {
  MatchCounts c;
  c.tp = j.at("tp").get<std::int64_t>();
  c.fp = j.at("fp").get<std::int64_t>();
  c.fn = j.at("fn").get<std::int64_t>();
  c.mm = j.at("mm").get<std::int64_t>();
  c.tp_new = j.at("tp_new").get<std::int64_t>();
  c.fp_new = j.at("fp_new").get<std::int64_t>();
  c.fn_new = j.at("fn_new").get<std::int64_t>();
  return c;
}

ordered_json optional_double(double value) {
  if (std::isnan(value)) return nullptr;
  return value;
}

double optional_double_from(const ordered_json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

ordered_json stats_to_json(const ScoreStats& s) {
  return ordered_json{{"mean", optional_double(s.mean)},
                      {"stddev", optional_double(s.stddev)}};
}

ScoreStats stats_from_json(const ordered_json& j) {
  ScoreStats s;
  s.mean = optional_double_from(j.at("mean"));
  s.stddev = optional_double_from(j.at("stddev"));
  return s;
}

}  // namespace

void write_report(const ScoreReport& report, const fs::path& path) {
  ordered_json j;
  j["config"] = {{"beta", report.config.beta},
                 {"iou_threshold", report.config.iou_threshold},
                 {"min_area", report.config.min_area}};
  ordered_json aois = ordered_json::object();
  for (const AoiScores& s : report.per_aoi) {
    aois[s.aoi_id] = {{"counts", counts_to_json(s.counts)},
                      {"total_gt", s.total_gt},
                      {"f1", s.f1},
                      {"f_track", s.f_track},
                      {"f_change", s.f_change},
                      {"f_scot", s.f_scot},
                      {"mota", optional_double(s.mota)}};
  }
  j["aois"] = std::move(aois);
  j["dataset"] = {{"f1", stats_to_json(report.dataset.f1)},
                  {"f_track", stats_to_json(report.dataset.f_track)},
                  {"f_change", stats_to_json(report.dataset.f_change)},
                  {"f_scot", stats_to_json(report.dataset.f_scot)},
                  {"mota", stats_to_json(report.dataset.mota)}};
  write_json_file(j, path);
}

ScoreReport read_report(const fs::path& path) {
  ordered_json j = read_json_file(path);
  try {
    ScoreReport report;
    const ordered_json& config = j.at("config");
    report.config.beta = config.at("beta").get<double>();
    report.config.iou_threshold = config.at("iou_threshold").get<double>();
    report.config.min_area = config.at("min_area").get<double>();

    for (const auto& [aoi_id, entry] : j.at("aois").items()) {
      AoiScores s;
      s.aoi_id = aoi_id;
      s.counts = counts_from_json(entry.at("counts"));
      s.total_gt = entry.at("total_gt").get<std::int64_t>();
      s.f1 = entry.at("f1").get<double>();
      s.f_track = entry.at("f_track").get<double>();
      s.f_change = entry.at("f_change").get<double>();
      s.f_scot = entry.at("f_scot").get<double>();
      s.mota = optional_double_from(entry.at("mota"));
      report.per_aoi.push_back(std::move(s));
    }

    const ordered_json& dataset = j.at("dataset");
    report.dataset.f1 = stats_from_json(dataset.at("f1"));
    report.dataset.f_track = stats_from_json(dataset.at("f_track"));
    report.dataset.f_change = stats_from_json(dataset.at("f_change"));
    report.dataset.f_scot = stats_from_json(dataset.at("f_scot"));
    report.dataset.mota = stats_from_json(dataset.at("mota"));
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure(path.string() + ": " + e.what());
  }
}

namespace {

void check_known_keys(const ordered_json& j,
                      std::initializer_list<std::string_view> known,
                      const fs::path& path) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw IoFailure(path.string() + ": unknown field '" + key + "'");
    }
  }
}

}  // namespace

SynthJob read_synth_spec(const fs::path& path) {
  ordered_json j = read_json_file(path);
  if (!j.is_object()) {
    throw IoFailure(path.string() + ": scenario description must be an object");
  }
  check_known_keys(j, {"scenario", "perturbation"}, path);

  SynthJob job;
  try {
    if (j.contains("scenario")) {
      const ordered_json& sj = j.at("scenario");
      check_known_keys(sj,
                       {"n_initial_buildings", "n_frames", "construction_rate",
                        "occlusion_rate", "grid_extent", "min_separation",
                        "seed"},
                       path);
      ScenarioSpec& s = job.scenario;
      s.n_initial_buildings =
          sj.value("n_initial_buildings", s.n_initial_buildings);
      s.n_frames = sj.value("n_frames", s.n_frames);
      s.construction_rate = sj.value("construction_rate", s.construction_rate);
      s.occlusion_rate = sj.value("occlusion_rate", s.occlusion_rate);
      s.grid_extent = sj.value("grid_extent", s.grid_extent);
      s.min_separation = sj.value("min_separation", s.min_separation);
      s.seed = sj.value("seed", s.seed);
    }

    if (j.contains("perturbation")) {
      const ordered_json& pj = j.at("perturbation");
      check_known_keys(pj,
                       {"jitter_px", "drop_rate", "spurious_rate",
                        "id_swap_rate", "delay_frames", "seed"},
                       path);
      PerturbationSpec p;
      p.jitter_px = pj.value("jitter_px", p.jitter_px);
      p.drop_rate = pj.value("drop_rate", p.drop_rate);
      p.spurious_rate = pj.value("spurious_rate", p.spurious_rate);
      p.id_swap_rate = pj.value("id_swap_rate", p.id_swap_rate);
      p.delay_frames = pj.value("delay_frames", p.delay_frames);
      p.seed = pj.value("seed", job.scenario.seed + 1);
      job.perturbation = p;
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure(path.string() + ": " + e.what());
  }
  return job;
}

void write_synth_output(const Scenario& scenario, const Perturbed* perturbed,
                        const fs::path& out_dir) {
  const std::string& aoi = scenario.series.aoi_id;
  write_series(scenario.series, out_dir / "gt" / aoi);
  if (perturbed) {
    write_series(perturbed->series, out_dir / "proposals" / aoi);
  }

  ordered_json first = ordered_json::object();
  for (const auto& [id, frame] : scenario.first_visible) {
    first[id] = frame;
  }
  ordered_json swaps = ordered_json::array();
  if (perturbed) {
    for (const IdSwapEvent& e : perturbed->id_swaps) {
      swaps.push_back({{"frame", e.frame},
                       {"gt_id", e.gt_id},
                       {"old_prop_id", e.old_prop_id},
                       {"new_prop_id", e.new_prop_id}});
    }
  }
  ordered_json meta{{"aoi_id", aoi},
                    {"first_visible", first},
                    {"id_swaps", swaps}};
  write_json_file(meta, out_dir / "metadata.json");
}

}  // namespace scot
