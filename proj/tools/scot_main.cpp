#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scot/errors.hpp"
#include "scot/io.hpp"
#include "scot/metric.hpp"
#include "scot/synth.hpp"
#include "scot/tracker.hpp"

namespace fs = std::filesystem;

namespace {

struct ScoreArgs {
  std::string ground_truth;
  std::string proposals;
  std::string out;
  std::string id_property = "id";
  double beta = 2.0;
  double iou_threshold = 0.25;
  double min_area = 4.0;
  double udm_fraction = 0.5;
};

int run_score(const ScoreArgs& args) {
  auto pairs = scot::load_dataset(args.ground_truth, args.proposals,
                                  args.id_property, &std::cerr);

  scot::FilterPolicy policy;
  policy.min_area = args.min_area;
  policy.udm_overlap_fraction = args.udm_fraction;

  std::vector<std::pair<scot::TimeSeries, scot::TimeSeries>> filtered;
  filtered.reserve(pairs.size());
  for (const auto& [gt, props] : pairs) {
    scot::TimeSeries gt_f = scot::apply_filters(gt, policy);
    // proposals are filtered against the ground-truth frames' masked regions
    scot::TimeSeries props_f = scot::apply_filters(props, policy, gt);
    filtered.emplace_back(std::move(gt_f), std::move(props_f));
  }

  scot::ScotConfig cfg;
  cfg.beta = args.beta;
  cfg.iou_threshold = args.iou_threshold;
  cfg.min_area = args.min_area;
  scot::ScoreReport report = scot::score_dataset(filtered, cfg);
  scot::write_report(report, args.out);

  for (const scot::AoiScores& s : report.per_aoi) {
    std::cout << s.aoi_id << ": f_scot=" << s.f_scot << " f_track=" << s.f_track
              << " f_change=" << s.f_change << " f1=" << s.f1 << '\n';
  }
  std::cout << "dataset: f_scot=" << report.dataset.f_scot.mean << " +/- "
            << report.dataset.f_scot.stddev << " over " << report.per_aoi.size()
            << " AOI(s); report written to " << args.out << '\n';
  return 0;
}

struct TrackArgs {
  std::string masks;
  std::string footprints;
  std::string out;
  double iou_threshold = 0.25;
  double min_area = 4.0;
  int lookback = 1;
};

int run_track(const TrackArgs& args) {
  std::vector<std::string> labels;
  std::vector<std::vector<scot::ValidatedPolygon>> frames;

  if (!args.masks.empty()) {
    std::map<std::string, fs::path> files;
    if (!fs::is_directory(args.masks)) {
      throw scot::IoFailure("not a directory: " + args.masks);
    }
    for (const auto& entry : fs::directory_iterator(args.masks)) {
      if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
        files.emplace(entry.path().stem().string(), entry.path());
      }
    }
    if (files.empty()) {
      throw scot::EmptyDirectory("no .pgm masks in " + args.masks);
    }
    for (const auto& [label, path] : files) {
      labels.push_back(label);
      frames.push_back(
          scot::polygonize_mask(scot::read_pgm(path), args.min_area));
    }
  } else {
    auto [loaded_labels, loaded_frames] = scot::load_polygon_frames(args.footprints);
    labels = std::move(loaded_labels);
    for (auto& polys : loaded_frames) {
      std::vector<scot::ValidatedPolygon> kept;
      for (auto& poly : polys) {
        if (poly.area() >= args.min_area) kept.push_back(std::move(poly));
      }
      frames.push_back(std::move(kept));
    }
  }

  scot::TimeSeries series =
      scot::propagate_ids(frames, args.iou_threshold, args.lookback, labels);
  series.aoi_id = fs::path(args.out).filename().string();
  scot::write_series(series, args.out);

  std::size_t total = scot::total_footprints(series);
  std::cout << "tracked " << total << " footprints over " << frames.size()
            << " frame(s) into " << args.out << '\n';
  return 0;
}

struct SynthArgs {
  std::string spec;
  std::uint64_t seed = 0;
  std::string out;
};

int run_synth(const SynthArgs& args) {
  scot::SynthJob job = scot::read_synth_spec(args.spec);
  job.scenario.seed = args.seed;
  if (job.perturbation) {
    job.perturbation->seed = args.seed + 1;
  }

  scot::Scenario scenario = scot::gen_scenario(job.scenario);
  if (job.perturbation) {
    scot::Perturbed perturbed = scot::perturb(scenario.series, *job.perturbation);
    scot::write_synth_output(scenario, &perturbed, args.out);
    std::cout << "wrote scenario '" << scenario.series.aoi_id << "' with "
              << perturbed.id_swaps.size() << " id swap(s) to " << args.out
              << '\n';
  } else {
    scot::write_synth_output(scenario, nullptr, args.out);
    std::cout << "wrote scenario '" << scenario.series.aoi_id << "' to "
              << args.out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SCOT: change and object tracking scores for building-footprint time series"};
  app.require_subcommand(1);

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand(
      "score", "Score a proposal series against ground truth");
  score->add_option("--ground-truth", score_args.ground_truth,
                    "Ground-truth dataset directory")
      ->required();
  score->add_option("--proposals", score_args.proposals,
                    "Proposal dataset directory")
      ->required();
  score->add_option("--beta", score_args.beta,
                    "Change-term weight in the combined score")
      ->capture_default_str();
  score->add_option("--iou-threshold", score_args.iou_threshold,
                    "Minimum IOU for a match")
      ->capture_default_str();
  score->add_option("--min-area", score_args.min_area,
                    "Minimum footprint area in px^2")
      ->capture_default_str();
  score->add_option("--udm-fraction", score_args.udm_fraction,
                    "Masked-area fraction above which a footprint is excluded")
      ->capture_default_str();
  score->add_option("--id-property", score_args.id_property,
                    "Feature property carrying the footprint id")
      ->capture_default_str();
  score->add_option("--out", score_args.out, "Report file to write")->required();

  TrackArgs track_args;
  CLI::App* track = app.add_subcommand(
      "track", "Assign persistent ids to untracked footprints");
  CLI::Option* masks_opt =
      track->add_option("--masks", track_args.masks,
                        "Directory of per-frame binary masks (.pgm)");
  CLI::Option* footprints_opt =
      track->add_option("--footprints", track_args.footprints,
                        "Directory of per-frame footprint files");
  masks_opt->excludes(footprints_opt);
  track->add_option("--iou-threshold", track_args.iou_threshold,
                    "Minimum IOU to carry an id forward")
      ->capture_default_str();
  track->add_option("--min-area", track_args.min_area,
                    "Minimum footprint area in px^2")
      ->capture_default_str();
  track->add_option("--lookback", track_args.lookback,
                    "Frames an unmatched id stays eligible (1 = previous frame only)")
      ->capture_default_str();
  track->add_option("--out", track_args.out, "Output series directory")
      ->required();

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a synthetic scenario from a spec file");
  synth->add_option("--spec", synth_args.spec, "Scenario spec file")->required();
  synth->add_option("--seed", synth_args.seed,
                    "Seed override (proposals use seed + 1)")
      ->required();
  synth->add_option("--out", synth_args.out, "Output dataset directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (score->parsed()) return run_score(score_args);
    if (track->parsed()) {
      if (track_args.masks.empty() && track_args.footprints.empty()) {
        std::cerr << "error: track needs --masks or --footprints\n";
        return 2;
      }
      return run_track(track_args);
    }
    if (synth->parsed()) return run_synth(synth_args);
  } catch (const scot::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
