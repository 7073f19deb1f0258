#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thick/embedder.hpp"
#include "thick/families.hpp"
#include "thick/report.hpp"

namespace thick {

struct TrialRecord {
  std::string complex_id;
  std::size_t vertex_count = 0;
  int k = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // ok | saturation | error
  std::string error;          // error kind and message when status != ok
  std::vector<double> alpha_ladder;
  std::optional<double> alpha0_final;
  std::optional<double> r_pre;
  std::optional<double> r_final;
  std::optional<double> gg_pre;   // subdivided placement, before perturbation
  std::optional<double> gg_post;  // after perturbation, before rescaling
  std::optional<double> min_link_thickness;
  std::optional<std::size_t> max_crossing;
  std::vector<std::size_t> per_color_max;
  double wall_time = 0.0;  // seconds; kept out of the CSV

  bool ok() const { return status == "ok"; }
};

/// Generates the family member for `seed` and runs the pipeline with the
/// same seed. Saturation and other library errors become records, not
/// exceptions.
TrialRecord run_trial(const FamilySpec& family, std::size_t vertex_count, std::uint64_t seed,
                      const PipelineParams& base);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
  std::vector<double> residuals;
};

/// Least squares y = intercept + slope * x. Nullopt when fewer than two
/// distinct x values.
std::optional<LinearFit> fit_line(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> values);

struct VSummary {
  std::size_t vertex_count = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<double> median_r_final;
  std::optional<double> median_max_crossing;
};

struct ScalingStudy {
  FamilySpec family;
  int n = 3;
  std::vector<std::size_t> v_grid;
  std::vector<std::uint64_t> seeds;
  std::vector<TrialRecord> records;  // grid order, then seed order
  std::vector<VSummary> summary;
  std::string fit_status = "ok";  // or "insufficient grid"
  std::optional<LinearFit> radius_fit;          // log R_final on log V, all ok trials
  std::optional<LinearFit> crossing_fit;        // max_crossing on log V, all ok trials
  std::optional<LinearFit> crossing_median_fit;  // per-V medians on log V
  bool medians_monotone = false;                 // median R_final nondecreasing in V
};

using TrialCallback = std::function<void(const TrialRecord&)>;

/// Runs every (V, seed) trial. Throws StudyAborted, with the failure causes,
/// as soon as more than half the trials at some V fail.
ScalingStudy run_scaling_study(const FamilySpec& family, const std::vector<std::size_t>& v_grid,
                               const std::vector<std::uint64_t>& seeds, const PipelineParams& base,
                               const TrialCallback& on_trial = {});

/// One header line plus one row per record; deterministic for fixed input.
std::string trials_csv(const std::vector<TrialRecord>& records);
/// One JSON object per line, including wall time.
std::string trials_jsonl(const std::vector<TrialRecord>& records);

Json to_json(const TrialRecord& record);
TrialRecord trial_record_from_json(const Json& j);
Json to_json(const ScalingStudy& study);

}  // namespace thick
