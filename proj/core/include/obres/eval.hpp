#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obres/pipeline.hpp"

namespace obres {

/// (subject, predicate) -> true value lexical form.
struct GroundTruth {
  std::map<std::pair<std::string, std::string>, std::string> truths;
};

/// Fraction of ground-truth keys whose selected object matches the true
/// value under canonical equality. Keys with no resolved set count as
/// mismatches. Throws on empty ground truth.
double accuracy(const ResolveOutcome& outcome, const GroundTruth& truth);

/// Planted-truth corpus generator: per-source reliabilities are drawn from
/// Beta(reliability_alpha, reliability_beta) unless fixed_reliability is set;
/// each source covers a set with coverage_prob and then asserts the true
/// value with its reliability, otherwise a uniformly chosen decoy.
struct SynthSpec {
  std::size_t n_conflict_sets = 100;
  std::size_t n_sources = 10;
  double reliability_alpha = 2.0;
  double reliability_beta = 2.0;
  std::optional<double> fixed_reliability;  // overrides the Beta draw when set
  std::size_t wrong_value_pool = 4;         // decoy values per set
  double coverage_prob = 0.5;
  std::uint64_t rng_seed = 0;
};

struct SyntheticCorpus {
  std::vector<Claim> claims;
  GroundTruth truth;
  std::vector<double> reliabilities;  // per source, for inspection
};

SyntheticCorpus generate_synthetic(const SynthSpec& spec);

struct SweepSpec {
  std::vector<double> beta_grid;
  std::vector<double> delta_grid;
};

struct SweepCell {
  double beta = 0.0;
  double delta = 0.0;
  double accuracy = 0.0;
};

struct SweepResult {
  std::vector<SweepCell> cells;    // ascending (beta, delta)
  std::vector<std::size_t> best;   // indices of the maximal-accuracy cell(s)
};

/// Runs the full ObResolution pipeline once per (beta, delta) grid cell and
/// scores each run against the ground truth.
SweepResult sweep(std::span<const Claim> claims, const GroundTruth& truth, const SweepSpec& spec,
                  const PipelineOptions& base_options);

/// CSV with header "beta,delta,accuracy", one data row per cell.
std::string sweep_csv(const SweepResult& result);

}  // namespace obres
