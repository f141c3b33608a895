#include "obres/eval.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace obres {

double accuracy(const ResolveOutcome& outcome, const GroundTruth& truth) {
  if (truth.truths.empty()) throw std::invalid_argument("no ground truth");

  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (std::size_t s = 0; s < outcome.sets.size(); ++s) {
    index[{outcome.sets[s].subject, outcome.sets[s].predicate}] = s;
  }

  std::size_t matched = 0;
  for (const auto& [key, true_value] : truth.truths) {
    auto it = index.find(key);
    if (it == index.end()) continue;  // unresolved key counts as a mismatch
    const ConflictSet& set = outcome.sets[it->second];
    const ObjectValue& selected = set.objects[outcome.report.truths[it->second].index];
    if (canonical_match(selected, true_value)) ++matched;
  }
  return static_cast<double>(matched) / static_cast<double>(truth.truths.size());
}

namespace {

std::string random_token(std::mt19937_64& rng, std::size_t length) {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz";
  std::uniform_int_distribution<std::size_t> pick(0, sizeof(kAlphabet) - 2);
  std::string out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(kAlphabet[pick(rng)]);
  return out;
}

std::string padded_index(std::size_t value) {
  std::string digits = std::to_string(value);
  return std::string(digits.size() < 6 ? 6 - digits.size() : 0, '0') + digits;
}

}  // namespace

SyntheticCorpus generate_synthetic(const SynthSpec& spec) {
  if (spec.n_sources == 0) throw std::invalid_argument("degenerate spec: 0 sources");
  if (spec.n_conflict_sets == 0) throw std::invalid_argument("degenerate spec: 0 conflict sets");
  if (spec.wrong_value_pool == 0) throw std::invalid_argument("degenerate spec: empty decoy pool");
  if (!(spec.coverage_prob > 0.0 && spec.coverage_prob <= 1.0)) {
    throw std::invalid_argument("coverage probability must lie in (0,1]");
  }
  if (!(spec.reliability_alpha > 0.0 && spec.reliability_beta > 0.0)) {
    throw std::invalid_argument("reliability Beta parameters must be positive");
  }
  if (spec.fixed_reliability && !(*spec.fixed_reliability >= 0.0 && *spec.fixed_reliability <= 1.0)) {
    throw std::invalid_argument("fixed reliability must lie in [0,1]");
  }

  std::mt19937_64 rng(spec.rng_seed);
  SyntheticCorpus corpus;

  corpus.reliabilities.resize(spec.n_sources);
  if (spec.fixed_reliability) {
    std::fill(corpus.reliabilities.begin(), corpus.reliabilities.end(), *spec.fixed_reliability);
  } else {
    std::gamma_distribution<double> ga(spec.reliability_alpha, 1.0);
    std::gamma_distribution<double> gb(spec.reliability_beta, 1.0);
    for (double& r : corpus.reliabilities) {
      const double x = ga(rng);
      const double y = gb(rng);
      r = x + y > 0.0 ? x / (x + y) : 0.5;
    }
  }

  std::vector<std::string> source_ids(spec.n_sources);
  for (std::size_t j = 0; j < spec.n_sources; ++j) source_ids[j] = "src" + padded_index(j);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < spec.n_conflict_sets; ++k) {
    const std::string subject = "synth:e" + padded_index(k);
    const std::string predicate = "synth:v";

    std::set<std::string> distinct;
    std::vector<std::string> values;  // values[0] is the planted truth
    while (values.size() < spec.wrong_value_pool + 1) {
      std::string token = random_token(rng, 8);
      if (distinct.insert(token).second) values.push_back(std::move(token));
    }
    corpus.truth.truths[{subject, predicate}] = values[0];

    for (std::size_t j = 0; j < spec.n_sources; ++j) {
      if (unit(rng) >= spec.coverage_prob) continue;
      std::size_t choice = 0;
      if (unit(rng) >= corpus.reliabilities[j]) {
        std::uniform_int_distribution<std::size_t> decoy(1, spec.wrong_value_pool);
        choice = decoy(rng);
      }
      corpus.claims.push_back(Claim{source_ids[j], subject, predicate,
                                    ObjectValue::text(values[choice])});
    }
  }
  return corpus;
}

SweepResult sweep(std::span<const Claim> claims, const GroundTruth& truth, const SweepSpec& spec,
                  const PipelineOptions& base_options) {
  if (spec.beta_grid.empty() || spec.delta_grid.empty()) {
    throw std::invalid_argument("sweep grids must be non-empty");
  }
  auto prepare = [](std::vector<double> grid) {
    for (double v : grid) {
      if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("grid values must lie in (0,1)");
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
  };
  const std::vector<double> betas = prepare(spec.beta_grid);
  const std::vector<double> deltas = prepare(spec.delta_grid);

  SweepResult result;
  result.cells.reserve(betas.size() * deltas.size());
  for (double beta : betas) {
    for (double delta : deltas) {
      PipelineOptions options = base_options;
      options.energy.beta = beta;
      options.energy.delta = delta;
      const ResolveOutcome outcome = resolve_claims(claims, Method::ObResolution, options);
      result.cells.push_back({beta, delta, accuracy(outcome, truth)});
    }
  }

  double best = 0.0;
  for (const SweepCell& cell : result.cells) best = std::max(best, cell.accuracy);
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    if (result.cells[i].accuracy == best) result.best.push_back(i);
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "beta,delta,accuracy\n";
  for (const SweepCell& cell : result.cells) {
    out += numeric_repr(cell.beta);
    out += ',';
    out += numeric_repr(cell.delta);
    out += ',';
    out += numeric_repr(cell.accuracy);
    out += '\n';
  }
  return out;
}

}  // namespace obres
