#include "obres/baselines.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace obres {

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Per-set tie-break generator: stable under reordering of the input sets.
std::mt19937_64 tie_rng(std::uint64_t seed, const ConflictSet& set) {
  std::uint64_t h = fnv1a(set.subject);
  h = fnv1a(set.predicate, h ^ 0x9e3779b97f4a7c15ull);
  return std::mt19937_64(seed ^ h);
}

}  // namespace

ResolutionReport majority_vote(std::span<const ConflictSet> conflict_sets,
                               const VotingConfig& config) {
  ResolutionReport report;
  report.object_trust.reserve(conflict_sets.size());
  report.truths.reserve(conflict_sets.size());

  for (const ConflictSet& set : conflict_sets) {
    if (set.objects.empty()) throw std::invalid_argument("empty conflict set");
    std::size_t total = 0;
    std::size_t best = 0;
    for (const auto& providers : set.providers) {
      total += providers.size();
      best = std::max(best, providers.size());
    }
    std::vector<double> taus(set.objects.size());
    std::vector<std::size_t> leaders;
    for (std::size_t i = 0; i < set.objects.size(); ++i) {
      taus[i] = static_cast<double>(set.providers[i].size()) / static_cast<double>(total);
      if (set.providers[i].size() == best) leaders.push_back(i);
    }

    TruthSelection sel;
    if (leaders.size() == 1) {
      sel.index = leaders.front();
      sel.tie = false;
    } else {
      auto rng = tie_rng(config.rng_seed, set);
      std::uniform_int_distribution<std::size_t> pick(0, leaders.size() - 1);
      sel.index = leaders[pick(rng)];
      sel.tie = true;
    }
    report.object_trust.push_back(std::move(taus));
    report.truths.push_back(sel);
  }
  return report;
}

ResolutionReport sums(std::span<const ConflictSet> conflict_sets, const SumsConfig& config) {
  if (!(config.reliable_threshold > 0.0 && config.reliable_threshold < 1.0)) {
    throw std::invalid_argument("reliable threshold must lie in (0,1)");
  }

  // Global bipartite provider graph; object nodes are (set, object) pairs.
  std::map<std::string, std::size_t> source_index;
  for (const ConflictSet& set : conflict_sets) {
    if (set.objects.empty()) throw std::invalid_argument("empty conflict set");
    for (const auto& providers : set.providers) {
      for (const std::string& s : providers) source_index.emplace(s, 0);
    }
  }
  std::size_t si = 0;
  for (auto& [name, idx] : source_index) idx = si++;

  std::vector<std::vector<std::size_t>> objects_of(source_index.size());
  std::vector<std::vector<std::size_t>> sources_of;
  std::vector<std::pair<std::size_t, std::size_t>> object_ref;  // (set, object)
  for (std::size_t s = 0; s < conflict_sets.size(); ++s) {
    const ConflictSet& set = conflict_sets[s];
    for (std::size_t k = 0; k < set.objects.size(); ++k) {
      const std::size_t node = sources_of.size();
      sources_of.emplace_back();
      object_ref.emplace_back(s, k);
      for (const std::string& src : set.providers[k]) {
        const std::size_t idx = source_index.at(src);
        sources_of[node].push_back(idx);
        objects_of[idx].push_back(node);
      }
    }
  }

  std::vector<double> source_score(source_index.size(), 1.0);
  std::vector<double> object_score(sources_of.size(), 1.0);
  for (std::size_t round = 0; round < config.iterations; ++round) {
    for (std::size_t s = 0; s < source_score.size(); ++s) {
      double sum = 0.0;
      for (std::size_t o : objects_of[s]) sum += object_score[o];
      source_score[s] = sum;
    }
    if (double m = *std::max_element(source_score.begin(), source_score.end()); m > 0.0) {
      for (double& v : source_score) v /= m;
    }
    for (std::size_t o = 0; o < object_score.size(); ++o) {
      double sum = 0.0;
      for (std::size_t s : sources_of[o]) sum += source_score[s];
      object_score[o] = sum;
    }
    if (double m = *std::max_element(object_score.begin(), object_score.end()); m > 0.0) {
      for (double& v : object_score) v /= m;
    }
  }

  std::vector<bool> reliable(source_score.size());
  for (std::size_t s = 0; s < source_score.size(); ++s) {
    reliable[s] = source_score[s] > config.reliable_threshold;
  }

  ResolutionReport report;
  report.iterations = config.iterations;
  for (const auto& [name, idx] : source_index) report.source_trust[name] = source_score[idx];

  report.object_trust.assign(conflict_sets.size(), {});
  std::vector<std::vector<std::size_t>> reliable_counts(conflict_sets.size());
  for (std::size_t node = 0; node < object_ref.size(); ++node) {
    const auto [s, k] = object_ref[node];
    auto& taus = report.object_trust[s];
    auto& counts = reliable_counts[s];
    if (taus.size() <= k) {
      taus.resize(k + 1, 0.0);
      counts.resize(k + 1, 0);
    }
    taus[k] = object_score[node];
    for (std::size_t src : sources_of[node]) counts[k] += reliable[src] ? 1 : 0;
  }

  report.truths.reserve(conflict_sets.size());
  for (std::size_t s = 0; s < conflict_sets.size(); ++s) {
    const ConflictSet& set = conflict_sets[s];
    // Truth: most reliable providers; tau: within-set normalized scores.
    std::vector<double> counts(set.objects.size());
    for (std::size_t k = 0; k < set.objects.size(); ++k) {
      counts[k] = static_cast<double>(reliable_counts[s][k]);
    }
    report.truths.push_back(select_truth(set, counts));

    double sum = 0.0;
    for (double v : report.object_trust[s]) sum += v;
    if (sum > 0.0) {
      for (double& v : report.object_trust[s]) v /= sum;
    }
  }
  return report;
}

}  // namespace obres
