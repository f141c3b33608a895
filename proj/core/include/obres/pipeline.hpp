#pragma once

#include <map>
#include <span>
#include <string>

#include "obres/baselines.hpp"
#include "obres/inference.hpp"

namespace obres {

enum class Method { ObResolution, Vote, Sums };

struct PipelineOptions {
  double conflict_threshold = 0.99;
  SimilarityPolicy policy;
  EnergyParams energy;
  LbpConfig lbp;
  VotingConfig voting;
  SumsConfig sums;
};

/// Result of resolving one claim corpus. `sets` lists the inferred conflict
/// sets first, then the non-conflicting singleton groups; the report covers
/// all of them (singletons resolve trivially with tau = 1).
struct ResolveOutcome {
  std::vector<ConflictSet> sets;
  std::size_t conflict_count = 0;
  ResolutionReport report;
};

/// Full run: dedup claims, group conflicts, resolve with the chosen method.
/// Priors (ObResolution only) are keyed by network node id.
ResolveOutcome resolve_claims(std::span<const Claim> claims, Method method,
                              const PipelineOptions& options,
                              const std::map<std::string, double>& priors_by_id = {});

}  // namespace obres
