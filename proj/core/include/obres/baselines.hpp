#pragma once

#include <cstdint>
#include <span>

#include "obres/conflicts.hpp"

namespace obres {

struct VotingConfig {
  std::uint64_t rng_seed = 0;  // tie-breaking only; fixed seed => reproducible ties
};

struct SumsConfig {
  std::size_t iterations = 20;
  double reliable_threshold = 0.5;  // in (0,1)
};

/// Picks the object with the most providers in each set; tau is the provider
/// share. Ties are broken by a seeded uniform draw. No source model.
ResolutionReport majority_vote(std::span<const ConflictSet> conflict_sets,
                               const VotingConfig& config);

/// Hubs-and-authorities scoring on the global bipartite provider graph:
/// source scores sum their objects' scores and vice versa, each vector
/// rescaled by its maximum after every half-step. A source is reliable when
/// its final score exceeds the threshold; each set's truth is the object with
/// the most reliable providers.
ResolutionReport sums(std::span<const ConflictSet> conflict_sets, const SumsConfig& config);

}  // namespace obres
