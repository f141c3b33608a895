#include "obres/pipeline.hpp"

#include <stdexcept>

namespace obres {

ResolveOutcome resolve_claims(std::span<const Claim> claims, Method method,
                              const PipelineOptions& options,
                              const std::map<std::string, double>& priors_by_id) {
  const std::vector<Claim> deduped = dedup_claims(claims);
  GroupingResult grouped = group_conflicts(deduped, options.conflict_threshold, options.policy);

  ResolveOutcome outcome;
  outcome.conflict_count = grouped.conflicts.size();

  if (!grouped.conflicts.empty()) {
    switch (method) {
      case Method::ObResolution: {
        SourceObjectNetwork net = build_network(grouped.conflicts, options.policy);
        std::map<std::size_t, double> priors;
        for (const auto& [id, psi1] : priors_by_id) {
          auto node = net.find_node(id);
          if (!node) throw std::invalid_argument("prior for unknown node id: " + id);
          priors[*node] = psi1;
        }
        outcome.report = run_lbp(net, options.energy, options.lbp, priors);
        break;
      }
      case Method::Vote:
        outcome.report = majority_vote(grouped.conflicts, options.voting);
        break;
      case Method::Sums:
        outcome.report = sums(grouped.conflicts, options.sums);
        break;
    }
  }

  outcome.sets = std::move(grouped.conflicts);
  for (ConflictSet& single : grouped.singletons) {
    outcome.sets.push_back(std::move(single));
    outcome.report.object_trust.push_back({1.0});
    outcome.report.truths.push_back(TruthSelection{0, false});
  }
  return outcome;
}

}  // namespace obres
