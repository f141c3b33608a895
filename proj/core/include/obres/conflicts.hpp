#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "obres/claim.hpp"
#include "obres/similarity.hpp"

namespace obres {

/// All distinct objects asserted for one (subject, predicate) pair, with the
/// sources backing each of them. Objects are deduplicated by canonical form
/// and near-duplicates are merged; the list is sorted by raw form.
struct ConflictSet {
  std::string subject;
  std::string predicate;
  std::vector<ObjectValue> objects;
  std::vector<std::vector<std::string>> providers;  // per object, sorted unique source ids
};

struct GroupingResult {
  std::vector<ConflictSet> conflicts;   // >= 2 distinct objects each
  std::vector<ConflictSet> singletons;  // exactly one object: non-conflicting
};

/// Partitions claims by (subject, predicate) and merges objects whose pairwise
/// similarity reaches the threshold (single-link closure). Groups that keep
/// two or more distinct objects are conflicts; the rest are singletons.
GroupingResult group_conflicts(std::span<const Claim> claims, double threshold,
                               const SimilarityPolicy& policy);

struct TruthSelection {
  std::size_t index = 0;
  bool tie = false;
};

/// Argmax of trust; exact ties resolve to the lexicographically smallest raw
/// form and set the tie flag. Throws on an empty set.
TruthSelection select_truth(const ConflictSet& set, std::span<const double> trust);
TruthSelection select_truth(std::span<const double> trust, std::span<const std::string> raws);

/// (conflict set index, object index) — identifies one object node.
using ObjectRef = std::pair<std::size_t, std::size_t>;

/// t(source) = mean trust of the objects it provides. Sources with an empty
/// object set are left out of the result.
std::map<std::string, double> aggregate_source_trust(
    const std::map<ObjectRef, double>& object_trust,
    const std::map<std::string, std::vector<ObjectRef>>& provided_objects);

/// tau(object) = mean trustworthiness of the sources providing it. Objects
/// with no providers are left out of the result.
std::map<ObjectRef, double> aggregate_object_trust(
    const std::map<std::string, double>& source_trust,
    const std::map<ObjectRef, std::vector<std::string>>& providers_of);

/// Outcome of one resolution run over a list of conflict sets (indices refer
/// to that list).
struct ResolutionReport {
  std::vector<std::vector<double>> object_trust;  // [set][object] in [0,1]
  std::map<std::string, double> source_trust;     // empty for methods without a source model
  std::vector<TruthSelection> truths;             // per set
  std::size_t iterations = 0;
  bool converged = true;
  double max_residual = 0.0;
};

}  // namespace obres
