#include "obres/conflicts.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace obres {

void validate_claim(const Claim& claim) {
  if (claim.source_id.empty()) throw std::invalid_argument("claim with empty source_id");
  if (claim.subject.empty()) throw std::invalid_argument("claim with empty subject");
  if (claim.predicate.empty()) throw std::invalid_argument("claim with empty predicate");
}

std::vector<Claim> dedup_claims(std::span<const Claim> claims) {
  std::vector<Claim> out;
  std::set<std::string> seen;
  out.reserve(claims.size());
  for (const Claim& c : claims) {
    std::string key = c.source_id + '\x1f' + c.subject + '\x1f' + c.predicate + '\x1f' +
                      c.object.canonical_key();
    if (seen.insert(std::move(key)).second) out.push_back(c);
  }
  return out;
}

namespace {

struct DistinctObject {
  ObjectValue value;                      // representative: smallest raw among duplicates
  std::set<std::string> providers;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

GroupingResult group_conflicts(std::span<const Claim> claims, double threshold,
                               const SimilarityPolicy& policy) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("conflict threshold must lie in [0,1]");
  }

  // (subject, predicate) -> canonical key -> distinct object
  std::map<std::pair<std::string, std::string>, std::map<std::string, DistinctObject>> groups;
  for (const Claim& c : claims) {
    validate_claim(c);
    auto& group = groups[{c.subject, c.predicate}];
    auto [it, inserted] = group.try_emplace(c.object.canonical_key(), DistinctObject{c.object, {}});
    if (!inserted && c.object.raw() < it->second.value.raw()) it->second.value = c.object;
    it->second.providers.insert(c.source_id);
  }

  GroupingResult result;
  for (auto& [key, group] : groups) {
    std::vector<DistinctObject> distinct;
    distinct.reserve(group.size());
    for (auto& [ck, obj] : group) distinct.push_back(std::move(obj));
    std::sort(distinct.begin(), distinct.end(),
              [](const DistinctObject& a, const DistinctObject& b) {
                return a.value.raw() < b.value.raw();
              });

    // Single-link closure: near-identical objects collapse into one node.
    std::vector<std::size_t> parent(distinct.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      for (std::size_t j = i + 1; j < distinct.size(); ++j) {
        if (similarity(distinct[i].value, distinct[j].value, policy) >= threshold) {
          parent[find_root(parent, j)] = find_root(parent, i);
        }
      }
    }

    std::map<std::size_t, std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < distinct.size(); ++i) clusters[find_root(parent, i)].push_back(i);

    ConflictSet set;
    set.subject = key.first;
    set.predicate = key.second;
    for (auto& [root, members] : clusters) {
      std::size_t rep = *std::min_element(members.begin(), members.end(),
                                          [&](std::size_t a, std::size_t b) {
                                            return distinct[a].value.raw() < distinct[b].value.raw();
                                          });
      std::set<std::string> merged_providers;
      for (std::size_t m : members) {
        merged_providers.insert(distinct[m].providers.begin(), distinct[m].providers.end());
      }
      set.objects.push_back(distinct[rep].value);
      set.providers.emplace_back(merged_providers.begin(), merged_providers.end());
    }

    // Keep objects ordered by raw form after merging.
    std::vector<std::size_t> order(set.objects.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return set.objects[a].raw() < set.objects[b].raw();
    });
    ConflictSet sorted;
    sorted.subject = set.subject;
    sorted.predicate = set.predicate;
    for (std::size_t idx : order) {
      sorted.objects.push_back(std::move(set.objects[idx]));
      sorted.providers.push_back(std::move(set.providers[idx]));
    }

    if (sorted.objects.size() >= 2) {
      result.conflicts.push_back(std::move(sorted));
    } else {
      result.singletons.push_back(std::move(sorted));
    }
  }
  return result;
}

TruthSelection select_truth(std::span<const double> trust, std::span<const std::string> raws) {
  if (trust.empty()) throw std::invalid_argument("empty conflict set");
  if (trust.size() != raws.size()) throw std::invalid_argument("trust/raw size mismatch");

  double best = trust[0];
  for (double t : trust) best = std::max(best, t);

  TruthSelection sel;
  std::size_t n_best = 0;
  for (std::size_t i = 0; i < trust.size(); ++i) {
    if (trust[i] == best) {
      if (n_best == 0 || raws[i] < raws[sel.index]) sel.index = i;
      ++n_best;
    }
  }
  sel.tie = n_best > 1;
  return sel;
}

TruthSelection select_truth(const ConflictSet& set, std::span<const double> trust) {
  if (set.objects.empty()) throw std::invalid_argument("empty conflict set");
  if (trust.size() != set.objects.size()) {
    throw std::invalid_argument("trust not defined for every object in the set");
  }
  std::vector<std::string> raws;
  raws.reserve(set.objects.size());
  for (const ObjectValue& o : set.objects) raws.push_back(o.raw());
  return select_truth(trust, raws);
}

std::map<std::string, double> aggregate_source_trust(
    const std::map<ObjectRef, double>& object_trust,
    const std::map<std::string, std::vector<ObjectRef>>& provided_objects) {
  std::map<std::string, double> out;
  for (const auto& [source, objects] : provided_objects) {
    if (objects.empty()) continue;
    double sum = 0.0;
    for (const ObjectRef& ref : objects) {
      auto it = object_trust.find(ref);
      if (it == object_trust.end()) throw std::invalid_argument("missing belief for provided object");
      sum += it->second;
    }
    out[source] = sum / static_cast<double>(objects.size());
  }
  return out;
}

std::map<ObjectRef, double> aggregate_object_trust(
    const std::map<std::string, double>& source_trust,
    const std::map<ObjectRef, std::vector<std::string>>& providers_of) {
  std::map<ObjectRef, double> out;
  for (const auto& [ref, sources] : providers_of) {
    if (sources.empty()) continue;
    double sum = 0.0;
    for (const std::string& s : sources) {
      auto it = source_trust.find(s);
      if (it == source_trust.end()) throw std::invalid_argument("missing trust for provider source");
      sum += it->second;
    }
    out[ref] = sum / static_cast<double>(sources.size());
  }
  return out;
}

}  // namespace obres
