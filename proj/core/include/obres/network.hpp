#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "obres/conflicts.hpp"

namespace obres {

/// One object node: the object at `object` inside conflict set `set`.
struct ObjectNode {
  std::size_t set = 0;
  std::size_t object = 0;
  std::string raw;  // lexical form, kept for dumps and tie-breaking
};

struct ProviderEdge {
  std::uint32_t source = 0;  // index into source_ids
  std::uint32_t object = 0;  // index into object_nodes
};

struct WeightedEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  double weight = 0.0;  // S for object-object edges, epsilon for source-source
};

/// Heterogeneous graph of source nodes and object nodes with three edge
/// kinds: provider links, similarity-weighted object pairs within a conflict
/// set, and overlap-weighted source pairs.
///
/// Global node indexing: sources occupy [0, source_ids.size()), object nodes
/// follow in order.
struct SourceObjectNetwork {
  std::vector<std::string> source_ids;  // sorted unique
  std::vector<ObjectNode> object_nodes;
  std::vector<std::pair<std::string, std::string>> set_keys;  // (subject, predicate) per set
  std::vector<ProviderEdge> provider_edges;
  std::vector<WeightedEdge> object_edges;  // endpoints are object_nodes indices
  std::vector<WeightedEdge> source_edges;  // endpoints are source_ids indices

  std::size_t node_count() const { return source_ids.size() + object_nodes.size(); }
  std::size_t edge_count() const {
    return provider_edges.size() + object_edges.size() + source_edges.size();
  }
  std::size_t object_global(std::size_t object_node) const {
    return source_ids.size() + object_node;
  }

  /// Stable textual id: "src:<source_id>" for sources,
  /// "obj:<subject> <predicate> <index>" for object nodes (IRIs cannot
  /// contain literal spaces, so space-joining is unambiguous). Networks
  /// built without set keys fall back to "obj:<set> <index>".
  std::string node_id(std::size_t global_index) const;
  std::optional<std::size_t> find_node(std::string_view node_id) const;
};

/// Builds one global network over all conflict sets: provider edges mirror
/// the sets' providers, every object pair inside a set gets a similarity
/// edge, and two sources are linked iff they share at least one object node.
SourceObjectNetwork build_network(std::span<const ConflictSet> conflict_sets,
                                  const SimilarityPolicy& policy);

/// Overlap coefficient |f_i ∩ f_j| / max(|f_i|, |f_j|); 0 when either set is
/// empty. Inputs are sets of object-node ids in any order.
double epsilon(std::vector<std::uint32_t> f_i, std::vector<std::uint32_t> f_j);

/// Edge-list text dump, one line per edge: kind, endpoint ids, weight
/// (provider edges carry weight 1), tab-separated.
void dump_network(const SourceObjectNetwork& net, std::ostream& out);

}  // namespace obres
