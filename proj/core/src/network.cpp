#include "obres/network.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace obres {

namespace {

std::optional<std::size_t> parse_index(std::string_view token) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

std::string SourceObjectNetwork::node_id(std::size_t global_index) const {
  if (global_index < source_ids.size()) return "src:" + source_ids[global_index];
  const ObjectNode& node = object_nodes.at(global_index - source_ids.size());
  if (node.set < set_keys.size()) {
    return "obj:" + set_keys[node.set].first + ' ' + set_keys[node.set].second + ' ' +
           std::to_string(node.object);
  }
  return "obj:" + std::to_string(node.set) + ' ' + std::to_string(node.object);
}

std::optional<std::size_t> SourceObjectNetwork::find_node(std::string_view node_id) const {
  if (node_id.starts_with("src:")) {
    std::string_view name = node_id.substr(4);
    auto it = std::lower_bound(source_ids.begin(), source_ids.end(), name);
    if (it != source_ids.end() && *it == name) {
      return static_cast<std::size_t>(it - source_ids.begin());
    }
    return std::nullopt;
  }
  if (!node_id.starts_with("obj:")) return std::nullopt;

  std::string_view rest = node_id.substr(4);
  const std::size_t last_space = rest.rfind(' ');
  if (last_space == std::string_view::npos) return std::nullopt;
  auto object = parse_index(rest.substr(last_space + 1));
  if (!object) return std::nullopt;

  std::string_view head = rest.substr(0, last_space);
  std::optional<std::size_t> set;
  const std::size_t mid_space = head.find(' ');
  if (mid_space == std::string_view::npos) {
    set = parse_index(head);
  } else {
    std::string_view subject = head.substr(0, mid_space);
    std::string_view predicate = head.substr(mid_space + 1);
    for (std::size_t s = 0; s < set_keys.size(); ++s) {
      if (set_keys[s].first == subject && set_keys[s].second == predicate) {
        set = s;
        break;
      }
    }
  }
  if (!set) return std::nullopt;

  for (std::size_t i = 0; i < object_nodes.size(); ++i) {
    if (object_nodes[i].set == *set && object_nodes[i].object == *object) {
      return object_global(i);
    }
  }
  return std::nullopt;
}

double epsilon(std::vector<std::uint32_t> f_i, std::vector<std::uint32_t> f_j) {
  if (f_i.empty() || f_j.empty()) return 0.0;
  std::sort(f_i.begin(), f_i.end());
  f_i.erase(std::unique(f_i.begin(), f_i.end()), f_i.end());
  std::sort(f_j.begin(), f_j.end());
  f_j.erase(std::unique(f_j.begin(), f_j.end()), f_j.end());

  std::size_t common = 0;
  auto a = f_i.begin();
  auto b = f_j.begin();
  while (a != f_i.end() && b != f_j.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  return static_cast<double>(common) /
         static_cast<double>(std::max(f_i.size(), f_j.size()));
}

SourceObjectNetwork build_network(std::span<const ConflictSet> conflict_sets,
                                  const SimilarityPolicy& policy) {
  SourceObjectNetwork net;

  std::set<std::string> sources;
  for (const ConflictSet& set : conflict_sets) {
    for (const auto& providers : set.providers) sources.insert(providers.begin(), providers.end());
  }
  net.source_ids.assign(sources.begin(), sources.end());
  net.set_keys.reserve(conflict_sets.size());
  for (const ConflictSet& set : conflict_sets) net.set_keys.emplace_back(set.subject, set.predicate);

  std::map<std::string, std::uint32_t> source_index;
  for (std::uint32_t i = 0; i < net.source_ids.size(); ++i) source_index[net.source_ids[i]] = i;

  // F(source): object nodes provided, accumulated in ascending node order.
  std::vector<std::vector<std::uint32_t>> provided(net.source_ids.size());

  for (std::size_t s = 0; s < conflict_sets.size(); ++s) {
    const ConflictSet& set = conflict_sets[s];
    if (set.objects.size() != set.providers.size()) {
      throw std::invalid_argument("conflict set providers do not match objects");
    }
    const std::uint32_t base = static_cast<std::uint32_t>(net.object_nodes.size());
    for (std::size_t k = 0; k < set.objects.size(); ++k) {
      if (set.providers[k].empty()) throw std::invalid_argument("object without providers");
      net.object_nodes.push_back({s, k, set.objects[k].raw()});
      const std::uint32_t node = base + static_cast<std::uint32_t>(k);
      for (const std::string& src : set.providers[k]) {
        const std::uint32_t si = source_index.at(src);
        net.provider_edges.push_back({si, node});
        provided[si].push_back(node);
      }
    }
    for (std::size_t i = 0; i < set.objects.size(); ++i) {
      for (std::size_t j = i + 1; j < set.objects.size(); ++j) {
        net.object_edges.push_back({base + static_cast<std::uint32_t>(i),
                                    base + static_cast<std::uint32_t>(j),
                                    similarity(set.objects[i], set.objects[j], policy)});
      }
    }
  }

  // Source pairs sharing at least one object node.
  std::set<std::pair<std::uint32_t, std::uint32_t>> overlapping;
  {
    std::vector<std::vector<std::uint32_t>> providers_of(net.object_nodes.size());
    for (const ProviderEdge& e : net.provider_edges) providers_of[e.object].push_back(e.source);
    for (auto& ps : providers_of) {
      std::sort(ps.begin(), ps.end());
      for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) overlapping.insert({ps[i], ps[j]});
      }
    }
  }
  for (const auto& [i, j] : overlapping) {
    net.source_edges.push_back({i, j, epsilon(provided[i], provided[j])});
  }

  return net;
}

void dump_network(const SourceObjectNetwork& net, std::ostream& out) {
  char buf[64];
  auto fmt = [&buf](double w) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, ptr);
  };
  for (const ProviderEdge& e : net.provider_edges) {
    out << "provider\t" << net.node_id(e.source) << '\t' << net.node_id(net.object_global(e.object))
        << "\t1\n";
  }
  for (const WeightedEdge& e : net.object_edges) {
    out << "object\t" << net.node_id(net.object_global(e.a)) << '\t'
        << net.node_id(net.object_global(e.b)) << '\t' << fmt(e.weight) << '\n';
  }
  for (const WeightedEdge& e : net.source_edges) {
    out << "source\t" << net.node_id(e.a) << '\t' << net.node_id(e.b) << '\t' << fmt(e.weight)
        << '\n';
  }
}

}  // namespace obres
