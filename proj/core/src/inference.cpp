#include "obres/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace obres {

void validate(const EnergyParams& params) {
  if (!(params.beta > 0.0 && params.beta < 1.0 && params.delta > 0.0 && params.delta < 1.0)) {
    throw std::invalid_argument("energy parameters must lie strictly in (0,1)");
  }
}

void validate(const LbpConfig& config) {
  if (!(config.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(config.damping >= 0.0 && config.damping < 1.0)) {
    throw std::invalid_argument("damping must lie in [0,1)");
  }
  if (config.threads == 0) throw std::invalid_argument("thread count must be at least 1");
}

double energy(EdgeKind kind, double weight, const EnergyParams& params, int y_from, int y_to) {
  validate(params);
  if ((y_from != 0 && y_from != 1) || (y_to != 0 && y_to != 1)) {
    throw std::invalid_argument("labels must be 0 or 1");
  }
  if (kind == EdgeKind::Provider) {
    if (y_from == 1) return y_to == 1 ? params.beta : 1.0 - params.beta;
    return y_to == 1 ? 1.0 - params.delta : params.delta;
  }
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw std::invalid_argument("edge weight outside [0,1]");
  }
  return y_from == y_to ? weight : 1.0 - weight;
}

namespace detail {

struct CompiledGraph {
  std::size_t n_nodes = 0;
  std::vector<std::uint32_t> from, to;  // undirected endpoints, stored orientation
  std::vector<EdgeKind> kind;
  std::vector<double> weight;
  std::vector<std::uint32_t> in_offsets;  // per node, into `incoming`
  std::vector<std::uint32_t> incoming;    // directed edge ids targeting the node, ascending
};

CompiledGraph compile(const SourceObjectNetwork& net) {
  CompiledGraph g;
  g.n_nodes = net.node_count();
  const std::size_t n_edges = net.edge_count();
  g.from.reserve(n_edges);
  g.to.reserve(n_edges);
  g.kind.reserve(n_edges);
  g.weight.reserve(n_edges);

  auto add = [&](std::size_t u, std::size_t v, EdgeKind k, double w) {
    if (u >= g.n_nodes || v >= g.n_nodes) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop edge");
    g.from.push_back(static_cast<std::uint32_t>(u));
    g.to.push_back(static_cast<std::uint32_t>(v));
    g.kind.push_back(k);
    g.weight.push_back(w);
  };
  for (const ProviderEdge& e : net.provider_edges) {
    add(e.source, net.object_global(e.object), EdgeKind::Provider, 1.0);
  }
  for (const WeightedEdge& e : net.object_edges) {
    add(net.object_global(e.a), net.object_global(e.b), EdgeKind::ObjectObject, e.weight);
  }
  for (const WeightedEdge& e : net.source_edges) {
    add(e.a, e.b, EdgeKind::SourceSource, e.weight);
  }

  std::vector<std::uint32_t> degree(g.n_nodes, 0);
  for (std::size_t e = 0; e < g.from.size(); ++e) {
    ++degree[g.to[e]];
    ++degree[g.from[e]];
  }
  g.in_offsets.assign(g.n_nodes + 1, 0);
  for (std::size_t v = 0; v < g.n_nodes; ++v) g.in_offsets[v + 1] = g.in_offsets[v] + degree[v];
  g.incoming.resize(g.from.size() * 2);
  std::vector<std::uint32_t> cursor(g.in_offsets.begin(), g.in_offsets.end() - 1);
  for (std::size_t e = 0; e < g.from.size(); ++e) {
    // directed 2e: from -> to, targets `to`; directed 2e+1 targets `from`.
    g.incoming[cursor[g.to[e]]++] = static_cast<std::uint32_t>(2 * e);
    g.incoming[cursor[g.from[e]]++] = static_cast<std::uint32_t>(2 * e + 1);
  }
  return g;
}

// Potential tables in stored orientation, flattened as U[y_from*2 + y_to].
std::vector<std::array<double, 4>> materialize_potentials(const CompiledGraph& g,
                                                          const EnergyParams& params) {
  validate(params);
  std::vector<std::array<double, 4>> pots(g.from.size());
  for (std::size_t e = 0; e < g.from.size(); ++e) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        pots[e][static_cast<std::size_t>(a) * 2 + static_cast<std::size_t>(b)] =
            energy(g.kind[e], g.weight[e], params, a, b);
      }
    }
  }
  return pots;
}

// With priors open in (0,1) and no all-zero potential column, message pairs
// are strictly positive at every finite iteration; entries can still
// underflow to 0 through long chains of near-hard potentials. The floor
// keeps the mathematical invariant; a literal zero-mass pair is corruption
// and is reported.
inline constexpr double kMinMass = 1e-300;

inline BeliefPair normalized(double p0, double p1) {
  const double mass = p0 + p1;
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::runtime_error("degenerate potential");
  double r0 = p0 / mass;
  double r1 = p1 / mass;
  if (r0 < kMinMass) r0 = kMinMass;
  if (r1 < kMinMass) r1 = kMinMass;
  const double renorm = r0 + r1;
  return {r0 / renorm, r1 / renorm};
}

// Runs fn(begin, end) over node ranges, on `threads` workers. Every output
// slot is owned by exactly one node, so the split cannot race and results do
// not depend on the worker count.
void parallel_over_nodes(std::size_t n_nodes, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads <= 1 || n_nodes < 2) {
    fn(0, n_nodes);
    return;
  }
  const std::size_t chunk = (n_nodes + threads - 1) / threads;
  std::vector<std::thread> workers;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(n_nodes, static_cast<std::size_t>(t) * chunk);
    const std::size_t end = std::min(n_nodes, begin + chunk);
    if (begin == end) continue;
    workers.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

struct StepScratch {
  std::vector<BeliefPair> prefix, suffix;
};

// One Jacobi sweep over the nodes in [begin, end): writes the outgoing
// messages of each node from the previous messages, refreshes the node's
// belief from its new incoming messages once all writes are done (second
// phase), and returns the local residual max.
void update_messages(const CompiledGraph& g, const std::vector<std::array<double, 4>>& pots,
                     const std::vector<BeliefPair>& priors, const std::vector<BeliefPair>& old_msgs,
                     std::vector<BeliefPair>& new_msgs, double damping, std::size_t begin,
                     std::size_t end, StepScratch& scratch, double& local_residual) {
  double residual = 0.0;
  for (std::size_t u = begin; u < end; ++u) {
    const std::uint32_t lo = g.in_offsets[u];
    const std::uint32_t hi = g.in_offsets[u + 1];
    const std::size_t deg = hi - lo;
    if (deg == 0) continue;

    scratch.prefix.resize(deg + 1);
    scratch.suffix.resize(deg + 1);
    scratch.prefix[0] = {0.5, 0.5};
    for (std::size_t t = 0; t < deg; ++t) {
      const BeliefPair& m = old_msgs[g.incoming[lo + t]];
      scratch.prefix[t + 1] =
          normalized(scratch.prefix[t][0] * m[0], scratch.prefix[t][1] * m[1]);
    }
    scratch.suffix[deg] = {0.5, 0.5};
    for (std::size_t t = deg; t-- > 0;) {
      const BeliefPair& m = old_msgs[g.incoming[lo + t]];
      scratch.suffix[t] =
          normalized(m[0] * scratch.suffix[t + 1][0], m[1] * scratch.suffix[t + 1][1]);
    }

    for (std::size_t t = 0; t < deg; ++t) {
      const std::uint32_t incoming_id = g.incoming[lo + t];
      const std::uint32_t outgoing_id = incoming_id ^ 1u;  // u -> neighbor
      const std::size_t e = outgoing_id >> 1;
      const bool stored_orientation = (outgoing_id & 1u) == 0;

      const double except0 = scratch.prefix[t][0] * scratch.suffix[t + 1][0];
      const double except1 = scratch.prefix[t][1] * scratch.suffix[t + 1][1];
      const double g0 = priors[u][0] * except0;
      const double g1 = priors[u][1] * except1;

      // pot(y_u, y_v), transposed when u is the stored `to` endpoint.
      const auto& p = pots[e];
      double out0, out1;
      if (stored_orientation) {
        out0 = p[0] * g0 + p[2] * g1;  // y_v = 0
        out1 = p[1] * g0 + p[3] * g1;  // y_v = 1
      } else {
        out0 = p[0] * g0 + p[1] * g1;
        out1 = p[2] * g0 + p[3] * g1;
      }
      BeliefPair next = normalized(out0, out1);
      if (damping > 0.0) {
        const BeliefPair& prev = old_msgs[outgoing_id];
        next = {(1.0 - damping) * next[0] + damping * prev[0],
                (1.0 - damping) * next[1] + damping * prev[1]};
      }
      residual = std::max(residual, std::abs(next[0] - old_msgs[outgoing_id][0]));
      residual = std::max(residual, std::abs(next[1] - old_msgs[outgoing_id][1]));
      new_msgs[outgoing_id] = next;
    }
  }
  local_residual = residual;
}

void update_beliefs(const CompiledGraph& g, const std::vector<BeliefPair>& priors,
                    const std::vector<BeliefPair>& msgs, std::vector<BeliefPair>& beliefs,
                    std::size_t begin, std::size_t end) {
  for (std::size_t u = begin; u < end; ++u) {
    BeliefPair acc = normalized(priors[u][0], priors[u][1]);
    for (std::uint32_t t = g.in_offsets[u]; t < g.in_offsets[u + 1]; ++t) {
      const BeliefPair& m = msgs[g.incoming[t]];
      acc = normalized(acc[0] * m[0], acc[1] * m[1]);
    }
    beliefs[u] = acc;
  }
}

double step(const CompiledGraph& g, const std::vector<std::array<double, 4>>& pots,
            const std::vector<BeliefPair>& priors, const std::vector<BeliefPair>& old_msgs,
            std::vector<BeliefPair>& new_msgs, std::vector<BeliefPair>& beliefs, double damping,
            unsigned threads) {
  const unsigned workers = std::max(1u, threads);
  std::vector<double> residuals(workers, 0.0);
  std::atomic<unsigned> next_worker{0};
  parallel_over_nodes(g.n_nodes, workers, [&](std::size_t begin, std::size_t end) {
    const unsigned slot = next_worker.fetch_add(1);
    StepScratch scratch;
    update_messages(g, pots, priors, old_msgs, new_msgs, damping, begin, end, scratch,
                    residuals[slot]);
  });
  parallel_over_nodes(g.n_nodes, workers, [&](std::size_t begin, std::size_t end) {
    update_beliefs(g, priors, new_msgs, beliefs, begin, end);
  });
  double residual = 0.0;
  for (double r : residuals) residual = std::max(residual, r);
  return residual;
}

std::vector<BeliefPair> build_priors(std::size_t n_nodes,
                                     const std::map<std::size_t, double>& priors) {
  std::vector<BeliefPair> out(n_nodes, BeliefPair{0.5, 0.5});
  for (const auto& [node, psi1] : priors) {
    if (node >= n_nodes) throw std::invalid_argument("prior for unknown node");
    if (!(psi1 > 0.0 && psi1 < 1.0)) throw std::invalid_argument("prior outside (0,1)");
    out[node] = {1.0 - psi1, psi1};
  }
  return out;
}

}  // namespace detail

InferenceState init_state(const SourceObjectNetwork& net,
                          const std::map<std::size_t, double>& priors) {
  InferenceState state;
  state.priors = detail::build_priors(net.node_count(), priors);
  state.messages.assign(net.edge_count() * 2, BeliefPair{0.5, 0.5});
  state.beliefs = state.priors;
  state.residual = 0.0;
  state.iteration = 0;
  return state;
}

InferenceState lbp_iterate(const InferenceState& state, const SourceObjectNetwork& net,
                           const EnergyParams& params, const LbpConfig& config) {
  validate(config);
  const detail::CompiledGraph g = detail::compile(net);
  if (state.messages.size() != g.from.size() * 2 || state.priors.size() != g.n_nodes) {
    throw std::invalid_argument("state does not match network");
  }
  const auto pots = detail::materialize_potentials(g, params);

  InferenceState next = state;
  next.residual = detail::step(g, pots, state.priors, state.messages, next.messages, next.beliefs,
                               config.damping, config.threads);
  next.iteration = state.iteration + 1;
  return next;
}

ResolutionReport run_lbp(const SourceObjectNetwork& net, const EnergyParams& params,
                         const LbpConfig& config, const std::map<std::size_t, double>& priors) {
  validate(config);
  if (net.node_count() == 0) throw std::invalid_argument("empty network");
  const detail::CompiledGraph g = detail::compile(net);
  const auto pots = detail::materialize_potentials(g, params);
  const auto psi = detail::build_priors(g.n_nodes, priors);

  std::vector<BeliefPair> msgs(g.from.size() * 2, BeliefPair{0.5, 0.5});
  std::vector<BeliefPair> next_msgs(msgs.size());
  std::vector<BeliefPair> beliefs(g.n_nodes);

  ResolutionReport report;
  report.converged = false;
  double residual = 0.0;
  std::size_t iter = 0;
  while (iter < config.max_iters) {
    residual = detail::step(g, pots, psi, msgs, next_msgs, beliefs, config.damping, config.threads);
    msgs.swap(next_msgs);
    ++iter;
    if (residual < config.tol) {
      report.converged = true;
      break;
    }
  }
  if (iter == 0) detail::update_beliefs(g, psi, msgs, beliefs, 0, g.n_nodes);
  report.iterations = iter;
  report.max_residual = residual;

  // Trust values: P(y=1) per node.
  for (std::size_t i = 0; i < net.source_ids.size(); ++i) {
    report.source_trust[net.source_ids[i]] = beliefs[i][1];
  }

  std::size_t n_sets = 0;
  for (const ObjectNode& node : net.object_nodes) n_sets = std::max(n_sets, node.set + 1);
  std::vector<std::vector<std::string>> raws(n_sets);
  report.object_trust.resize(n_sets);
  for (std::size_t k = 0; k < net.object_nodes.size(); ++k) {
    const ObjectNode& node = net.object_nodes[k];
    auto& taus = report.object_trust[node.set];
    auto& set_raws = raws[node.set];
    if (node.object >= taus.size()) {
      taus.resize(node.object + 1, -1.0);
      set_raws.resize(node.object + 1);
    }
    if (taus[node.object] >= 0.0) throw std::invalid_argument("duplicate object node");
    taus[node.object] = beliefs[net.object_global(k)][1];
    set_raws[node.object] = node.raw;
  }
  report.truths.reserve(n_sets);
  for (std::size_t s = 0; s < n_sets; ++s) {
    for (double tau : report.object_trust[s]) {
      if (tau < 0.0) throw std::invalid_argument("object nodes must cover every index of a set");
    }
    report.truths.push_back(select_truth(report.object_trust[s], raws[s]));
  }
  return report;
}

std::vector<double> exact_marginals(const SourceObjectNetwork& net, const EnergyParams& params,
                                    const std::map<std::size_t, double>& priors) {
  const std::size_t n = net.node_count();
  if (n == 0) return {};
  if (n > 20) throw std::runtime_error("oracle bound exceeded");
  const detail::CompiledGraph g = detail::compile(net);
  const auto pots = detail::materialize_potentials(g, params);
  const auto psi = detail::build_priors(n, priors);

  std::vector<double> p1(n, 0.0);
  double z = 0.0;
  const std::uint64_t states = 1ull << n;
  for (std::uint64_t mask = 0; mask < states; ++mask) {
    double w = 1.0;
    for (std::size_t v = 0; v < n; ++v) w *= psi[v][(mask >> v) & 1u];
    for (std::size_t e = 0; e < g.from.size() && w > 0.0; ++e) {
      const unsigned a = (mask >> g.from[e]) & 1u;
      const unsigned b = (mask >> g.to[e]) & 1u;
      w *= pots[e][a * 2 + b];
    }
    z += w;
    if (w > 0.0) {
      for (std::size_t v = 0; v < n; ++v) {
        if ((mask >> v) & 1u) p1[v] += w;
      }
    }
  }
  if (!(z > 0.0) || !std::isfinite(z)) throw std::runtime_error("degenerate potential");
  for (double& p : p1) p /= z;
  return p1;
}

}  // namespace obres
