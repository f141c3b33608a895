#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <vector>

#include "obres/network.hpp"

namespace obres {

/// Pairwise compatibility parameters: beta couples reliable sources with true
/// objects, delta couples unreliable sources with false objects. Both must
/// lie strictly inside (0,1) so no potential entry is ever exactly zero.
struct EnergyParams {
  double beta = 0.9;
  double delta = 0.7;
};

void validate(const EnergyParams& params);

enum class EdgeKind { Provider, ObjectObject, SourceSource };

/// Pairwise potential entry U(y_from, y_to) for one edge. Provider edges are
/// oriented source -> object; the reverse direction is the transpose.
/// Weight is S for object edges, epsilon for source edges, ignored for
/// provider edges.
double energy(EdgeKind kind, double weight, const EnergyParams& params, int y_from, int y_to);

struct LbpConfig {
  std::size_t max_iters = 100;
  double tol = 1e-6;
  double damping = 0.0;    // blend factor for the previous message, in [0,1)
  unsigned threads = 1;    // worker threads for message updates
};

void validate(const LbpConfig& config);

/// Label distributions are pairs (P(y=0), P(y=1)), always normalized.
using BeliefPair = std::array<double, 2>;

/// Mutable state of one propagation run. Messages are indexed by directed
/// edge: undirected edges are numbered provider edges first, then object
/// edges, then source edges, in network order; directed id 2e runs in stored
/// orientation, 2e+1 in reverse.
struct InferenceState {
  std::vector<BeliefPair> priors;    // per node
  std::vector<BeliefPair> messages;  // per directed edge, exactly 2E entries
  std::vector<BeliefPair> beliefs;   // per node
  double residual = 0.0;
  std::size_t iteration = 0;
};

/// Uniform 0.5 priors unless overridden; all messages start uniform. Keys of
/// `priors` are global node indices, values are psi(y=1) in the open (0,1).
InferenceState init_state(const SourceObjectNetwork& net,
                          const std::map<std::size_t, double>& priors = {});

/// One synchronous (Jacobi) sweep: every directed message recomputed from the
/// previous iteration's messages, then normalized and optionally damped;
/// beliefs refreshed from the new messages; residual is the max absolute
/// message change.
InferenceState lbp_iterate(const InferenceState& state, const SourceObjectNetwork& net,
                           const EnergyParams& params, const LbpConfig& config);

/// Iterates to convergence (residual < tol) or max_iters, then assembles the
/// resolution report: tau per object node, t per source node, truth per
/// conflict set. Non-convergence is reported, not thrown.
ResolutionReport run_lbp(const SourceObjectNetwork& net, const EnergyParams& params,
                         const LbpConfig& config, const std::map<std::size_t, double>& priors = {});

/// Brute-force marginals P(y=1) of the pairwise joint, enumerated over all
/// 2^n assignments. Testing oracle; refuses networks above 20 nodes.
std::vector<double> exact_marginals(const SourceObjectNetwork& net, const EnergyParams& params,
                                    const std::map<std::size_t, double>& priors = {});

}  // namespace obres
