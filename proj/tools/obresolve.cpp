// obresolve: resolve conflicting objects across Linked Data sources.
//
// Subcommands: resolve (pick truths and trust scores for a claim file),
// sweep (beta/delta accuracy grid), generate (synthetic corpus with planted
// truths), dump-graph (source-object network edge list).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "obres/eval.hpp"
#include "obres/io.hpp"
#include "obres/network.hpp"
#include "obres/pipeline.hpp"

namespace {

struct CommonOptions {
  std::string claims_path;
  obres::PipelineOptions pipeline;
  std::string text_kernel = "levenshtein";
  std::uint64_t seed = 0;
};

unsigned worker_threads_from_env() {
  const char* env = std::getenv("OBRESOLVE_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long value = std::strtoul(env, &end, 10);
  if (end == nullptr || *end != '\0' || value == 0 || value > 1024) {
    throw std::runtime_error("OBRESOLVE_THREADS must be a positive integer");
  }
  return static_cast<unsigned>(value);
}

void add_similarity_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--conflict-threshold", opts.pipeline.conflict_threshold,
                  "Similarity at or above which two objects merge")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--text-kernel", opts.text_kernel, "Text similarity kernel")
      ->check(CLI::IsMember({"levenshtein", "jaro-winkler"}));
  cmd->add_flag("--zero-distance-compat", opts.pipeline.policy.zero_distance_compat,
                "Treat 0 vs 0 as identical (S=1) instead of the literal d=1 rule");
}

void add_inference_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--beta", opts.pipeline.energy.beta,
                  "Compatibility of reliable sources with true objects");
  cmd->add_option("--delta", opts.pipeline.energy.delta,
                  "Compatibility of unreliable sources with false objects");
  cmd->add_option("--max-iters", opts.pipeline.lbp.max_iters, "Propagation iteration cap");
  cmd->add_option("--tol", opts.pipeline.lbp.tol, "Convergence tolerance on message change");
  cmd->add_option("--damping", opts.pipeline.lbp.damping, "Message damping factor in [0,1)");
}

void finalize(CommonOptions& opts) {
  opts.pipeline.policy.text_kernel = opts.text_kernel == "jaro-winkler"
                                         ? obres::TextKernel::JaroWinkler
                                         : obres::TextKernel::Levenshtein;
  opts.pipeline.lbp.threads = worker_threads_from_env();
  opts.pipeline.voting.rng_seed = opts.seed;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> grid;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    auto value = obres::parse_decimal(token, /*strip_grouping=*/false);
    if (!value) throw std::runtime_error("invalid grid value '" + token + "'");
    grid.push_back(*value);
  }
  return grid;
}

std::vector<double> default_grid() {
  std::vector<double> grid;
  for (double v = 0.5; v < 0.96; v += 0.05) grid.push_back(v);
  return grid;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    obres::atomic_write_text(out_path, content);
  }
}

int run_resolve(const CommonOptions& opts, const std::string& method_name,
                const std::string& truth_path, const std::string& priors_path,
                const std::string& out_path) {
  obres::Method method = obres::Method::ObResolution;
  if (method_name == "vote") method = obres::Method::Vote;
  if (method_name == "sums") method = obres::Method::Sums;

  const std::vector<obres::Claim> claims = obres::parse_claims(opts.claims_path);
  std::map<std::string, double> priors;
  if (!priors_path.empty()) priors = obres::read_priors(priors_path);

  const obres::ResolveOutcome outcome =
      obres::resolve_claims(claims, method, opts.pipeline, priors);

  std::optional<double> acc;
  if (!truth_path.empty()) {
    acc = obres::accuracy(outcome, obres::read_ground_truth(truth_path));
  }

  std::ostringstream buffer;
  obres::write_report(buffer, outcome, acc);
  emit(out_path, buffer.str());

  if (method == obres::Method::ObResolution && !outcome.report.converged) return 2;
  return 0;
}

int run_sweep(const CommonOptions& opts, const std::string& truth_path,
              const std::string& beta_grid, const std::string& delta_grid,
              const std::string& out_path) {
  const std::vector<obres::Claim> claims = obres::parse_claims(opts.claims_path);
  const obres::GroundTruth truth = obres::read_ground_truth(truth_path);

  obres::SweepSpec spec;
  spec.beta_grid = beta_grid.empty() ? default_grid() : parse_grid(beta_grid);
  spec.delta_grid = delta_grid.empty() ? default_grid() : parse_grid(delta_grid);

  const obres::SweepResult result = obres::sweep(claims, truth, spec, opts.pipeline);
  emit(out_path, obres::sweep_csv(result));
  return 0;
}

int run_generate(const obres::SynthSpec& spec, double fixed_reliability,
                 const std::string& out_claims, const std::string& out_truth) {
  obres::SynthSpec effective = spec;
  if (fixed_reliability >= 0.0) effective.fixed_reliability = fixed_reliability;
  const obres::SyntheticCorpus corpus = obres::generate_synthetic(effective);
  obres::write_claims(std::filesystem::path(out_claims), corpus.claims);
  obres::write_ground_truth(out_truth, corpus.truth);
  return 0;
}

int run_dump_graph(const CommonOptions& opts, const std::string& out_path) {
  const std::vector<obres::Claim> claims = obres::parse_claims(opts.claims_path);
  const obres::GroupingResult grouped =
      obres::group_conflicts(claims, opts.pipeline.conflict_threshold, opts.pipeline.policy);
  const obres::SourceObjectNetwork net =
      obres::build_network(grouped.conflicts, opts.pipeline.policy);
  std::ostringstream buffer;
  obres::dump_network(net, buffer);
  emit(out_path, buffer.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Object-conflict resolution for Linked Data claims"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string method = "obresolution";
  std::string truth_path, priors_path, out_path;
  std::string beta_grid, delta_grid;

  CLI::App* resolve = app.add_subcommand("resolve", "Resolve a claim file");
  resolve->add_option("claims", opts.claims_path, "Claim TSV file")->required();
  add_similarity_flags(resolve, opts);
  add_inference_flags(resolve, opts);
  resolve->add_option("--method", method, "Resolution method")
      ->check(CLI::IsMember({"obresolution", "vote", "sums"}));
  resolve->add_option("--seed", opts.seed, "Tie-break seed for vote");
  resolve->add_option("--priors", priors_path, "Prior beliefs per node id");
  resolve->add_option("--ground-truth", truth_path, "Score the run against this truth file");
  resolve->add_option("--out", out_path, "Report path (stdout when omitted)");

  CLI::App* sweep = app.add_subcommand("sweep", "Accuracy grid over beta and delta");
  sweep->add_option("claims", opts.claims_path, "Claim TSV file")->required();
  add_similarity_flags(sweep, opts);
  add_inference_flags(sweep, opts);
  sweep->add_option("--ground-truth", truth_path, "Truth file")->required();
  sweep->add_option("--beta-grid", beta_grid, "Comma-separated beta values");
  sweep->add_option("--delta-grid", delta_grid, "Comma-separated delta values");
  sweep->add_option("--out", out_path, "CSV path (stdout when omitted)");

  obres::SynthSpec synth;
  double fixed_reliability = -1.0;
  std::string out_claims, out_truth;
  CLI::App* generate = app.add_subcommand("generate", "Synthetic corpus with planted truths");
  generate->add_option("--sets", synth.n_conflict_sets, "Number of conflict sets");
  generate->add_option("--sources", synth.n_sources, "Number of sources");
  generate->add_option("--rel-alpha", synth.reliability_alpha, "Reliability Beta alpha");
  generate->add_option("--rel-beta", synth.reliability_beta, "Reliability Beta beta");
  generate->add_option("--fixed-reliability", fixed_reliability,
                       "Give every source this reliability instead of sampling");
  generate->add_option("--wrong-values", synth.wrong_value_pool, "Decoy values per set");
  generate->add_option("--coverage", synth.coverage_prob, "Coverage probability per source/set");
  generate->add_option("--seed", synth.rng_seed, "Generator seed");
  generate->add_option("--out-claims", out_claims, "Claims output path")->required();
  generate->add_option("--out-truth", out_truth, "Truth output path")->required();

  CLI::App* dump = app.add_subcommand("dump-graph", "Source-object network edge list");
  dump->add_option("claims", opts.claims_path, "Claim TSV file")->required();
  add_similarity_flags(dump, opts);
  dump->add_option("--out", out_path, "Edge-list path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    finalize(opts);
    if (resolve->parsed()) return run_resolve(opts, method, truth_path, priors_path, out_path);
    if (sweep->parsed()) return run_sweep(opts, truth_path, beta_grid, delta_grid, out_path);
    if (generate->parsed()) return run_generate(synth, fixed_reliability, out_claims, out_truth);
    if (dump->parsed()) return run_dump_graph(opts, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
