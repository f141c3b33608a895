#include <algorithm>
#include <random>

#include "doctest.h"
#include "obres/baselines.hpp"

using namespace obres;

namespace {

ConflictSet make_set(std::string subject, std::vector<std::string> values,
                     std::vector<std::vector<std::string>> providers) {
  ConflictSet set;
  set.subject = std::move(subject);
  set.predicate = "p";
  for (auto& v : values) set.objects.push_back(ObjectValue::text(std::move(v)));
  set.providers = std::move(providers);
  return set;
}

}  // namespace

TEST_CASE("majority vote picks the strict majority") {
  const std::vector<ConflictSet> sets{
      make_set("s", {"x", "y"}, {{"a", "b", "c"}, {"d"}})};
  const ResolutionReport rep = majority_vote(sets, {});
  CHECK(rep.truths[0].index == 0);
  CHECK(!rep.truths[0].tie);
  CHECK(rep.object_trust[0][0] == doctest::Approx(0.75));
  CHECK(rep.object_trust[0][1] == doctest::Approx(0.25));
  CHECK(rep.source_trust.empty());
}

TEST_CASE("majority vote breaks ties with the seed and flags them") {
  const std::vector<ConflictSet> sets{
      make_set("ex:Beijing", {"20,180,000", "21,516,000"}, {{"freebase"}, {"dbpedia"}})};
  bool saw[2] = {false, false};
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    const ResolutionReport rep = majority_vote(sets, {seed});
    CHECK(rep.truths[0].tie);
    saw[rep.truths[0].index] = true;
    // Same seed, same pick.
    CHECK(majority_vote(sets, {seed}).truths[0].index == rep.truths[0].index);
  }
  CHECK(saw[0]);
  CHECK(saw[1]);
}

TEST_CASE("majority vote with distinct counts ignores the seed") {
  const std::vector<ConflictSet> sets{
      make_set("s", {"x", "y", "z"}, {{"a"}, {"b", "c"}, {"d", "e", "f"}})};
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const ResolutionReport rep = majority_vote(sets, {seed});
    CHECK(rep.truths[0].index == 2);
    CHECK(!rep.truths[0].tie);
  }
}

TEST_CASE("majority vote on a single-object set") {
  const std::vector<ConflictSet> sets{make_set("s", {"only"}, {{"a", "b"}})};
  const ResolutionReport rep = majority_vote(sets, {});
  CHECK(rep.truths[0].index == 0);
  CHECK(rep.object_trust[0][0] == 1.0);
}

TEST_CASE("majority vote winner always has maximal provider count") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> n_objects(1, 5);
  std::uniform_int_distribution<int> n_providers(1, 4);
  int source = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<std::string>> providers(n_objects(rng));
    std::vector<std::string> values;
    for (std::size_t k = 0; k < providers.size(); ++k) {
      values.push_back("v" + std::to_string(k));
      for (int p = n_providers(rng); p > 0; --p) providers[k].push_back("w" + std::to_string(source++));
    }
    const std::vector<ConflictSet> sets{make_set("s", values, providers)};
    const ResolutionReport rep = majority_vote(sets, {trial});
    const std::size_t winner = rep.truths[0].index;
    for (const auto& ps : sets[0].providers) {
      CHECK(sets[0].providers[winner].size() >= ps.size());
    }
  }
}

TEST_CASE("sums fixed point on one object, one source") {
  const std::vector<ConflictSet> sets{make_set("s", {"only"}, {{"w"}})};
  const ResolutionReport rep = sums(sets, {});
  CHECK(rep.truths[0].index == 0);
  CHECK(rep.source_trust.at("w") == 1.0);
  CHECK(rep.object_trust[0][0] == 1.0);
}

TEST_CASE("sums prefers the object with more reliable providers") {
  const std::vector<ConflictSet> sets{make_set("s", {"x", "y"}, {{"w1", "w2"}, {"w3"}})};
  const ResolutionReport rep = sums(sets, {});
  CHECK(rep.truths[0].index == 0);
  CHECK(!rep.truths[0].tie);
  CHECK(rep.source_trust.at("w1") > 0.5);
  CHECK(rep.source_trust.at("w2") > 0.5);
}

TEST_CASE("sums breaks symmetric structures lexicographically") {
  const std::vector<ConflictSet> sets{make_set("s", {"bbb", "aaa"}, {{"w1"}, {"w2"}})};
  const ResolutionReport rep = sums(sets, {});
  CHECK(sets[0].objects[rep.truths[0].index].raw() == "aaa");
  CHECK(rep.truths[0].tie);
}

TEST_CASE("sums scores stay within [0,1] and runs are deterministic") {
  std::vector<ConflictSet> sets;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int s = 0; s < 12; ++s) {
    std::vector<std::vector<std::string>> providers(2 + s % 3);
    std::vector<std::string> values;
    for (std::size_t k = 0; k < providers.size(); ++k) {
      values.push_back("v" + std::to_string(k));
      providers[k].push_back("w" + std::to_string(pick(rng)));
    }
    sets.push_back(make_set("s" + std::to_string(s), values, providers));
  }
  const ResolutionReport a = sums(sets, {});
  const ResolutionReport b = sums(sets, {});
  CHECK(a.object_trust == b.object_trust);
  CHECK(a.source_trust == b.source_trust);
  for (const auto& [src, score] : a.source_trust) {
    CHECK(score >= 0.0);
    CHECK(score <= 1.0);
  }
  for (const auto& taus : a.object_trust) {
    for (double t : taus) {
      CHECK(t >= 0.0);
      CHECK(t <= 1.0);
    }
  }
}

TEST_CASE("sums validates its threshold") {
  CHECK_THROWS_AS(sums({}, {20, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(sums({}, {20, 1.0}), std::invalid_argument);
}
