#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "obres/conflicts.hpp"

using namespace obres;

namespace {

Claim num_claim(std::string source, std::string subject, std::string lexical) {
  const double value = *parse_decimal(lexical);
  return Claim{std::move(source), std::move(subject), "dbp:prop",
               ObjectValue::number(value, std::move(lexical))};
}

}  // namespace

TEST_CASE("conflicting population counts form one conflict set") {
  std::vector<Claim> claims{num_claim("freebase", "ex:Beijing", "20,180,000"),
                            num_claim("dbpedia", "ex:Beijing", "21,516,000")};
  const GroupingResult grouped = group_conflicts(claims, 0.99, {});
  REQUIRE(grouped.conflicts.size() == 1);
  CHECK(grouped.conflicts[0].objects.size() == 2);
  CHECK(grouped.singletons.empty());
}

TEST_CASE("identical objects merge into a singleton with both providers") {
  std::vector<Claim> claims{num_claim("a", "ex:s", "47"), num_claim("b", "ex:s", "47")};
  const GroupingResult grouped = group_conflicts(claims, 0.5, {});
  CHECK(grouped.conflicts.empty());
  REQUIRE(grouped.singletons.size() == 1);
  REQUIRE(grouped.singletons[0].objects.size() == 1);
  CHECK(grouped.singletons[0].providers[0] == std::vector<std::string>{"a", "b"});
}

TEST_CASE("numeric raw variants dedup by value") {
  std::vector<Claim> claims{num_claim("a", "ex:s", "47"), num_claim("b", "ex:s", "47.0")};
  const GroupingResult grouped = group_conflicts(claims, 0.9999, {});
  REQUIRE(grouped.singletons.size() == 1);
  CHECK(grouped.singletons[0].objects[0].raw() == "47");  // smallest raw represents the node
  CHECK(grouped.singletons[0].providers[0].size() == 2);
}

TEST_CASE("three pairwise-dissimilar heights stay distinct at threshold 0.99") {
  std::vector<Claim> claims{num_claim("a", "ex:liberty", "46.0248"),
                            num_claim("b", "ex:liberty", "47"),
                            num_claim("c", "ex:liberty", "93")};
  const GroupingResult grouped = group_conflicts(claims, 0.99, {});
  REQUIRE(grouped.conflicts.size() == 1);
  CHECK(grouped.conflicts[0].objects.size() == 3);  // S(46.0248,47) ~ 0.9797 < 0.99
}

TEST_CASE("single-link merging unions providers") {
  // 0.98 threshold: S(46.0248,47) ~ 0.9797 < 0.98 keeps them apart,
  // S(46.9,47) ~ 0.99787 merges.
  std::vector<Claim> claims{num_claim("a", "ex:s", "46.9"), num_claim("b", "ex:s", "47"),
                            num_claim("c", "ex:s", "93")};
  const GroupingResult grouped = group_conflicts(claims, 0.98, {});
  REQUIRE(grouped.conflicts.size() == 1);
  const ConflictSet& set = grouped.conflicts[0];
  REQUIRE(set.objects.size() == 2);
  CHECK(set.objects[0].raw() == "46.9");
  CHECK(set.providers[0] == std::vector<std::string>{"a", "b"});
  CHECK(set.providers[1] == std::vector<std::string>{"c"});
}

TEST_CASE("grouping is permutation invariant") {
  std::vector<Claim> claims;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> subject(0, 5);
  std::uniform_int_distribution<int> value(0, 4);
  std::uniform_int_distribution<int> source(0, 3);
  for (int i = 0; i < 60; ++i) {
    claims.push_back(num_claim("s" + std::to_string(source(rng)),
                               "ex:e" + std::to_string(subject(rng)),
                               std::to_string(value(rng) * 50)));
  }
  const GroupingResult a = group_conflicts(claims, 0.99, {});
  std::shuffle(claims.begin(), claims.end(), rng);
  const GroupingResult b = group_conflicts(claims, 0.99, {});

  auto equal = [](const std::vector<ConflictSet>& x, const std::vector<ConflictSet>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].subject != y[i].subject || x[i].predicate != y[i].predicate) return false;
      if (x[i].objects != y[i].objects || x[i].providers != y[i].providers) return false;
    }
    return true;
  };
  CHECK(equal(a.conflicts, b.conflicts));
  CHECK(equal(a.singletons, b.singletons));
}

TEST_CASE("grouping is idempotent over regenerated claims") {
  std::vector<Claim> claims{num_claim("a", "ex:s", "10"), num_claim("b", "ex:s", "20"),
                            num_claim("c", "ex:s", "10"), num_claim("a", "ex:s", "10")};
  const GroupingResult once = group_conflicts(claims, 0.99, {});

  // Flatten the grouping back into claims and regroup.
  std::vector<Claim> flattened;
  for (const auto& sets : {once.conflicts, once.singletons}) {
    for (const ConflictSet& set : sets) {
      for (std::size_t k = 0; k < set.objects.size(); ++k) {
        for (const std::string& src : set.providers[k]) {
          flattened.push_back(Claim{src, set.subject, set.predicate, set.objects[k]});
        }
      }
    }
  }
  const GroupingResult twice = group_conflicts(flattened, 0.99, {});
  REQUIRE(twice.conflicts.size() == once.conflicts.size());
  for (std::size_t i = 0; i < once.conflicts.size(); ++i) {
    CHECK(twice.conflicts[i].objects == once.conflicts[i].objects);
    CHECK(twice.conflicts[i].providers == once.conflicts[i].providers);
  }
}

TEST_CASE("empty claim list groups to nothing") {
  const GroupingResult grouped = group_conflicts({}, 0.99, {});
  CHECK(grouped.conflicts.empty());
  CHECK(grouped.singletons.empty());
}

TEST_CASE("claims with empty fields are rejected") {
  std::vector<Claim> claims{Claim{"", "ex:s", "p", ObjectValue::text("x")}};
  CHECK_THROWS_AS(group_conflicts(claims, 0.99, {}), std::invalid_argument);
}

TEST_CASE("select_truth picks the argmax") {
  ConflictSet set{"s", "p",
                  {ObjectValue::text("a"), ObjectValue::text("b")},
                  {{"s1"}, {"s2"}}};
  const std::vector<double> trust{0.74, 0.26};
  const TruthSelection sel = select_truth(set, trust);
  CHECK(sel.index == 0);
  CHECK(!sel.tie);
}

TEST_CASE("select_truth breaks exact ties by smallest raw form") {
  ConflictSet set{"s", "p",
                  {ObjectValue::text("b"), ObjectValue::text("a")},
                  {{"s1"}, {"s2"}}};
  const std::vector<double> trust{0.5, 0.5};
  const TruthSelection sel = select_truth(set, trust);
  CHECK(sel.index == 1);  // raw "a"
  CHECK(sel.tie);
}

TEST_CASE("select_truth three-way") {
  std::vector<double> trust{0.3, 0.3, 0.4};
  std::vector<std::string> raws{"x", "y", "z"};
  const TruthSelection sel = select_truth(trust, raws);
  CHECK(sel.index == 2);
  CHECK(!sel.tie);
}

TEST_CASE("select_truth rejects an empty set") {
  ConflictSet set;
  CHECK_THROWS_WITH_AS(select_truth(set, {}), "empty conflict set", std::invalid_argument);
}

TEST_CASE("aggregate_source_trust averages object trust") {
  std::map<ObjectRef, double> taus{{{0, 0}, 0.8}, {{0, 1}, 0.6}, {{1, 0}, 1.0},
                                   {{2, 0}, 0.2}, {{2, 1}, 0.2}, {{2, 2}, 0.8}};
  std::map<std::string, std::vector<ObjectRef>> provided{
      {"w1", {{0, 0}, {0, 1}}},
      {"w2", {{1, 0}}},
      {"w3", {{2, 0}, {2, 1}, {2, 2}}},
      {"w4", {}},
  };
  const auto trust = aggregate_source_trust(taus, provided);
  CHECK(trust.at("w1") == doctest::Approx(0.7));
  CHECK(trust.at("w2") == 1.0);
  CHECK(trust.at("w3") == doctest::Approx(0.4));
  CHECK(!trust.contains("w4"));  // empty object set is excluded
}

TEST_CASE("aggregate_object_trust averages source trust") {
  std::map<std::string, double> t{{"w1", 1.0}, {"w2", 0.0}, {"w3", 0.5}};
  std::map<ObjectRef, std::vector<std::string>> providers{
      {{0, 0}, {"w1", "w2"}},
      {{0, 1}, {"w1"}},
      {{1, 0}, {"w1", "w2", "w3"}},
  };
  const auto taus = aggregate_object_trust(t, providers);
  CHECK(taus.at({0, 0}) == doctest::Approx(0.5));
  CHECK(taus.at({0, 1}) == 1.0);
  CHECK(taus.at({1, 0}) == doctest::Approx(0.5));
}

TEST_CASE("aggregates stay in range on random inputs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::map<ObjectRef, double> taus;
  std::map<std::string, std::vector<ObjectRef>> provided;
  for (std::size_t s = 0; s < 10; ++s) {
    auto& objects = provided["w" + std::to_string(s)];
    for (std::size_t k = 0; k < 5; ++k) {
      ObjectRef ref{k, s % 3};
      taus[ref] = unit(rng);
      objects.push_back(ref);
    }
  }
  for (const auto& [src, t] : aggregate_source_trust(taus, provided)) {
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
  }
}
