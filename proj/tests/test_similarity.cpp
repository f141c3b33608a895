#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "obres/similarity.hpp"

using namespace obres;

namespace {

// Independent oracle: the textbook recursive definition, no memoization.
std::size_t naive_levenshtein(std::string_view a, std::string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  const std::size_t same = a.back() == b.back() ? 0 : 1;
  const std::size_t substitute =
      naive_levenshtein(a.substr(0, a.size() - 1), b.substr(0, b.size() - 1));
  const std::size_t insert = naive_levenshtein(a, b.substr(0, b.size() - 1));
  const std::size_t erase = naive_levenshtein(a.substr(0, a.size() - 1), b);
  return std::min({substitute + same, insert + 1, erase + 1});
}

std::vector<std::string> all_strings_up_to(std::size_t max_len, std::string_view alphabet) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

}  // namespace

TEST_CASE("numeric kernel matches the reference values") {
  CHECK(numeric_similarity(46.0248, 47.0) == doctest::Approx(0.979672830962664).epsilon(1e-12));
  CHECK(numeric_similarity(93.0, 46.0248) == doctest::Approx(0.664403408603810).epsilon(1e-12));
  CHECK(numeric_similarity(47.0, 47.0) == 1.0);
}

TEST_CASE("numeric kernel zero-zero quirk") {
  CHECK(numeric_similarity(0.0, 0.0, false) == 0.5);
  CHECK(numeric_similarity(0.0, 0.0, true) == 1.0);
  CHECK(numeric_similarity(0.0, 5.0) == 0.5);  // d = 1 whenever exactly one side is zero
}

TEST_CASE("numeric kernel allows relative distance above one") {
  CHECK(numeric_similarity(-1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("numeric kernel rejects non-finite input") {
  CHECK_THROWS_WITH_AS(numeric_similarity(std::numeric_limits<double>::quiet_NaN(), 1.0),
                       "non-finite numeric", std::invalid_argument);
}

TEST_CASE("levenshtein similarity") {
  CHECK(levenshtein_similarity("abc", "abc") == 1.0);
  CHECK(levenshtein_similarity("kitten", "sitting") ==
        doctest::Approx(1.0 - 3.0 / 7.0).epsilon(1e-12));
  CHECK(levenshtein_similarity("", "abc") == 0.0);
  CHECK(levenshtein_similarity("", "") == 1.0);
}

TEST_CASE("levenshtein counts Unicode scalar values, not bytes") {
  // "café" (precomposed) vs "cafe": one substitution over length 4.
  CHECK(levenshtein_distance("caf\xc3\xa9", "cafe") == 1);
  CHECK(levenshtein_similarity("caf\xc3\xa9", "cafe") == doctest::Approx(0.75));
}

TEST_CASE("levenshtein distance matches the naive recursive oracle up to length 4") {
  const auto strings = all_strings_up_to(4, "abc");
  for (const auto& a : strings) {
    for (const auto& b : strings) {
      CAPTURE(a);
      CAPTURE(b);
      REQUIRE(levenshtein_distance(a, b) == naive_levenshtein(a, b));
    }
  }
}

TEST_CASE("jaro-winkler reference values") {
  CHECK(jaro_winkler_similarity("MARTHA", "MARTHA") == 1.0);
  CHECK(jaro_winkler_similarity("MARTHA", "MARHTA") ==
        doctest::Approx(0.9611111111111111).epsilon(1e-12));
  CHECK(jaro_winkler_similarity("", "X") == 0.0);
  CHECK(jaro_winkler_similarity("", "") == 1.0);
  CHECK(jaro_winkler_similarity("ab", "cd") == 0.0);
}

TEST_CASE("dispatch by value kind") {
  SimilarityPolicy policy;
  CHECK(similarity(ObjectValue::number(47, "47"), ObjectValue::number(47, "47"), policy) == 1.0);
  CHECK(similarity(ObjectValue::text("abc"), ObjectValue::number(1, "1"), policy) == 0.0);
  CHECK(similarity(ObjectValue::text("kitten"), ObjectValue::text("sitting"), policy) ==
        doctest::Approx(1.0 - 3.0 / 7.0).epsilon(1e-12));
  policy.text_kernel = TextKernel::JaroWinkler;
  CHECK(similarity(ObjectValue::text("MARTHA"), ObjectValue::text("MARHTA"), policy) ==
        doctest::Approx(0.9611111111111111).epsilon(1e-12));
}

TEST_CASE("kernels are symmetric and stay in range") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> num(-1e6, 1e6);
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<int> ch('a', 'e');
  for (int i = 0; i < 500; ++i) {
    const double a = num(rng), b = num(rng);
    const double s1 = numeric_similarity(a, b);
    CHECK(s1 == numeric_similarity(b, a));
    CHECK(s1 > 0.0);
    CHECK(s1 <= 1.0);

    std::string sa, sb;
    for (int k = len(rng); k > 0; --k) sa.push_back(static_cast<char>(ch(rng)));
    for (int k = len(rng); k > 0; --k) sb.push_back(static_cast<char>(ch(rng)));
    for (double s : {levenshtein_similarity(sa, sb), jaro_winkler_similarity(sa, sb)}) {
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
    }
    CHECK(levenshtein_similarity(sa, sb) == levenshtein_similarity(sb, sa));
    CHECK(jaro_winkler_similarity(sa, sb) == jaro_winkler_similarity(sb, sa));
    CHECK(levenshtein_similarity(sa, sa) == 1.0);
    CHECK(jaro_winkler_similarity(sa, sa) == 1.0);
  }
}
