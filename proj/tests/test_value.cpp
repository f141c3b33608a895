#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "obres/value.hpp"

using namespace obres;

TEST_CASE("numeric values compare by decimal value") {
  auto a = ObjectValue::number(47.0, "47");
  auto b = ObjectValue::number(47.0, "47.0");
  CHECK(a.canonical_key() == b.canonical_key());
  CHECK(a.raw() == "47");
  CHECK(b.raw() == "47.0");
}

TEST_CASE("text canonicalization trims and NFC-normalizes") {
  CHECK(canonical_text("  Beijing City \t") == "Beijing City");
  // U+0065 U+0301 (e + combining acute) composes to U+00E9.
  CHECK(canonical_text("Caf\x65\xcc\x81") == "Caf\xc3\xa9");
  CHECK(ObjectValue::text("Caf\x65\xcc\x81").canonical_key() ==
        ObjectValue::text("Caf\xc3\xa9").canonical_key());
  CHECK(canonical_text("") == "");
}

TEST_CASE("parse_decimal strips comma grouping") {
  CHECK(parse_decimal("21,516,000") == 21516000.0);
  CHECK(parse_decimal("46.0248") == 46.0248);
  CHECK(parse_decimal("-1e3") == -1000.0);
  CHECK(!parse_decimal(""));
  CHECK(!parse_decimal("12abc"));
  CHECK(!parse_decimal("nan"));
  CHECK(!parse_decimal("inf"));
  CHECK(!parse_decimal("1e999"));
}

TEST_CASE("numeric_repr round-trips") {
  CHECK(parse_decimal(numeric_repr(0.1)) == 0.1);
  CHECK(numeric_repr(47.0) == "47");
}

TEST_CASE("canonical_match compares numerics by value, text canonically") {
  CHECK(canonical_match(ObjectValue::number(47.0, "47.0"), "47"));
  CHECK(canonical_match(ObjectValue::number(21516000.0, "21,516,000"), "21516000"));
  CHECK(!canonical_match(ObjectValue::number(47.0, "47"), "48"));
  CHECK(!canonical_match(ObjectValue::number(47.0, "47"), "forty-seven"));
  CHECK(canonical_match(ObjectValue::text("  x  "), "x"));
  CHECK(!canonical_match(ObjectValue::text("x"), "y"));
}

TEST_CASE("non-finite numerics are rejected") {
  CHECK_THROWS_WITH_AS(ObjectValue::number(std::numeric_limits<double>::infinity(), "inf"),
                       "non-finite numeric", std::invalid_argument);
}
