#pragma once

#include <span>
#include <string>
#include <vector>

#include "obres/value.hpp"

namespace obres {

/// One (source, subject, predicate, object) assertion.
struct Claim {
  std::string source_id;
  std::string subject;
  std::string predicate;
  ObjectValue object;

  bool operator==(const Claim&) const = default;
};

/// Throws std::invalid_argument when source_id, subject or predicate is empty.
void validate_claim(const Claim& claim);

/// Removes repeated assertions: two claims are duplicates when they share
/// source, subject, predicate and the canonical form of their object.
/// Order of first occurrence is preserved.
std::vector<Claim> dedup_claims(std::span<const Claim> claims);

}  // namespace obres
