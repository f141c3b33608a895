#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "obres/value.hpp"

namespace obres {

enum class TextKernel { Levenshtein, JaroWinkler };

struct SimilarityPolicy {
  TextKernel text_kernel = TextKernel::Levenshtein;
  /// When set, S(0,0) = 1 instead of the literal d(0,0)=1 quirk (S=0.5).
  bool zero_distance_compat = false;
};

/// Relative-distance similarity for decimals: S = 1/(1+d) with
/// d = |a-b| / max(|a|,|b|), and d(0,0) = 1 unless compat is set.
double numeric_similarity(double a, double b, bool zero_distance_compat = false);

/// Edit distance counted over Unicode scalar values.
std::size_t levenshtein_distance(std::string_view a, std::string_view b);

/// 1 - ld/max(len); 1.0 when both strings are empty.
double levenshtein_similarity(std::string_view a, std::string_view b);

/// Jaro-Winkler with prefix scale 0.1 and max prefix length 4.
double jaro_winkler_similarity(std::string_view a, std::string_view b);

/// Type-dispatched similarity: numeric kernel for two numerics, the
/// configured text kernel for two texts, 0 for mixed kinds.
double similarity(const ObjectValue& a, const ObjectValue& b, const SimilarityPolicy& policy);

/// Decodes UTF-8 into Unicode scalar values; invalid bytes become U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view s);

}  // namespace obres
