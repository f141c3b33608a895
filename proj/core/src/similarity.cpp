#include "obres/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace obres {

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool valid = true;
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char bk = static_cast<unsigned char>(s[i + k]);
      if ((bk & 0xC0) != 0x80) {
        valid = false;
        break;
      }
      cp = (cp << 6) | (bk & 0x3F);
    }
    if (!valid || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

double numeric_similarity(double a, double b, bool zero_distance_compat) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("non-finite numeric");
  double d;
  if (a == 0.0 && b == 0.0) {
    d = zero_distance_compat ? 0.0 : 1.0;
  } else {
    d = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
  }
  return 1.0 / (1.0 + d);
}

std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
  const std::vector<char32_t> ua = decode_utf8(a);
  const std::vector<char32_t> ub = decode_utf8(b);
  const std::vector<char32_t>& shorter = ua.size() <= ub.size() ? ua : ub;
  const std::vector<char32_t>& longer = ua.size() <= ub.size() ? ub : ua;

  std::vector<std::size_t> row(shorter.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t j = 1; j <= longer.size(); ++j) {
    std::size_t diag = row[0];
    row[0] = j;
    for (std::size_t i = 1; i <= shorter.size(); ++i) {
      std::size_t saved = row[i];
      if (shorter[i - 1] == longer[j - 1]) {
        row[i] = diag;
      } else {
        row[i] = std::min({row[i - 1], row[i], diag}) + 1;
      }
      diag = saved;
    }
  }
  return row[shorter.size()];
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
  const std::size_t la = decode_utf8(a).size();
  const std::size_t lb = decode_utf8(b).size();
  const std::size_t longest = std::max(la, lb);
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein_distance(a, b)) / static_cast<double>(longest);
}

double jaro_winkler_similarity(std::string_view a, std::string_view b) {
  const std::vector<char32_t> ua = decode_utf8(a);
  const std::vector<char32_t> ub = decode_utf8(b);
  if (ua == ub) return 1.0;
  if (ua.empty() || ub.empty()) return 0.0;

  const std::size_t la = ua.size(), lb = ub.size();
  const std::size_t window = std::max(la, lb) / 2 == 0 ? 0 : std::max(la, lb) / 2 - 1;

  std::vector<bool> matched_a(la, false), matched_b(lb, false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < la; ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(lb, i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!matched_b[j] && ua[i] == ub[j]) {
        matched_a[i] = matched_b[j] = true;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;

  std::size_t half_transpositions = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < la; ++i) {
    if (!matched_a[i]) continue;
    while (!matched_b[j]) ++j;
    if (ua[i] != ub[j]) ++half_transpositions;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions) / 2.0;
  const double jaro = (m / static_cast<double>(la) + m / static_cast<double>(lb) + (m - t) / m) / 3.0;

  std::size_t prefix = 0;
  while (prefix < std::min({la, lb, std::size_t{4}}) && ua[prefix] == ub[prefix]) ++prefix;
  return jaro + static_cast<double>(prefix) * 0.1 * (1.0 - jaro);
}

double similarity(const ObjectValue& a, const ObjectValue& b, const SimilarityPolicy& policy) {
  if (a.kind() != b.kind()) return 0.0;
  if (a.kind() == ValueKind::Numeric) {
    return numeric_similarity(a.numeric(), b.numeric(), policy.zero_distance_compat);
  }
  switch (policy.text_kernel) {
    case TextKernel::JaroWinkler:
      return jaro_winkler_similarity(a.text(), b.text());
    case TextKernel::Levenshtein:
    default:
      return levenshtein_similarity(a.text(), b.text());
  }
}

}  // namespace obres
