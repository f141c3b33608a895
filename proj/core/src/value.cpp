#include "obres/value.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace obres {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

bool all_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

}  // namespace

ObjectValue::ObjectValue(ValueKind kind, double numeric, std::string text, std::string raw)
    : kind_(kind), numeric_(numeric), text_(std::move(text)), raw_(std::move(raw)) {}

ObjectValue ObjectValue::number(double value, std::string raw) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite numeric");
  return ObjectValue(ValueKind::Numeric, value, {}, std::move(raw));
}

ObjectValue ObjectValue::text(std::string text) {
  std::string raw = text;
  return ObjectValue(ValueKind::Text, 0.0, std::move(text), std::move(raw));
}

ObjectValue ObjectValue::text(std::string text, std::string raw) {
  return ObjectValue(ValueKind::Text, 0.0, std::move(text), std::move(raw));
}

std::string ObjectValue::canonical_key() const {
  if (kind_ == ValueKind::Numeric) return "n:" + numeric_repr(numeric_);
  return "t:" + canonical_text(text_);
}

std::string canonical_text(std::string_view s) {
  std::string_view trimmed = trim(s);
  if (all_ascii(trimmed)) return std::string(trimmed);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return std::string(trimmed);
  icu::UnicodeString input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(trimmed.data(), static_cast<int32_t>(trimmed.size())));
  icu::UnicodeString normalized = nfc->normalize(input, status);
  if (U_FAILURE(status)) return std::string(trimmed);
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::string numeric_repr(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("numeric_repr failed");
  return std::string(buf, ptr);
}

std::optional<double> parse_decimal(std::string_view lexical, bool strip_grouping) {
  std::string cleaned;
  cleaned.reserve(lexical.size());
  for (char c : trim(lexical)) {
    if (strip_grouping && c == ',') continue;
    cleaned.push_back(c);
  }
  if (cleaned.empty()) return std::nullopt;

  double value = 0.0;
  const char* begin = cleaned.data();
  const char* end = begin + cleaned.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

bool canonical_match(const ObjectValue& selected, std::string_view truth_lexical) {
  if (selected.kind() == ValueKind::Numeric) {
    auto parsed = parse_decimal(truth_lexical);
    return parsed.has_value() && *parsed == selected.numeric();
  }
  return canonical_text(selected.text()) == canonical_text(truth_lexical);
}

}  // namespace obres
