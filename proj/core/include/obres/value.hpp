#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace obres {

enum class ValueKind { Numeric, Text };

/// A single object value as asserted by a source. The original lexical form
/// is kept verbatim; numeric values additionally carry their parsed decimal.
class ObjectValue {
 public:
  static ObjectValue number(double value, std::string raw);
  static ObjectValue text(std::string text);
  static ObjectValue text(std::string text, std::string raw);

  ValueKind kind() const { return kind_; }
  double numeric() const { return numeric_; }
  const std::string& text() const { return text_; }
  const std::string& raw() const { return raw_; }

  /// Canonical identity used for deduplication: numerics compare by decimal
  /// value, text compares byte-exact after NFC normalization and trimming.
  std::string canonical_key() const;

  bool operator==(const ObjectValue&) const = default;

 private:
  ObjectValue(ValueKind kind, double numeric, std::string text, std::string raw);

  ValueKind kind_;
  double numeric_ = 0.0;
  std::string text_;
  std::string raw_;
};

/// Strips surrounding ASCII whitespace and applies Unicode NFC normalization.
std::string canonical_text(std::string_view s);

/// Shortest decimal representation that round-trips the double exactly.
std::string numeric_repr(double value);

/// Parses a finite decimal; with strip_grouping, ASCII commas are removed
/// first ("21,516,000" -> 21516000). Returns nullopt on any failure.
std::optional<double> parse_decimal(std::string_view lexical, bool strip_grouping = true);

/// True when the selected value and a ground-truth lexical denote the same
/// object under canonical equality.
bool canonical_match(const ObjectValue& selected, std::string_view truth_lexical);

}  // namespace obres
