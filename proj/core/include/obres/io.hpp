#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "obres/eval.hpp"

namespace obres {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string_view file, std::size_t line, const std::string& what)
      : std::runtime_error(std::string(file) + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Claim files are UTF-8 TSV: source_id, subject, predicate, object lexical,
/// datatype (num|str). Lines starting with '#' and blank lines are skipped.
/// Numerics are parsed with ASCII comma grouping stripped. Claims are
/// deduplicated on ingest.
std::vector<Claim> parse_claims(std::istream& in, std::string_view name = "<stream>");
std::vector<Claim> parse_claims(const std::filesystem::path& path);

void write_claims(std::ostream& out, std::span<const Claim> claims);
void write_claims(const std::filesystem::path& path, std::span<const Claim> claims);

/// Ground-truth files: subject, predicate, true value (3 TSV fields).
GroundTruth read_ground_truth(std::istream& in, std::string_view name = "<stream>");
GroundTruth read_ground_truth(const std::filesystem::path& path);
void write_ground_truth(const std::filesystem::path& path, const GroundTruth& truth);

/// Prior-belief files: node_id, psi(y=1) (2 TSV fields).
std::map<std::string, double> read_priors(std::istream& in, std::string_view name = "<stream>");
std::map<std::string, double> read_priors(const std::filesystem::path& path);

/// Line-delimited JSON report: one record per resolved set, one per source
/// (omitted when the method has no source model), then a footer with
/// convergence metadata and optional accuracy.
void write_report(std::ostream& out, const ResolveOutcome& outcome,
                  std::optional<double> accuracy = std::nullopt);
void write_report(const std::filesystem::path& path, const ResolveOutcome& outcome,
                  std::optional<double> accuracy = std::nullopt);

/// Writes through a temporary file in the same directory, then renames.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace obres
