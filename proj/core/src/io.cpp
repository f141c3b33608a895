#include "obres/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace obres {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool skippable(std::string_view line) {
  if (!line.empty() && line.front() == '#') return true;
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

void check_writable_field(std::string_view field) {
  if (field.find('\t') != std::string_view::npos || field.find('\n') != std::string_view::npos) {
    throw std::invalid_argument("field contains tab or newline");
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  return in;
}

}  // namespace

std::vector<Claim> parse_claims(std::istream& in, std::string_view name) {
  std::vector<Claim> claims;
  std::string raw_line;
  std::size_t line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string_view line = strip_cr(raw_line);
    if (skippable(line)) continue;

    const auto fields = split_tabs(line);
    if (fields.size() != 5) {
      throw ParseError(name, line_no,
                       "expected 5 tab-separated fields, got " + std::to_string(fields.size()));
    }
    const std::string_view datatype = fields[4];
    if (datatype != "num" && datatype != "str") {
      throw ParseError(name, line_no, "datatype must be 'num' or 'str'");
    }
    if (fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw ParseError(name, line_no, "source_id, subject and predicate must be non-empty");
    }

    std::string lexical(fields[3]);
    ObjectValue object = ObjectValue::text("");
    if (datatype == "num") {
      auto value = parse_decimal(lexical);
      if (!value) throw ParseError(name, line_no, "unparseable numeric '" + lexical + "'");
      object = ObjectValue::number(*value, std::move(lexical));
    } else {
      object = ObjectValue::text(std::move(lexical));
    }
    claims.push_back(Claim{std::string(fields[0]), std::string(fields[1]),
                           std::string(fields[2]), std::move(object)});
  }
  return dedup_claims(claims);
}

std::vector<Claim> parse_claims(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return parse_claims(in, path.string());
}

void write_claims(std::ostream& out, std::span<const Claim> claims) {
  for (const Claim& c : claims) {
    check_writable_field(c.source_id);
    check_writable_field(c.subject);
    check_writable_field(c.predicate);
    check_writable_field(c.object.raw());
    out << c.source_id << '\t' << c.subject << '\t' << c.predicate << '\t' << c.object.raw()
        << '\t' << (c.object.kind() == ValueKind::Numeric ? "num" : "str") << '\n';
  }
}

void write_claims(const std::filesystem::path& path, std::span<const Claim> claims) {
  std::ostringstream buffer;
  write_claims(buffer, claims);
  atomic_write_text(path, buffer.str());
}

GroundTruth read_ground_truth(std::istream& in, std::string_view name) {
  GroundTruth truth;
  std::string raw_line;
  std::size_t line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string_view line = strip_cr(raw_line);
    if (skippable(line)) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw ParseError(name, line_no,
                       "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw ParseError(name, line_no, "fields must be non-empty");
    }
    auto key = std::make_pair(std::string(fields[0]), std::string(fields[1]));
    if (!truth.truths.emplace(std::move(key), std::string(fields[2])).second) {
      throw ParseError(name, line_no, "duplicate ground-truth key");
    }
  }
  return truth;
}

GroundTruth read_ground_truth(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_ground_truth(in, path.string());
}

void write_ground_truth(const std::filesystem::path& path, const GroundTruth& truth) {
  std::string content;
  for (const auto& [key, value] : truth.truths) {
    check_writable_field(key.first);
    check_writable_field(key.second);
    check_writable_field(value);
    content += key.first + '\t' + key.second + '\t' + value + '\n';
  }
  atomic_write_text(path, content);
}

std::map<std::string, double> read_priors(std::istream& in, std::string_view name) {
  std::map<std::string, double> priors;
  std::string raw_line;
  std::size_t line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string_view line = strip_cr(raw_line);
    if (skippable(line)) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2) {
      throw ParseError(name, line_no,
                       "expected 2 tab-separated fields, got " + std::to_string(fields.size()));
    }
    auto value = parse_decimal(fields[1], /*strip_grouping=*/false);
    if (!value) throw ParseError(name, line_no, "unparseable prior value");
    if (!priors.emplace(std::string(fields[0]), *value).second) {
      throw ParseError(name, line_no, "duplicate prior for node");
    }
  }
  return priors;
}

std::map<std::string, double> read_priors(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_priors(in, path.string());
}

void write_report(std::ostream& out, const ResolveOutcome& outcome,
                  std::optional<double> accuracy) {
  using json = nlohmann::ordered_json;
  for (std::size_t s = 0; s < outcome.sets.size(); ++s) {
    const ConflictSet& set = outcome.sets[s];
    const TruthSelection& sel = outcome.report.truths[s];
    json objects = json::array();
    for (std::size_t k = 0; k < set.objects.size(); ++k) {
      objects.push_back(json{{"value", set.objects[k].raw()},
                             {"trust", outcome.report.object_trust[s][k]},
                             {"sources", set.providers[k]}});
    }
    json record{{"subject", set.subject},
                {"predicate", set.predicate},
                {"truth", set.objects[sel.index].raw()},
                {"tie", sel.tie},
                {"objects", std::move(objects)}};
    out << record.dump() << '\n';
  }
  for (const auto& [source, trust] : outcome.report.source_trust) {
    out << json{{"source", source}, {"trust", trust}}.dump() << '\n';
  }
  json footer{{"converged", outcome.report.converged},
              {"iterations", outcome.report.iterations},
              {"max_residual", outcome.report.max_residual}};
  if (accuracy) footer["accuracy"] = *accuracy;
  out << footer.dump() << '\n';
}

void write_report(const std::filesystem::path& path, const ResolveOutcome& outcome,
                  std::optional<double> accuracy) {
  std::ostringstream buffer;
  write_report(buffer, outcome, accuracy);
  atomic_write_text(path, buffer.str());
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace obres
