#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace awscheme {

using ParamValue = std::variant<double, std::string>;

struct Record {
  std::string check_id;
  std::string paper_eq;  // tag of the relation under test, e.g. "aw-duality"
  std::map<std::string, ParamValue> parameters;
  double metric = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::int64_t runtime_ms = 0;

  bool operator==(const Record&) const = default;
};

// pass is derived from metric and threshold; a NaN metric fails.
Record make_record(std::string check_id, std::string paper_eq, std::map<std::string, ParamValue> parameters,
                   double metric, double threshold, std::int64_t runtime_ms);

struct VerificationReport {
  std::vector<Record> records;

  void add(Record r) { records.push_back(std::move(r)); }
  bool all_pass() const;
};

enum class Format { csv, json };

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

void emit(const VerificationReport& r, Format f, std::ostream& out);
// Throws Error(write) naming the path when the file cannot be written.
void emit(const VerificationReport& r, Format f, const std::filesystem::path& path);

VerificationReport parse_json(std::istream& in);

}  // namespace awscheme
