#include "awscheme/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "awscheme/errors.hpp"

namespace awscheme {

namespace {

using nlohmann::json;

// JSON has no literal for non-finite numbers; they travel as strings.
nlohmann::ordered_json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  throw Error(ErrorKind::validation, "expected a number, got \"" + s + "\"");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string param_text(const ParamValue& v) {
  if (const double* d = std::get_if<double>(&v)) return format_double(*d);
  return std::get<std::string>(v);
}

void emit_csv(const VerificationReport& r, std::ostream& out) {
  std::set<std::string> keys;
  for (const auto& rec : r.records) {
    for (const auto& [k, v] : rec.parameters) keys.insert(k);
  }
  out << "check_id,paper_eq,metric,threshold,pass,runtime_ms";
  for (const auto& k : keys) out << ',' << csv_field(k);
  out << '\n';
  for (const auto& rec : r.records) {
    out << csv_field(rec.check_id) << ',' << csv_field(rec.paper_eq) << ',' << format_double(rec.metric) << ','
        << format_double(rec.threshold) << ',' << (rec.pass ? "true" : "false") << ',' << rec.runtime_ms;
    for (const auto& k : keys) {
      out << ',';
      auto it = rec.parameters.find(k);
      if (it != rec.parameters.end()) out << csv_field(param_text(it->second));
    }
    out << '\n';
  }
}

void emit_json(const VerificationReport& r, std::ostream& out) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& rec : r.records) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rec.parameters) {
      if (const double* d = std::get_if<double>(&v)) {
        params[k] = number_to_json(*d);
      } else {
        params[k] = std::get<std::string>(v);
      }
    }
    nlohmann::ordered_json j;
    j["check_id"] = rec.check_id;
    j["paper_eq"] = rec.paper_eq;
    j["metric"] = number_to_json(rec.metric);
    j["threshold"] = number_to_json(rec.threshold);
    j["pass"] = rec.pass;
    j["runtime_ms"] = rec.runtime_ms;
    j["parameters"] = std::move(params);
    records.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["records"] = std::move(records);
  out << doc.dump(2) << '\n';
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Record make_record(std::string check_id, std::string paper_eq, std::map<std::string, ParamValue> parameters,
                   double metric, double threshold, std::int64_t runtime_ms) {
  Record r;
  r.check_id = std::move(check_id);
  r.paper_eq = std::move(paper_eq);
  r.parameters = std::move(parameters);
  r.metric = metric;
  r.threshold = threshold;
  r.pass = metric <= threshold;
  r.runtime_ms = runtime_ms;
  return r;
}

bool VerificationReport::all_pass() const {
  for (const auto& r : records) {
    if (!r.pass) return false;
  }
  return true;
}

void emit(const VerificationReport& r, Format f, std::ostream& out) {
  if (f == Format::csv) {
    emit_csv(r, out);
  } else {
    emit_json(r, out);
  }
}

void emit(const VerificationReport& r, Format f, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::write, "cannot open " + path.string() + " for writing");
  emit(r, f, out);
  out.flush();
  if (!out) throw Error(ErrorKind::write, "failed writing " + path.string());
}

VerificationReport parse_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::validation, std::string("malformed report JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_array()) {
    throw Error(ErrorKind::validation, "report JSON must be an object with a records array");
  }
  VerificationReport r;
  try {
    for (const auto& j : doc["records"]) {
      Record rec;
      rec.check_id = j.at("check_id").get<std::string>();
      rec.paper_eq = j.at("paper_eq").get<std::string>();
      rec.metric = number_from_json(j.at("metric"));
      rec.threshold = number_from_json(j.at("threshold"));
      rec.pass = j.at("pass").get<bool>();
      rec.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
      for (const auto& [k, v] : j.at("parameters").items()) {
        const std::string s = v.is_string() ? v.get<std::string>() : "";
        if (v.is_number() || s == "inf" || s == "-inf" || s == "nan") {
          rec.parameters[k] = number_from_json(v);
        } else {
          rec.parameters[k] = v.get<std::string>();
        }
      }
      r.records.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::validation, std::string("report record is incomplete: ") + e.what());
  }
  return r;
}

}  // namespace awscheme
