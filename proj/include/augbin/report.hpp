#pragma once

// Run reports.
//
// A report is one JSON document:
//
//   {
//     "schema_version": 1,
//     "command":    "train" | "verify" | "bench",
//     "config":     { ...flags as given... },
//     "seeds":      [ uint, ... ],
//     "losses":     [ number, ... ],
//     "divergence": [ number, ... ],
//     "counters":   { name: uint, ... },
//     "timings":    { name: number, ... },
//     "verdicts":   { suite: { "passed": bool, ...details... }, ... }
//   }
//
// All keys are required. Strict validation also rejects unknown keys at the
// top level.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "augbin/errors.hpp"
#include "augbin/op_counters.hpp"

namespace augbin {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct Verdict {
  bool passed = false;
  Json detail = Json::object();
};

struct RunReport {
  std::string command;
  Json config = Json::object();
  std::vector<std::uint64_t> seeds;
  std::vector<double> losses;
  std::vector<double> divergence;
  Json counters = Json::object();
  Json timings = Json::object();
  std::vector<std::pair<std::string, Verdict>> verdicts;

  bool all_passed() const {
    for (const auto& [name, v] : verdicts) {
      if (!v.passed) return false;
    }
    return true;
  }

  void set_counters(const OpCounters& ops) {
    counters["encoding_fwd_dense"] = ops.encoding_fwd_dense;
    counters["encoding_fwd_sparse"] = ops.encoding_fwd_sparse;
    counters["encoding_param_updates"] = ops.encoding_param_updates;
    counters["downstream_multiply_adds"] = ops.downstream_multiply_adds;
  }

  Json to_json() const {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = command;
    j["config"] = config;
    j["seeds"] = seeds;
    j["losses"] = losses;
    j["divergence"] = divergence;
    j["counters"] = counters;
    j["timings"] = timings;
    Json v = Json::object();
    for (const auto& [name, verdict] : verdicts) {
      Json entry;
      entry["passed"] = verdict.passed;
      for (const auto& [key, value] : verdict.detail.items()) entry[key] = value;
      v[name] = std::move(entry);
    }
    j["verdicts"] = std::move(v);
    return j;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

inline void write_report(const std::string& path, const RunReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << report.dump();
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

/// Schema violations, empty when the document is valid.
inline std::vector<std::string> validate_report(const Json& j, bool strict = true) {
  std::vector<std::string> errors;
  if (!j.is_object()) return {"report is not a JSON object"};

  auto require = [&](const char* key, auto&& check, const char* type) {
    if (!j.contains(key)) {
      errors.push_back(std::string("missing key '") + key + "'");
    } else if (!check(j.at(key))) {
      errors.push_back(std::string("key '") + key + "' is not " + type);
    }
  };
  auto number_array = [](const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v) {
      if (!e.is_number()) return false;
    }
    return true;
  };
  auto uint_array = [](const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v) {
      if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<std::int64_t>() >= 0)) {
        return false;
      }
    }
    return true;
  };

  require("schema_version",
          [](const Json& v) { return v.is_number_integer() && v.get<int>() == kReportSchemaVersion; },
          "the supported schema version");
  require("command", [](const Json& v) { return v.is_string(); }, "a string");
  require("config", [](const Json& v) { return v.is_object(); }, "an object");
  require("seeds", uint_array, "an array of unsigned integers");
  require("losses", number_array, "an array of numbers");
  require("divergence", number_array, "an array of numbers");
  require("counters",
          [](const Json& v) {
            if (!v.is_object()) return false;
            for (const auto& [k, e] : v.items()) {
              if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<std::int64_t>() >= 0)) {
                return false;
              }
            }
            return true;
          },
          "an object of unsigned integers");
  require("timings",
          [](const Json& v) {
            if (!v.is_object()) return false;
            for (const auto& [k, e] : v.items()) {
              if (!e.is_number()) return false;
            }
            return true;
          },
          "an object of numbers");
  require("verdicts",
          [](const Json& v) {
            if (!v.is_object()) return false;
            for (const auto& [k, e] : v.items()) {
              if (!e.is_object() || !e.contains("passed") || !e.at("passed").is_boolean()) {
                return false;
              }
            }
            return true;
          },
          "an object of {passed: bool, ...} entries");

  if (strict) {
    static const std::vector<std::string> known = {
        "schema_version", "command", "config", "seeds", "losses",
        "divergence", "counters", "timings", "verdicts"};
    for (const auto& [key, value] : j.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        errors.push_back("unknown key '" + key + "'");
      }
    }
  }
  return errors;
}

}  // namespace augbin
