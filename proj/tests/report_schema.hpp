#pragma once

// Structural checks of the JSON reports against the schema in README.md.

#include <string>
#include <vector>

#include "descsys/cli.hpp"

namespace descsys::testing {

using nlohmann::json;

class SchemaChecker {
 public:
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }

  void check(const json& report) {
    if (!report.is_object()) return fail("report", "not an object");
    if (!has_string(report, "command")) return;
    const std::string cmd = report["command"];
    if (report.contains("error")) {
      has_string(report, "error");
      has_string(report, "message");
      return;
    }
    if (cmd == "check") {
      has_bool(report, "regular");
      has_count(report, "m");
      if (!report.contains("det_degree") ||
          !(report["det_degree"].is_null() || report["det_degree"].is_number_unsigned())) {
        fail("det_degree", "must be a count or null");
      }
      return;
    }
    for (const char* k : {"p", "q", "q_star"}) has_count(report, k);
    if (cmd == "decompose") {
      for (const char* k : {"P", "Q", "A_p", "N", "B_p", "B_q"}) matrix(report, k);
      if (!report.contains("verified") || !report["verified"].is_object()) return fail("verified", "missing");
      for (const char* k : {"PFQ", "PGQ", "PB", "nilpotency"}) has_bool(report["verified"], k);
    } else if (cmd == "simulate") {
      has_count(report, "M");
      has_bool(report, "verified");
      if (!report.contains("steps") || !report["steps"].is_array()) return fail("steps", "missing");
      if (report["steps"].size() != report.value("M", 0u) + 1) fail("steps", "length must be M + 1");
      for (const auto& s : report["steps"]) {
        has_count(s, "k");
        for (const char* k : {"X", "Y_p", "Y_q"}) column(s, k);
        if (!s.contains("V") || !(s["V"].is_null() || is_column(s["V"]))) fail("V", "column or null");
      }
    } else if (cmd == "reach") {
      for (const char* k : {"slow_part", "fast_part", "embedded", "original_coords"}) subspace(report, k);
      has_count(report, "horizon_cap");
      if (report.contains("target")) {
        has_bool(report["target"], "reachable");
        if (report["target"].value("reachable", false)) {
          has_count(report["target"], "k");
          columns(report["target"], "inputs");
        }
      }
    } else if (cmd == "control") {
      for (const char* k : {"slow_rank", "fast_rank", "slow_required", "fast_required"}) has_count(report, k);
      has_bool(report, "controllable");
      matrix(report, "slow_matrix");
      matrix(report, "fast_matrix");
    } else if (cmd == "synthesize") {
      has_count(report, "M");
      has_count(report, "k1");
      columns(report, "inputs");
      column(report, "achieved");
      column(report, "achieved_original");
    } else if (cmd == "initreach") {
      has_count(report, "M");
      has_bool(report, "slow_full_all");
      if (!report.contains("sets") || !report["sets"].is_array()) return fail("sets", "missing");
      for (const auto& s : report["sets"]) {
        has_count(s, "k");
        subspace(s, "slow");
        has_bool(s, "slow_full");
        if (!s.contains("fast") || !s["fast"].is_object()) {
          fail("fast", "missing");
          continue;
        }
        column(s["fast"], "offset");
        subspace(s["fast"], "directions");
      }
      if (report.contains("target")) has_bool(report["target"], "reachable");
    } else {
      fail("command", "unknown command " + cmd);
    }
  }

 private:
  void fail(const std::string& key, const std::string& why) { problems.push_back(key + ": " + why); }

  static bool is_rational(const json& j) {
    if (!j.is_string()) return false;
    try {
      Rational::parse(j.get<std::string>());
      return true;
    } catch (const ParseError&) {
      return false;
    }
  }
  static bool is_column(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& e : j) {
      if (!is_rational(e)) return false;
    }
    return true;
  }

  bool has_string(const json& o, const char* k) {
    if (o.contains(k) && o[k].is_string()) return true;
    fail(k, "missing or not a string");
    return false;
  }
  void has_bool(const json& o, const char* k) {
    if (!o.contains(k) || !o[k].is_boolean()) fail(k, "missing or not a boolean");
  }
  void has_count(const json& o, const char* k) {
    if (!o.contains(k) || !o[k].is_number_unsigned()) fail(k, "missing or not a count");
  }
  void column(const json& o, const char* k) {
    if (!o.contains(k) || !is_column(o[k])) fail(k, "missing or not a column of rationals");
  }
  void columns(const json& o, const char* k) {
    if (!o.contains(k) || !o[k].is_array()) return fail(k, "missing or not an array");
    for (const auto& c : o[k]) {
      if (!is_column(c)) fail(k, "entry is not a column of rationals");
    }
  }
  void matrix(const json& o, const char* k) {
    if (!o.contains(k) || !o[k].is_array()) return fail(k, "missing or not an array");
    const json& m = o[k];
    for (const auto& row : m) {
      if (!is_column(row) || row.size() != m[0].size()) return fail(k, "rows must be equal-length rational arrays");
    }
  }
  void subspace(const json& o, const char* k) {
    if (!o.contains(k) || !o[k].is_object()) return fail(k, "missing subspace");
    const json& s = o[k];
    has_count(s, "ambient_dim");
    has_count(s, "dim");
    if (!s.contains("basis") || !s["basis"].is_array()) return fail(k, "basis missing");
    if (s["basis"].size() != s.value("dim", 0u)) fail(k, "basis size differs from dim");
    for (const auto& c : s["basis"]) {
      if (!is_column(c) || c.size() != s.value("ambient_dim", 0u)) fail(k, "bad basis column");
    }
  }
};

inline std::vector<std::string> schema_problems(const json& report) {
  SchemaChecker c;
  c.check(report);
  return c.problems;
}

}  // namespace descsys::testing
