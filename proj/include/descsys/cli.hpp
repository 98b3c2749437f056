#pragma once

// JSON system files and machine-readable reports for the descsys tool.
//
// A system file is one JSON object:
//   "F", "G", "B"   matrices, arrays of rows of rational strings ("3", "-7/2")
//   "y0_p"          initial slow state (canonical coordinates), optional
//   "yM_q"          terminal fast state (canonical coordinates), optional
//   "inputs"        [V_0, ..., V_{M-1}], each an array of r rationals, optional
//   "M"             horizon, optional (defaults to the number of inputs)
//   "target"        canonical-coordinate state, optional
//   "k1"            synthesis time, optional
//   "note"          free text, ignored
// JSON integers are accepted wherever a rational string is.

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "descsys/descsys.hpp"

namespace descsys::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kIrregular = 3,
  kMissingData = 4,
  kUnattainable = 5,
  kBadHorizon = 6,
};

struct SystemFile {
  DescriptorSystem system;
  std::optional<RMatrix> initial_slow;
  std::optional<RMatrix> terminal_fast;
  std::optional<InputSequence> inputs;
  std::optional<std::size_t> horizon;
  std::optional<RMatrix> target;
  std::optional<std::size_t> k1;
  std::string note;
};

inline Rational parse_scalar(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational::parse(j.dump());
  throw ParseError("expected a rational string or integer, got " + j.dump());
}

inline RMatrix parse_matrix(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw ParseError(name + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw ParseError(name + ": row " + std::to_string(i) + " is not an array");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) throw ParseError(name + ": rows have different lengths");
  }
  RMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      try {
        m(i, c) = parse_scalar(j[i][c]);
      } catch (const ParseError& e) {
        throw ParseError(name + "[" + std::to_string(i) + "][" + std::to_string(c) + "]: " + e.what());
      }
    }
  }
  return m;
}

inline RMatrix parse_column(const json& j, const std::string& name) {
  if (!j.is_array()) throw ParseError(name + ": expected an array");
  RMatrix v(j.size(), 1);
  for (std::size_t i = 0; i < j.size(); ++i) {
    try {
      v(i, 0) = parse_scalar(j[i]);
    } catch (const ParseError& e) {
      throw ParseError(name + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return v;
}

inline std::size_t parse_count(const json& j, const std::string& name) {
  if (!j.is_number_unsigned()) throw ParseError(name + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

inline SystemFile parse_system_file(const json& doc) {
  if (!doc.is_object()) throw ParseError("system file must be a JSON object");
  for (const char* key : {"F", "G", "B"}) {
    if (!doc.contains(key)) throw ParseError(std::string("missing required field ") + key);
  }
  std::optional<DescriptorSystem> sys;
  try {
    sys.emplace(parse_matrix(doc["F"], "F"), parse_matrix(doc["G"], "G"), parse_matrix(doc["B"], "B"));
  } catch (const DimensionMismatch& e) {
    throw ParseError(e.what());
  }
  SystemFile f{std::move(*sys), {}, {}, {}, {}, {}, {}, {}};
  const std::size_t m = f.system.state_dim();
  const std::size_t r = f.system.input_dim();

  if (doc.contains("y0_p")) f.initial_slow = parse_column(doc["y0_p"], "y0_p");
  if (doc.contains("yM_q")) f.terminal_fast = parse_column(doc["yM_q"], "yM_q");
  if (doc.contains("inputs")) {
    const json& arr = doc["inputs"];
    if (!arr.is_array()) throw ParseError("inputs: expected an array");
    InputSequence inputs;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string name = "inputs[" + std::to_string(k) + "]";
      RMatrix v = arr[k].is_array() ? parse_column(arr[k], name)
                                    : RMatrix::column({parse_scalar(arr[k])});
      if (v.rows() != r) throw ParseError(name + ": expected " + std::to_string(r) + " entries");
      inputs.push_back(std::move(v));
    }
    f.inputs = std::move(inputs);
  }
  if (doc.contains("M")) f.horizon = parse_count(doc["M"], "M");
  if (f.inputs && !f.horizon) f.horizon = f.inputs->size();
  if (f.inputs && f.horizon && *f.horizon != f.inputs->size()) {
    throw ParseError("M = " + std::to_string(*f.horizon) + " but " +
                     std::to_string(f.inputs->size()) + " inputs given");
  }
  if (doc.contains("target")) {
    f.target = parse_column(doc["target"], "target");
    if (f.target->rows() != m) throw ParseError("target: expected " + std::to_string(m) + " entries");
  }
  if (doc.contains("k1")) f.k1 = parse_count(doc["k1"], "k1");
  if (doc.contains("note") && doc["note"].is_string()) f.note = doc["note"].get<std::string>();
  return f;
}

inline SystemFile load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_system_file(doc);
}

inline json to_json(const RMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json column_to_json(const RMatrix& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(v(i, 0).to_string());
  return out;
}

inline json inputs_to_json(const InputSequence& inputs) {
  json out = json::array();
  for (const auto& v : inputs) out.push_back(column_to_json(v));
  return out;
}

/// Basis columns are listed one per entry of "basis".
inline json to_json(const Subspace& s) {
  json basis = json::array();
  for (std::size_t j = 0; j < s.dim(); ++j) basis.push_back(column_to_json(s.basis().col(j)));
  return {{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", std::move(basis)}};
}

struct Outcome {
  int exit_code = kOk;
  json report;
  std::string summary;  ///< human-readable, for --verbose
};

namespace detail {

inline json dims(const QWDecomposition& dec) {
  return {{"p", dec.slow_dim}, {"q", dec.fast_dim}, {"q_star", dec.nilpotency_index}};
}

template <typename T>
const T& require(const std::optional<T>& v, const char* field) {
  if (!v) throw MissingData(std::string("field '") + field + "' is required for this command");
  return *v;
}

inline BoundaryData boundary(const SystemFile& f) {
  return {require(f.initial_slow, "y0_p"), require(f.terminal_fast, "yM_q"), require(f.horizon, "M")};
}

inline void require_boundary_shape(const BoundaryData& bd, const QWDecomposition& dec) {
  if (bd.initial_slow.rows() != dec.slow_dim) {
    throw DimensionMismatch("y0_p must have p = " + std::to_string(dec.slow_dim) + " entries");
  }
  if (bd.terminal_fast.rows() != dec.fast_dim) {
    throw DimensionMismatch("yM_q must have q = " + std::to_string(dec.fast_dim) + " entries");
  }
}

}  // namespace detail

inline Outcome cmd_check(const SystemFile& f) {
  const RMatrix& F = f.system.F();
  const RMatrix& G = f.system.G();
  const bool regular = is_regular(F, G);
  const auto degree = det_degree(F, G);
  Outcome o;
  o.report = {{"command", "check"}, {"regular", regular}, {"m", f.system.state_dim()},
              {"det_degree", degree ? json(*degree) : json(nullptr)}};
  o.summary = std::string("pencil is ") + (regular ? "regular" : "singular") +
              (degree ? ", deg det(sF-G) = " + std::to_string(*degree) : "");
  return o;
}

inline Outcome cmd_decompose(const SystemFile& f) {
  const QWDecomposition dec = decompose(f.system);
  const DecompositionCheck chk = check_decomposition(f.system, dec);
  Outcome o;
  o.report = detail::dims(dec);
  o.report["command"] = "decompose";
  o.report["P"] = to_json(dec.P);
  o.report["Q"] = to_json(dec.Q);
  o.report["A_p"] = to_json(dec.slow_dynamics);
  o.report["N"] = to_json(dec.fast_nilpotent);
  o.report["B_p"] = to_json(dec.slow_input);
  o.report["B_q"] = to_json(dec.fast_input);
  o.report["verified"] = {{"PFQ", chk.fast_block_identity}, {"PGQ", chk.slow_block_identity},
                          {"PB", chk.input_split}, {"nilpotency", chk.nilpotency}};
  std::ostringstream s;
  s << "p = " << dec.slow_dim << ", q = " << dec.fast_dim << ", q* = " << dec.nilpotency_index
    << "\nA_p = " << dec.slow_dynamics << "\nN = " << dec.fast_nilpotent;
  o.summary = s.str();
  return o;
}

inline Outcome cmd_simulate(const SystemFile& f) {
  const QWDecomposition dec = decompose(f.system);
  const BoundaryData bd = detail::boundary(f);
  const InputSequence& inputs = detail::require(f.inputs, "inputs");
  detail::require_boundary_shape(bd, dec);
  const Trajectory t = solve_finite(f.system, dec, bd, inputs);
  json steps = json::array();
  std::ostringstream s;
  for (std::size_t k = 0; k <= bd.horizon; ++k) {
    steps.push_back({{"k", k},
                     {"X", column_to_json(t.states[k])},
                     {"Y_p", column_to_json(t.slow_states[k])},
                     {"Y_q", column_to_json(t.fast_states[k])},
                     {"V", k < bd.horizon ? column_to_json(inputs[k]) : json(nullptr)}});
    s << "k = " << k << ": X = " << t.states[k].transpose() << "\n";
  }
  Outcome o;
  o.report = detail::dims(dec);
  o.report["command"] = "simulate";
  o.report["M"] = bd.horizon;
  o.report["steps"] = std::move(steps);
  o.report["verified"] = true;  // solve_finite throws otherwise
  o.summary = s.str();
  return o;
}

inline Outcome cmd_reach(const SystemFile& f) {
  const QWDecomposition dec = decompose(f.system);
  const ReachableSet r = reachable_from_zero(dec);
  Outcome o;
  o.report = detail::dims(dec);
  o.report["command"] = "reach";
  o.report["slow_part"] = to_json(r.slow_part);
  o.report["fast_part"] = to_json(r.fast_part);
  o.report["embedded"] = to_json(r.embedded);
  o.report["original_coords"] = to_json(r.original_coords);
  o.report["horizon_cap"] = reach_horizon(dec);
  o.summary = "reachable set from zero has dimension " + std::to_string(r.embedded.dim()) + " of " +
              std::to_string(dec.state_dim()) + " (slow " + std::to_string(r.slow_part.dim()) +
              ", fast " + std::to_string(r.fast_part.dim()) + ")";
  if (f.target) {
    try {
      const Witness w = witness_inputs(dec, *f.target);
      o.report["target"] = {{"reachable", true}, {"k", w.steps}, {"inputs", inputs_to_json(w.inputs)}};
    } catch (const NotReachable&) {
      o.report["target"] = {{"reachable", false}};
      o.exit_code = kUnattainable;
      o.summary += "\ntarget is not reachable";
    }
  }
  return o;
}

inline Outcome cmd_control(const SystemFile& f) {
  const QWDecomposition dec = decompose(f.system);
  const ControllabilityReport c = is_controllable(dec);
  Outcome o;
  o.report = detail::dims(dec);
  o.report["command"] = "control";
  o.report["slow_rank"] = c.slow_rank;
  o.report["fast_rank"] = c.fast_rank;
  o.report["slow_required"] = c.slow_required;
  o.report["fast_required"] = c.fast_required;
  o.report["controllable"] = c.controllable;
  o.report["slow_matrix"] = to_json(c.slow_matrix);
  o.report["fast_matrix"] = to_json(c.fast_matrix);
  o.summary = std::string(c.controllable ? "controllable" : "not controllable") + " (slow rank " +
              std::to_string(c.slow_rank) + "/" + std::to_string(c.slow_required) + ", fast rank " +
              std::to_string(c.fast_rank) + "/" + std::to_string(c.fast_required) + ")";
  return o;
}

inline Outcome cmd_synthesize(const SystemFile& f) {
  const QWDecomposition dec = decompose(f.system);
  const BoundaryData bd = detail::boundary(f);
  const RMatrix& target = detail::require(f.target, "target");
  detail::require_boundary_shape(bd, dec);
  const SynthesisResult s = synthesize(dec, bd, target, f.k1);
  Outcome o;
  o.report = detail::dims(dec);
  o.report["command"] = "synthesize";
  o.report["M"] = bd.horizon;
  o.report["k1"] = s.k1;
  o.report["inputs"] = inputs_to_json(s.inputs);
  o.report["achieved"] = column_to_json(s.achieved);
  o.report["achieved_original"] = column_to_json(dec.Q * s.achieved);
  o.summary = "target reached at k1 = " + std::to_string(s.k1);
  return o;
}

inline Outcome cmd_initreach(const SystemFile& f) {
  const QWDecomposition dec = decompose(f.system);
  const RMatrix& terminal = detail::require(f.terminal_fast, "yM_q");
  const std::size_t horizon = detail::require(f.horizon, "M");
  if (terminal.rows() != dec.fast_dim) {
    throw DimensionMismatch("yM_q must have q = " + std::to_string(dec.fast_dim) + " entries");
  }
  const auto slices = initial_reachable_set(dec, terminal, horizon);
  json sets = json::array();
  bool all_full = true;
  for (const auto& s : slices) {
    all_full = all_full && s.slow_full;
    sets.push_back({{"k", s.time},
                    {"slow", to_json(s.slow)},
                    {"slow_full", s.slow_full},
                    {"fast", {{"offset", column_to_json(s.fast.offset())},
                              {"directions", to_json(s.fast.directions())}}}});
  }
  Outcome o;
  o.report = detail::dims(dec);
  o.report["command"] = "initreach";
  o.report["M"] = horizon;
  o.report["slow_full_all"] = all_full;
  o.report["sets"] = std::move(sets);
  o.summary = std::to_string(slices.size()) + " time slices; slow factor " +
              (all_full ? "is the full slow space throughout" : "is not always full");
  if (f.target) {
    const auto when = initial_reachable_time(slices, *f.target);
    o.report["target"] = {{"reachable", when.has_value()}, {"k", when ? json(*when) : json(nullptr)}};
    if (!when) o.exit_code = kUnattainable;
  }
  return o;
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check", "decompose", "simulate", "reach",
                                              "control", "synthesize", "initreach"};
  return names;
}

/// Runs one subcommand on a system file, mapping library errors to exit codes.
/// Failures still produce a JSON report of the form {"command", "error", "message"}.
inline Outcome run_command(const std::string& command, const std::string& path) {
  auto failure = [&](int code, const char* kind, const std::exception& e) {
    Outcome o;
    o.exit_code = code;
    o.report = {{"command", command}, {"error", kind}, {"message", e.what()}};
    o.summary = std::string(kind) + ": " + e.what();
    return o;
  };
  try {
    const SystemFile f = load_system_file(path);
    if (command == "check") return cmd_check(f);
    if (command == "decompose") return cmd_decompose(f);
    if (command == "simulate") return cmd_simulate(f);
    if (command == "reach") return cmd_reach(f);
    if (command == "control") return cmd_control(f);
    if (command == "synthesize") return cmd_synthesize(f);
    if (command == "initreach") return cmd_initreach(f);
    throw ParseError("unknown command '" + command + "'");
  } catch (const ParseError& e) {
    return failure(kParse, "ParseError", e);
  } catch (const DimensionMismatch& e) {
    return failure(kParse, "DimensionMismatch", e);
  } catch (const IrregularPencil& e) {
    return failure(kIrregular, "IrregularPencil", e);
  } catch (const MissingData& e) {
    return failure(kMissingData, "MissingData", e);
  } catch (const NotAchievable& e) {
    return failure(kUnattainable, "NotAchievable", e);
  } catch (const NotReachable& e) {
    return failure(kUnattainable, "NotReachable", e);
  } catch (const BadHorizon& e) {
    return failure(kBadHorizon, "BadHorizon", e);
  } catch (const Error& e) {
    return failure(kInternal, "InternalError", e);
  }
}

}  // namespace descsys::cli
