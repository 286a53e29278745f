// Copyright 2026 The Shapley Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// File formats: JSON games, quota games, Shapley targets and solver output,
// plus CSV helpers. Parse failures throw FormatError naming the field.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "shapley_forge/game_model.hpp"
#include "shapley_forge/inverse_solver.hpp"

namespace shapley_forge {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(source + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path + ": cannot open file for writing");
  out << text;
  if (!out) throw FormatError(path + ": write failed");
}

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field '") + name + "'");
  return *it;
}

inline double real_field(const Json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError("field '" + where + "': expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError("field '" + where + "': not finite");
  return x;
}

inline std::int64_t int_field(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw FormatError("field '" + where + "': expected an integer");
  return v.get<std::int64_t>();
}

inline std::vector<double> real_array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError("field '" + where + "': expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(real_field(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline void check_n(const Json& j, std::size_t actual, const char* array_name) {
  if (!j.contains("n")) return;
  const auto n = int_field(j.at("n"), "n");
  if (n < 1 || static_cast<std::size_t>(n) != actual) {
    throw FormatError("field 'n' = " + std::to_string(n) + " but '" + array_name + "' has " +
                      std::to_string(actual) + " entries");
  }
}

}  // namespace detail

inline QuotaGame quota_from_json(const Json& j) {
  const Json& w = detail::field(j, "weights");
  if (!w.is_array()) throw FormatError("field 'weights': expected an array");
  std::vector<std::int64_t> weights;
  for (std::size_t i = 0; i < w.size(); ++i) {
    weights.push_back(detail::int_field(w[i], "weights[" + std::to_string(i) + "]"));
  }
  detail::check_n(j, weights.size(), "weights");
  const auto q = detail::int_field(detail::field(j, "quota"), "quota");
  try {
    return QuotaGame(std::move(weights), q);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

// Accepts either {"n", "weights", "threshold"} or a quota game
// {"n", "weights", "quota"}, which is encoded as an LTF.
inline VotingGame game_from_json(const Json& j) {
  if (j.is_object() && j.contains("quota") && !j.contains("threshold")) {
    return quota_to_ltf(quota_from_json(j));
  }
  auto weights = detail::real_array(detail::field(j, "weights"), "weights");
  detail::check_n(j, weights.size(), "weights");
  if (weights.empty()) throw FormatError("field 'weights': must not be empty");
  const double theta = detail::real_field(detail::field(j, "threshold"), "threshold");
  return VotingGame(std::move(weights), theta);
}

inline Json game_to_json(const VotingGame& g) {
  return Json{{"n", g.n()}, {"weights", g.weights()}, {"threshold", g.threshold()}};
}

struct TargetFile {
  std::vector<double> shapley;  // generalized convention
  std::string convention = "generalized";
};

// Standard (Shapley-Shubik) targets are doubled into the generalized scale.
inline TargetFile target_from_json(const Json& j) {
  TargetFile t;
  t.shapley = detail::real_array(detail::field(j, "shapley"), "shapley");
  detail::check_n(j, t.shapley.size(), "shapley");
  if (t.shapley.empty()) throw FormatError("field 'shapley': must not be empty");
  if (j.contains("convention")) {
    const Json& c = j.at("convention");
    if (!c.is_string()) throw FormatError("field 'convention': expected a string");
    t.convention = c.get<std::string>();
  }
  if (t.convention == "standard") {
    for (double& v : t.shapley) v *= 2.0;
  } else if (t.convention != "generalized") {
    throw FormatError("field 'convention': expected \"generalized\" or \"standard\", got \"" +
                      t.convention + "\"");
  }
  return t;
}

inline Json target_to_json(const std::vector<double>& generalized) {
  return Json{{"n", generalized.size()}, {"shapley", generalized}, {"convention", "generalized"}};
}

inline Json shapley_to_json(const ShapleyVector& s) {
  return Json{{"shapley", s.values}, {"convention", "generalized"}};
}

inline const char* to_string(SolveStatus s) {
  return s == SolveStatus::kSolved ? "solved" : "no-solution";
}

// Game fields (when solved) plus est_dshapley, status, guess and iterations.
inline Json solve_result_to_json(const SolveResult& r) {
  Json j = r.game ? game_to_json(*r.game) : Json::object();
  j["status"] = to_string(r.status);
  j["est_dshapley"] = r.game ? Json(r.est_dshapley) : Json(nullptr);
  j["guess"] = r.game ? Json{r.guess.f_star_0, r.guess.mean_corr} : Json(nullptr);
  j["iterations"] = r.boost_iterations;
  j["epsilon"] = r.epsilon;
  j["xi"] = r.xi;
  j["grid_points"] = r.grid_points;
  j["accepted_points"] = r.accepted_points;
  j["warnings"] = r.warnings;
  return j;
}

inline SolveResult solve_result_from_json(const Json& j) {
  SolveResult r;
  const Json& status = detail::field(j, "status");
  if (!status.is_string()) throw FormatError("field 'status': expected a string");
  const auto s = status.get<std::string>();
  if (s == "solved") {
    r.status = SolveStatus::kSolved;
    r.game = game_from_json(j);
    r.est_dshapley = detail::real_field(detail::field(j, "est_dshapley"), "est_dshapley");
    const auto guess = detail::real_array(detail::field(j, "guess"), "guess");
    if (guess.size() != 2) throw FormatError("field 'guess': expected [f0, mean]");
    r.guess = {guess[0], guess[1]};
  } else if (s != "no-solution") {
    throw FormatError("field 'status': expected \"solved\" or \"no-solution\", got \"" + s + "\"");
  }
  r.boost_iterations = detail::int_field(detail::field(j, "iterations"), "iterations");
  if (j.contains("epsilon")) r.epsilon = detail::real_field(j.at("epsilon"), "epsilon");
  if (j.contains("xi")) r.xi = detail::real_field(j.at("xi"), "xi");
  if (j.contains("grid_points")) r.grid_points = detail::int_field(j.at("grid_points"), "grid_points");
  if (j.contains("accepted_points")) {
    r.accepted_points = detail::int_field(j.at("accepted_points"), "accepted_points");
  }
  if (j.contains("warnings")) {
    for (const auto& w : j.at("warnings")) r.warnings.push_back(w.get<std::string>());
  }
  return r;
}

// %.17g: enough digits for every double to parse back to itself.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

// Splits one CSV line on commas; the formats here never quote fields.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace shapley_forge
