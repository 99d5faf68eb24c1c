#pragma once

// JSON (de)serialization for the external file formats. Index sets and
// paving assignments are 1-based on the wire (matching the written
// conventions) and 0-based in memory.
//
// Matrix file:   {"n": int, "mode": "exact"|"float",
//                 "entries": [[[re,im],...],...]}
//                re/im are strings in exact mode ("1/2", "-0.25") and
//                numbers in float mode.
// Polynomial:    {"coeffs": ["c0","c1",...]} ascending degree.
// Measure:       {"n": int, "atoms": [{"set":[...], "w": string}]}.

#include "chir/bound_report.hpp"
#include "chir/matrix.hpp"
#include "chir/scalars.hpp"
#include "chir/stability.hpp"
#include "chir/unipoly.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace chir {

using nlohmann::json;

struct MatrixInput {
  bool exact = true;
  MatQ q;  // valid when exact
  MatD d;  // valid when !exact

  int n() const { return exact ? q.n : d.n; }
  MatQ as_exact() const { return exact ? q : lift(d); }
  MatD as_float() const { return exact ? to_float(q) : d; }
};

inline MatrixInput matrix_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("mode") || !j.contains("entries"))
    throw std::invalid_argument("matrix json: need n, mode, entries");
  MatrixInput in;
  const int n = j.at("n").get<int>();
  if (n < 0 || n > 31) throw std::invalid_argument("matrix json: 0 <= n <= 31");
  std::string mode = j.at("mode").get<std::string>();
  const auto& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("matrix json: row count");
  auto cell = [&](const json& e, int part) -> const json& {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("matrix json: entry shape");
    return e[part];
  };
  if (mode == "exact") {
    in.exact = true;
    in.q = MatQ(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw std::invalid_argument("matrix json: column count");
      for (int k = 0; k < n; ++k)
        in.q.at(i, k) = CRat(parse_rational(cell(rows[i][k], 0).get<std::string>()),
                             parse_rational(cell(rows[i][k], 1).get<std::string>()));
    }
    if (!is_hermitian(in.q)) throw std::invalid_argument("matrix json: not hermitian (exact)");
  } else if (mode == "float") {
    in.exact = false;
    in.d = MatD(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw std::invalid_argument("matrix json: column count");
      for (int k = 0; k < n; ++k) {
        double re = cell(rows[i][k], 0).get<double>();
        double im = cell(rows[i][k], 1).get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
          throw std::invalid_argument("matrix json: non-finite entry");
        in.d.at(i, k) = CDbl(re, im);
      }
    }
    if (!is_hermitian(in.d, 1e-12)) throw std::invalid_argument("matrix json: not hermitian (float)");
  } else {
    throw std::invalid_argument("matrix json: mode must be exact or float");
  }
  return in;
}

inline MatrixInput matrix_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open matrix file: " + path);
  json j;
  f >> j;
  return matrix_from_json(j);
}

inline json matrix_to_json(const MatQ& m) {
  json rows = json::array();
  for (int i = 0; i < m.n; ++i) {
    json row = json::array();
    for (int k = 0; k < m.n; ++k)
      row.push_back({format_rational(m.at(i, k).re), format_rational(m.at(i, k).im)});
    rows.push_back(row);
  }
  return json{{"n", m.n}, {"mode", "exact"}, {"entries", rows}};
}

inline json matrix_to_json(const MatD& m) {
  json rows = json::array();
  for (int i = 0; i < m.n; ++i) {
    json row = json::array();
    for (int k = 0; k < m.n; ++k) row.push_back({m.at(i, k).re, m.at(i, k).im});
    rows.push_back(row);
  }
  return json{{"n", m.n}, {"mode", "float"}, {"entries", rows}};
}

inline json unipoly_to_json(const UniPoly<Rat>& p) {
  json c = json::array();
  for (const auto& v : p.c) c.push_back(format_rational(v));
  return json{{"coeffs", c}};
}

inline json unipoly_to_json(const UniPoly<double>& p) {
  json c = json::array();
  for (double v : p.c) c.push_back(v);
  return json{{"coeffs", c}};
}

inline UniPoly<Rat> unipoly_from_json(const json& j) {
  UniPoly<Rat> p;
  for (const auto& v : j.at("coeffs")) p.c.push_back(parse_rational(v.get<std::string>()));
  p.trim();
  return p;
}

inline json measure_to_json(const DiscreteMeasure& mu) {
  json atoms = json::array();
  for (auto& [mask, w] : mu.weights) {
    json set = json::array();
    for (int i = 0; i < mu.n; ++i)
      if (mask >> i & 1u) set.push_back(i + 1);  // 1-based on the wire
    atoms.push_back({{"set", set}, {"w", format_rational(w)}});
  }
  return json{{"n", mu.n}, {"atoms", atoms}};
}

inline json bound_report_to_json(const BoundReport& r) {
  json j{{"r", r.r}, {"delta", r.delta}, {"b_star", r.b_star}, {"bound", r.bound}};
  if (r.certified_max_root) j["certified_max_root"] = *r.certified_max_root;
  return j;
}

inline json index_set_to_json(const std::vector<int>& s) {
  json a = json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

}  // namespace chir
