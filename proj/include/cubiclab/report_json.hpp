#pragma once
#ifndef CUBICLAB_REPORT_JSON_HPP
#define CUBICLAB_REPORT_JSON_HPP

#include <json.hpp>

#include "cubiclab/circle.hpp"
#include "cubiclab/counting.hpp"
#include "cubiclab/covering.hpp"
#include "cubiclab/davenport.hpp"

namespace cubiclab::json {

using nlohmann::ordered_json;

inline constexpr int kSchema = 1;

/// Top-level document: {"schema": 1, "op": ..., ...}.
inline ordered_json document(std::string_view op) {
  ordered_json j;
  j["schema"] = kSchema;
  j["op"] = op;
  return j;
}

template <class T>
ordered_json matrix(const Matrix<T>& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if constexpr (is_exact_v<T>) row.push_back(scalar_str(m(i, k)));
      else row.push_back(m(i, k));
    }
    rows.push_back(row);
  }
  return rows;
}

template <Scalar S>
ordered_json vector(const Vector<S>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) {
    if constexpr (is_exact_v<S>) out.push_back(scalar_str(x));
    else out.push_back(x);
  }
  return out;
}

inline ordered_json dyadic(const DyadicClass& c) {
  return {{"label", c.label()}, {"k", c.k}, {"e", c.e}, {"E_last", c.E_last}};
}

inline ordered_json class_table(const ClassTable& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& [cls, row] : t.rows) {
    auto r = dyadic(cls);
    r["points"] = row.points;
    r["nh_sum"] = row.nh_sum;
    rows.push_back(r);
  }
  return rows;
}

inline ordered_json pigeonhole(const PigeonholeResult& p) {
  return {{"branch", to_string(p.branch)}, {"class", dyadic(p.selected)}, {"n_aux", p.n_aux},
          {"L", p.log_term},           {"class_points", p.class_points}, {"lhs", p.lhs},
          {"kappa", p.kappa},          {"rhs", p.rhs},                   {"verified", p.verified()}};
}

inline ordered_json cover(const CoverWitness& w) {
  ordered_json boxes = ordered_json::array();
  for (const auto& b : w.boxes) boxes.push_back({{"center", b.center}, {"lo", b.lo}, {"hi", b.hi}, {"V", b.v_coords}});
  return {{"class", dyadic(w.cls)},
          {"mode", to_string(w.mode)},
          {"epsilon", w.epsilon},
          {"class_points", w.class_points},
          {"box_count", w.boxes.size()},
          {"bound_expr", w.bound_expr},
          {"count_ratio", w.count_ratio()},
          {"max_side_ratio", w.max_side_ratio},
          {"verified", w.verified},
          {"boxes", boxes}};
}

inline ordered_json trichotomy(const TrichotomyResult& r) {
  ordered_json j{{"branch", to_string(r.branch)}};
  if (r.cover) j["cover"] = cover(*r.cover);
  if (r.failure)
    j["failure"] = {{"point", r.failure->point},
                    {"reason", r.failure->reason},
                    {"measured", r.failure->measured},
                    {"required", r.failure->required}};
  if (r.branch == TrichotomyBranch::II) {
    j["b"] = r.b;
    j["x0"] = r.x0;
  }
  if (r.X.cols() > 0) j["X"] = matrix(r.X);
  if (r.X_exact) j["X_exact"] = matrix(*r.X_exact);
  j["certified"] = r.certified;
  j["required"] = r.required;
  j["measured"] = r.measured;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline ordered_json hy(const HyReport& r) {
  ordered_json j{{"trials", r.trials}, {"passed", r.passed}, {"vanishing", r.vanishing},
                 {"entries", r.entries}, {"pass", r.pass()}};
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  return j;
}

template <Scalar S>
ordered_json davenport(const DavenportSystem<S>& d) {
  ordered_json ys = ordered_json::array();
  for (const auto& y : d.y) ys.push_back(vector(y));
  ordered_json j{{"n", d.n},
                 {"b", d.b},
                 {"row_perm", d.row_perm},
                 {"col_perm", d.col_perm},
                 {"minor_rows", d.minor_rows},
                 {"minor_cols", d.minor_cols},
                 {"delta", scalar_str(d.delta)},
                 {"y", ys}};
  if (d.completed) {
    ordered_json Y = ordered_json::array();
    for (const auto& v : d.Y) Y.push_back(vector(v));
    j["Y"] = Y;
    j["Q"] = matrix(d.Q);
    j["det_Q"] = scalar_str(d.det_Q);
    j["sign"] = d.sign;
    j["q_entries_ok"] = d.q_entries_ok;
    j["det_ok"] = d.det_ok;
    j["gamma_bound"] = d.gamma_bound;
  }
  return j;
}

inline ordered_json pair(const SubspacePair& p) {
  ordered_json j{{"source", p.source}, {"b", p.b},         {"C", p.C},
                 {"kappa", p.kappa},   {"measured", p.measured}, {"certified", p.certified()},
                 {"verified", p.verified()}, {"dim_sum", p.dim_sum()}, {"X", matrix(p.X)}, {"Y", matrix(p.Y)}};
  if (p.X_exact) j["X_exact"] = matrix(*p.X_exact);
  if (p.Y_exact) j["Y_exact"] = matrix(*p.Y_exact);
  return j;
}

template <Scalar S>
ordered_json dichotomy(const DichotomyResult<S>& r) {
  ordered_json j{{"kind", to_string(r.kind)},
                 {"pigeonhole", pigeonhole(r.pigeon)},
                 {"class", dyadic(r.cls)},
                 {"truncated", r.truncated},
                 {"trichotomy", trichotomy(r.tri)}};
  if (r.bound)
    j["bound"] = {{"n_aux", r.bound->n_aux}, {"kappa", r.bound->kappa}, {"rhs", r.bound->rhs}, {"within", r.bound->within()}};
  if (r.pair) j["pair"] = pair(*r.pair);
  if (r.davenport) j["davenport"] = davenport(*r.davenport);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline ordered_json candidates(const SingularCandidates& s) {
  ordered_json pts = ordered_json::array();
  for (const auto& p : s.points) {
    ordered_json q{{"y", p.y}, {"residual", p.residual}, {"exact_zero", p.exact_zero}};
    if (p.y_exact) q["y_exact"] = vector(*p.y_exact);
    pts.push_back(q);
  }
  return {{"equations", s.equations}, {"complement", s.complement}, {"exact", s.exact}, {"points", pts}};
}

inline ordered_json series(const SeriesReport& r) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"p", row.p}, {"k", row.k}, {"sigma", scalar_str(row.sigma)}, {"primitive", row.primitive},
                    {"partial", row.partial}});
  ordered_json j{{"cutoff", r.cutoff}, {"estimate", r.estimate}, {"hasse_obstruction", r.hasse_obstruction}};
  if (r.hasse_obstruction) j["obstruction_prime"] = r.obstruction_prime;
  j["rows"] = rows;
  return j;
}

inline ordered_json integral(const IntegralReport& r) {
  return {{"epsilon", r.epsilon}, {"samples", r.samples},   {"seed", r.seed},         {"hits", r.hits},
          {"hits_half", r.hits_half}, {"J_eps", r.J_eps}, {"J_half", r.J_half},     {"estimate", r.estimate},
          {"stderr", r.stderr_},   {"degenerate", r.degenerate}};
}

inline ordered_json asymptotic(const AsymptoticReport& r) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"P", row.P}, {"N", row.N}, {"prediction", row.prediction}, {"ratio", row.ratio}});
  return {{"exponent", r.exponent}, {"series", series(r.series)}, {"integral", integral(r.integral)}, {"rows", rows}};
}

}  // namespace cubiclab::json

#endif  // CUBICLAB_REPORT_JSON_HPP
