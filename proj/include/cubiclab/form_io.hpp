#pragma once
#ifndef CUBICLAB_FORM_IO_HPP
#define CUBICLAB_FORM_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cubiclab/forms.hpp"

namespace cubiclab {

/// Contents of a form file.
///
///     # comment
///     n 3
///     R 1
///     backend exact
///     form 1
///     1 1 1 : 1
///     1 1 2 : -3/2
///     form 2
///     2 2 2 : 0.25
///     box 1 : -1 1
///
/// Indices are 1-based and may be given in any order; repeated monomials add.
/// Values are integers, `p/q` rationals or decimals and are kept exactly, so
/// an exact file round-trips bit-for-bit. Optional `box i : lo hi` lines give
/// the per-coordinate box used by the circle-method counts (default [-1,1]).
struct FormFile {
  int n = 0;
  Backend backend = Backend::Exact;
  std::vector<ExactForm> forms;
  std::vector<std::pair<Rational, Rational>> box;  // empty = default

  int R() const { return static_cast<int>(forms.size()); }

  template <Scalar S>
  std::vector<CubicForm<S>> as() const {
    std::vector<CubicForm<S>> out;
    for (const auto& f : forms) {
      if constexpr (is_exact_v<S>) out.push_back(f);
      else out.push_back(f.template cast<double>());
    }
    return out;
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

inline FormFile parse_form_text(const std::string& text) {
  FormFile out;
  std::optional<int> declared_R;
  std::vector<std::map<Monomial, Rational>> coeffs;
  std::vector<std::optional<std::pair<Rational, Rational>>> box;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string line = detail::trim(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "n") {
      if (!(ls >> out.n) || out.n < 1) fail("bad n");
      box.assign(out.n, std::nullopt);
    } else if (head == "R") {
      int r = 0;
      if (!(ls >> r) || r < 1) fail("bad R");
      declared_R = r;
    } else if (head == "backend") {
      std::string b;
      ls >> b;
      out.backend = parse_backend(b);
    } else if (head == "form") {
      if (out.n == 0) fail("'form' before 'n'");
      coeffs.emplace_back();
    } else if (head == "box") {
      if (out.n == 0) fail("'box' before 'n'");
      int i = 0;
      std::string colon, lo, hi;
      if (!(ls >> i >> colon >> lo >> hi) || colon != ":") fail("expected 'box i : lo hi'");
      if (i < 1 || i > out.n) fail("box index out of range");
      Rational l = parse_rational(lo), h = parse_rational(hi);
      if (l > h) fail("empty box interval");
      box[i - 1] = std::make_pair(l, h);
    } else {
      if (out.n == 0) fail("coefficient before 'n'");
      if (coeffs.empty()) coeffs.emplace_back();  // single-form files may omit 'form 1'
      auto colon = line.find(':');
      if (colon == std::string::npos) fail("expected 'i j k : value'");
      std::istringstream idx(line.substr(0, colon));
      int i, j, k;
      std::string extra;
      if (!(idx >> i >> j >> k) || (idx >> extra)) fail("expected three indices");
      if (std::min({i, j, k}) < 1 || std::max({i, j, k}) > out.n) fail("index out of range");
      std::string value = detail::trim(line.substr(colon + 1));
      Rational v;
      try {
        v = parse_rational(value);
      } catch (const ParseError& e) {
        fail(e.what());
      }
      coeffs.back()[canonical(i - 1, j - 1, k - 1)] += v;
    }
  }
  if (out.n == 0) throw ParseError("missing 'n'");
  if (coeffs.empty()) throw ParseError("no forms");
  if (declared_R && *declared_R != int(coeffs.size()))
    throw ParseError("R = " + std::to_string(*declared_R) + " but " + std::to_string(coeffs.size()) +
                     " forms given");
  for (auto& c : coeffs) {
    std::erase_if(c, [](const auto& kv) { return sgn(kv.second) == 0; });
    out.forms.emplace_back(out.n, c);
  }
  if (std::any_of(box.begin(), box.end(), [](const auto& b) { return b.has_value(); })) {
    for (const auto& b : box) out.box.push_back(b.value_or(std::make_pair(Rational(-1), Rational(1))));
  }
  return out;
}

inline FormFile read_form_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open form file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_form_text(ss.str());
}

/// Canonical text serialization; parse_form_text(write_form_text(f)) == f.
inline std::string write_form_text(const FormFile& f) {
  std::ostringstream out;
  out << "n " << f.n << "\nR " << f.R() << "\nbackend " << to_string(f.backend) << "\n";
  for (std::size_t r = 0; r < f.forms.size(); ++r) {
    out << "form " << r + 1 << "\n";
    for (const auto& [m, v] : f.forms[r].coeffs())
      out << m[0] + 1 << ' ' << m[1] + 1 << ' ' << m[2] + 1 << " : " << v.get_str() << "\n";
  }
  for (std::size_t i = 0; i < f.box.size(); ++i)
    out << "box " << i + 1 << " : " << f.box[i].first.get_str() << ' ' << f.box[i].second.get_str() << "\n";
  return out.str();
}

}  // namespace cubiclab

#endif  // CUBICLAB_FORM_IO_HPP
