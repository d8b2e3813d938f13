#pragma once
#ifndef CUBICLAB_COUNTING_HPP
#define CUBICLAB_COUNTING_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "cubiclab/forms.hpp"
#include "cubiclab/minors.hpp"
#include "cubiclab/parallel.hpp"

namespace cubiclab {

/// STRICT counts ||H y|| < B, WEAK counts ||H y|| <= B.
enum class Strictness { Strict, Weak };

inline std::string_view to_string(Strictness s) { return s == Strictness::Strict ? "strict" : "weak"; }

struct CountReport {
  std::uint64_t count = 0;
  long B = 0;
  Strictness strictness = Strictness::Strict;
  std::map<std::string, std::uint64_t> breakdown;
};

namespace detail {

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

/// Per-coordinate bound |y_j| <= B * ||row j of H^{-1}||_1 from ||H y||_inf <= B,
/// with slack for the floating inverse. Returns B for every coordinate when H is
/// badly conditioned.
inline std::vector<long> inverse_shadow(const Eigen::MatrixXd& h, double limit, long B) {
  const Eigen::Index n = h.rows();
  std::vector<long> r(n, B);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h);
  const auto& s = svd.singularValues();
  if (n == 0 || s(0) == 0 || s(n - 1) < 1e-7 * s(0)) return r;
  const Eigen::MatrixXd inv = h.inverse();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double b = limit * inv.row(j).cwiseAbs().sum() * (1 + 1e-6) + 1;
    if (b < double(B)) r[j] = long(std::floor(b));
  }
  return r;
}

/// Counts y in Z^n with |y_j| <= range_j and |(G y)_i| <= L for every row,
/// G integral. Coordinates are fixed in order; the last is solved as an
/// interval, earlier ones are pruned by the largest remaining contribution.
class IntegerBoxCounter {
 public:
  IntegerBoxCounter(int n, std::vector<long> g, long limit, std::vector<long> range)
      : n_(n), g_(std::move(g)), limit_(limit), range_(std::move(range)), rem_(std::size_t(n + 1) * n, 0) {
    for (int t = n_ - 1; t >= 0; --t)
      for (int i = 0; i < n_; ++i) rem_[t * n_ + i] = rem_[(t + 1) * n_ + i] + std::labs(at(i, t)) * range_[t];
  }

  std::uint64_t count() {
    if (limit_ < 0) return 0;
    std::vector<long> s(n_, 0);
    return recurse(0, s);
  }

 private:
  long at(int i, int j) const { return g_[std::size_t(i) * n_ + j]; }

  std::uint64_t recurse(int t, std::vector<long>& s) {
    for (int i = 0; i < n_; ++i)
      if (std::labs(s[i]) - rem_[t * n_ + i] > limit_) return 0;
    if (t == n_ - 1) return last(s);
    std::uint64_t total = 0;
    for (long y = -range_[t]; y <= range_[t]; ++y) {
      for (int i = 0; i < n_; ++i) s[i] += at(i, t) * y;
      total += recurse(t + 1, s);
      for (int i = 0; i < n_; ++i) s[i] -= at(i, t) * y;
    }
    return total;
  }

  std::uint64_t last(const std::vector<long>& s) const {
    const int t = n_ - 1;
    long lo = -range_[t], hi = range_[t];
    for (int i = 0; i < n_ && lo <= hi; ++i) {
      const long g = at(i, t);
      if (g == 0) {
        if (std::labs(s[i]) > limit_) return 0;
        continue;
      }
      long a, b;
      if (g > 0) {
        a = ceil_div(-limit_ - s[i], g);
        b = floor_div(limit_ - s[i], g);
      } else {
        a = ceil_div(limit_ - s[i], g);
        b = floor_div(-limit_ - s[i], g);
      }
      lo = std::max(lo, a);
      hi = std::min(hi, b);
    }
    return hi >= lo ? std::uint64_t(hi - lo + 1) : 0;
  }

  int n_;
  std::vector<long> g_;
  long limit_;
  std::vector<long> range_;
  std::vector<long> rem_;
};

/// Floating counterpart: the predicate is |sum_j h_ij y_j| (<|<=) B with the
/// sum accumulated left to right in double. Pruning keeps a relative slack so
/// it never discards a point the predicate accepts.
class FloatBoxCounter {
 public:
  FloatBoxCounter(const Matrix<double>& h, long B, Strictness st, std::vector<long> range)
      : n_(int(h.rows())), h_(h), B_(double(B)), st_(st), range_(std::move(range)),
        rem_(std::size_t(n_ + 1) * n_, 0.0) {
    for (int t = n_ - 1; t >= 0; --t)
      for (int i = 0; i < n_; ++i)
        rem_[t * n_ + i] = rem_[(t + 1) * n_ + i] + std::fabs(h_(i, t)) * double(range_[t]);
  }

  std::uint64_t count() {
    std::vector<double> s(n_, 0.0);
    return recurse(0, s);
  }

  bool accept(double v) const { return st_ == Strictness::Strict ? std::fabs(v) < B_ : std::fabs(v) <= B_; }

 private:
  std::uint64_t recurse(int t, std::vector<double>& s) {
    for (int i = 0; i < n_; ++i)
      if (std::fabs(s[i]) - rem_[t * n_ + i] > B_ * (1 + 1e-9) + 1e-9 * rem_[t * n_ + i]) return 0;
    if (t == n_ - 1) return last(s);
    std::uint64_t total = 0;
    std::vector<double> next(n_);
    for (long y = -range_[t]; y <= range_[t]; ++y) {
      for (int i = 0; i < n_; ++i) next[i] = s[i] + h_(i, t) * double(y);
      total += recurse(t + 1, next);
    }
    return total;
  }

  bool ok_last(const std::vector<double>& s, long y) const {
    for (int i = 0; i < n_; ++i)
      if (!accept(s[i] + h_(i, n_ - 1) * double(y))) return false;
    return true;
  }

  std::uint64_t last(const std::vector<double>& s) const {
    const int t = n_ - 1;
    double lo = double(-range_[t]), hi = double(range_[t]);
    for (int i = 0; i < n_; ++i) {
      const double g = h_(i, t);
      if (g == 0) {
        if (!accept(s[i])) return 0;
        continue;
      }
      double a = (-B_ - s[i]) / g, b = (B_ - s[i]) / g;
      if (a > b) std::swap(a, b);
      lo = std::max(lo, a);
      hi = std::min(hi, b);
    }
    if (hi < lo - 2) return 0;
    // endpoints are approximate; settle them with the exact predicate
    long a = std::max(-range_[t], long(std::ceil(lo)) - 1);
    long b = std::min(range_[t], long(std::floor(hi)) + 1);
    while (a <= b && !ok_last(s, a)) ++a;
    while (b >= a && !ok_last(s, b)) --b;
    return b >= a ? std::uint64_t(b - a + 1) : 0;
  }

  int n_;
  Matrix<double> h_;
  double B_;
  Strictness st_;
  std::vector<long> range_;
  std::vector<double> rem_;
};

inline void check_B(long B) {
  if (B < 1) throw OutOfRange("B must be a positive integer");
}

}  // namespace detail

/// N_H(B): the number of y in Z^n with ||y||_inf <= B and ||H y||_inf < B
/// (STRICT) or <= B (WEAK). Exact for rational H; for double H the predicate is
/// evaluated in double arithmetic.
template <Scalar S>
CountReport count_NH(const Matrix<S>& h, long B, Strictness st = Strictness::Weak) {
  detail::check_B(B);
  if (!h.square()) throw DimensionMismatch("count_NH needs a square matrix");
  const int n = int(h.rows());
  CountReport rep{0, B, st, {}};
  if (n == 0) {
    rep.count = 1;
    return rep;
  }
  if constexpr (is_exact_v<S>) {
    Integer den = 1;
    for (const auto& v : h.data()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<long> g;
    Integer gmax = 0;
    for (const auto& v : h.data()) {
      Integer e = v.get_num() * (den / v.get_den());
      if (!e.fits_slong_p()) throw Overflow("matrix entries too large for counting");
      g.push_back(e.get_si());
      if (abs(e) > gmax) gmax = abs(e);
    }
    Integer lim = den * B;
    if (st == Strictness::Strict) lim -= 1;
    if (gmax * n * B > Integer(1L << 62) / 2 || lim > Integer(1L << 62))
      throw Overflow("matrix entries too large for counting");
    const long limit = lim.get_si();
    const Eigen::MatrixXd hd = to_eigen(h);
    auto range = detail::inverse_shadow(hd, double(B), B);
    rep.count = detail::IntegerBoxCounter(n, std::move(g), limit, std::move(range)).count();
  } else {
    for (double v : h.data())
      if (!std::isfinite(v)) throw NonFinite("matrix has non-finite entries");
    auto range = detail::inverse_shadow(to_eigen(h), double(B), B);
    rep.count = detail::FloatBoxCounter(h, B, st, std::move(range)).count();
  }
  return rep;
}

/// Certified upper bound for N_H(B) with WEAK strictness (hence also STRICT).
///
/// Points counted satisfy ||H y||_2 <= sqrt(n) B. In right-singular coordinates
/// z = V^T y this confines z_i to |z_i| <= min(sqrt(n) B / Lambda_i, sqrt(n) B).
/// Unit cubes around distinct lattice points are disjoint and lie within
/// sqrt(n)/2 of their centres, so
///   N_H(B) <= prod_i 2 min(sqrt(n)(B/Lambda_i + 1/2), sqrt(n)(B + 1/2)),
/// and trivially N_H(B) <= (2B+1)^n.
struct EllipsoidBound {
  double value = 0;        // min of the two bounds, floored
  double volume_bound = 0; // the product above
  double box_bound = 0;    // (2B+1)^n
  std::vector<double> factors;
};

template <Scalar S>
EllipsoidBound ellipsoid_bound(const Matrix<S>& h, long B) {
  detail::check_B(B);
  if (!h.square()) throw DimensionMismatch("ellipsoid_bound needs a square matrix");
  const int n = int(h.rows());
  const auto sv = singular_values(h);
  const double rn = std::sqrt(double(n)), b = double(B);
  EllipsoidBound r;
  r.volume_bound = 1;
  for (int i = 0; i < n; ++i) {
    const double w = sv[i] > 0 ? std::min(b / sv[i], b) : b;
    const double f = 2 * rn * (w + 0.5);
    r.factors.push_back(f);
    r.volume_bound *= f;
  }
  r.box_bound = std::pow(2 * b + 1, n);
  // a relative inflation covers rounding in the singular values
  r.value = std::floor(std::min(r.volume_bound * (1 + 1e-9), r.box_bound));
  return r;
}

namespace detail {

/// Threshold for |(G(x) y)_i| given H_c(x) = 6 G(x) / m.
inline long aux_limit(long m, long B, Strictness st) {
  // strict: 6|v| < m B ; weak: 6|v| <= m B
  const long mb = m * B;
  return st == Strictness::Strict ? floor_div(mb - 1, 6) : floor_div(mb, 6);
}

template <class F>
std::uint64_t sum_over_box(int n, long B, int threads, F&& per_point) {
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= std::size_t(2 * B + 1);
  return parallel_sum<std::uint64_t>(total, threads, [&](std::size_t idx) {
    std::vector<long> x(n);
    for (int i = n - 1; i >= 0; --i) {
      x[i] = long(idx % std::size_t(2 * B + 1)) - B;
      idx /= std::size_t(2 * B + 1);
    }
    return per_point(x);
  });
}

inline std::vector<long> integer_hessian(const IntegerTensor& t, const std::vector<long>& x) {
  const int n = t.n;
  std::vector<long> g(std::size_t(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      long acc = 0;
      for (int k = 0; k < n; ++k) acc += t.at(i, j, k) * x[k];
      g[i * n + j] = g[j * n + i] = acc;
    }
  return g;
}

inline std::uint64_t integer_NH(const std::vector<long>& g, int n, long limit, long B) {
  std::vector<long> range(n, B);
  if (limit >= 0) {
    Eigen::MatrixXd gd(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gd(i, j) = double(g[i * n + j]);
    range = inverse_shadow(gd, double(limit), B);
  }
  return IntegerBoxCounter(n, g, limit, std::move(range)).count();
}

}  // namespace detail

/// N^aux_c(B): pairs (x, y) with ||x||, ||y|| <= B and ||H_c(x) y|| < B (STRICT,
/// the default) or <= B (WEAK), as sum_x N_{H_c(x)}(B).
template <Scalar S>
CountReport count_aux(const CubicForm<S>& c, long B, Strictness st = Strictness::Strict, int threads = 0) {
  detail::check_B(B);
  if (c.is_zero()) throw ZeroForm("count_aux of the zero form");
  const int n = c.n();
  threads = resolve_threads(threads);
  CountReport rep{0, B, st, {}};
  if constexpr (is_exact_v<S>) {
    const IntegerTensor t = integer_tensor(c);
    if (double(t.max_abs) * n * n * double(B) * double(B) > 1e17) throw Overflow("count_aux: B too large");
    const long limit = detail::aux_limit(long(t.max_abs), B, st);
    rep.count = detail::sum_over_box(n, B, threads, [&](const std::vector<long>& x) {
      return detail::integer_NH(detail::integer_hessian(t, x), n, limit, B);
    });
  } else {
    rep.count = detail::sum_over_box(n, B, threads, [&](const std::vector<long>& x) {
      std::vector<double> xd(x.begin(), x.end());
      return count_NH(c.hessian(xd), B, st).count;
    });
  }
  return rep;
}

/// N^aux-eq_c(B): pairs with ||x||, ||y|| <= B and H_c(x) y = 0 exactly.
template <Scalar S>
CountReport count_aux_eq(const CubicForm<S>& c, long B, int threads = 0) {
  detail::check_B(B);
  if (c.is_zero()) throw ZeroForm("count_aux_eq of the zero form");
  ExactForm e;
  if constexpr (is_exact_v<S>) e = c;
  else e = c.template cast<Rational>();
  const IntegerTensor t = integer_tensor(e);
  const int n = c.n();
  CountReport rep{0, B, Strictness::Weak, {}};
  rep.count = detail::sum_over_box(n, B, resolve_threads(threads), [&](const std::vector<long>& x) {
    return detail::IntegerBoxCounter(n, detail::integer_hessian(t, x), 0, std::vector<long>(n, B)).count();
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Dyadic classes

/// K_k(2^{e_1}, ..., 2^{e_k}, E_last): points with 2^{e_i - 1} < |lambda_i| <= 2^{e_i}
/// for i <= k and |lambda_i| <= E_last for i > k. K_0(1) has k = 0.
struct DyadicClass {
  int k = 0;
  std::vector<int> e;
  double E_last = 1.0;

  std::vector<double> E() const {
    std::vector<double> out;
    for (int v : e) out.push_back(std::ldexp(1.0, v));
    out.push_back(E_last);
    return out;
  }
  int exponent_sum() const {
    int s = 0;
    for (int v : e) s += v;
    return s;
  }
  std::string label() const {
    std::string s = "K_" + std::to_string(k) + "(";
    for (int v : e) s += std::to_string(1L << v) + ",";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", E_last);
    return s + buf + ")";
  }
  friend bool operator<(const DyadicClass& a, const DyadicClass& b) {
    if (a.k != b.k) return a.k < b.k;
    if (a.e != b.e) return a.e < b.e;
    return a.E_last < b.E_last;
  }
  friend bool operator==(const DyadicClass& a, const DyadicClass& b) {
    return a.k == b.k && a.e == b.e && a.E_last == b.E_last;
  }

  /// Membership of a spectrum sorted by decreasing |lambda|.
  bool contains_spectrum(const std::vector<double>& lam) const;
};

namespace detail {
/// Dyadic exponent with snapping: |v| within 1e-9 (relative) of 2^m counts as 2^m,
/// so that exact powers of two sit at the top of their range.
inline int dyadic_exponent(double v) {
  const double a = std::fabs(v);
  const double m = std::round(std::log2(a));
  if (std::fabs(a - std::ldexp(1.0, int(m))) <= 1e-9 * a) return int(m);
  return int(std::ceil(std::log2(a)));
}
inline bool at_most(double v, double bound) { return v <= bound * (1 + 1e-9); }
}  // namespace detail

inline bool DyadicClass::contains_spectrum(const std::vector<double>& lam) const {
  const int n = int(lam.size());
  if (k > n) return false;
  for (int i = 0; i < k; ++i) {
    const double a = std::fabs(lam[i]);
    if (!(a > 1e-300) || detail::dyadic_exponent(a) != e[i]) return false;
  }
  for (int i = k; i < n; ++i)
    if (!detail::at_most(std::fabs(lam[i]), E_last)) return false;
  return true;
}

/// The class of x among K_0(1) and K_k(2^{e_1},...,2^{e_k},1): k counts the
/// eigenvalues with |lambda| > 1 and e_i = ceil(log2 |lambda_i|).
template <Scalar S>
DyadicClass classify_dyadic(const CubicForm<S>& c, std::span<const S> x, long B) {
  if (x.size() != std::size_t(c.n())) throw DimensionMismatch("point dimension");
  for (const auto& v : x)
    if (abs_value(v) > S(B)) throw OutsideBox("point lies outside the box ||x|| <= B");
  const auto lam = symmetric_eigenvalues(c.hessian(x));
  DyadicClass d;
  for (double l : lam) {
    const double a = std::fabs(l);
    if (a <= 1 || detail::dyadic_exponent(a) <= 0) break;
    d.e.push_back(detail::dyadic_exponent(a));
    ++d.k;
  }
  return d;
}

/// Lattice points of the box grouped by class, with their N_H(B).
struct ClassTable {
  struct Row {
    std::uint64_t points = 0;
    std::uint64_t nh_sum = 0;  // sum of N_{H_c(x)}(B) over the class
  };
  std::map<DyadicClass, Row> rows;
  std::uint64_t total_nh() const {
    std::uint64_t s = 0;
    for (const auto& [k, r] : rows) s += r.nh_sum;
    return s;
  }
};

namespace detail {
template <Scalar S>
std::vector<S> to_point(const std::vector<long>& x) {
  std::vector<S> p;
  for (long v : x) p.push_back(S(v));
  return p;
}

inline void for_each_box_point(int n, long B, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> x(n, -B);
  while (true) {
    f(x);
    int i = n - 1;
    while (i >= 0 && x[i] == B) x[i--] = -B;
    if (i < 0) return;
    ++x[i];
  }
}
}  // namespace detail

/// Classifies every lattice point of the box and counts N_H per class. Each
/// N_H is computed from the matrix H_c(x) itself, independently of count_aux.
template <Scalar S>
ClassTable class_table(const CubicForm<S>& c, long B, Strictness st = Strictness::Strict) {
  detail::check_B(B);
  if (c.is_zero()) throw ZeroForm("class table of the zero form");
  ClassTable t;
  detail::for_each_box_point(c.n(), B, [&](const std::vector<long>& xi) {
    const auto x = detail::to_point<S>(xi);
    auto& row = t.rows[classify_dyadic<S>(c, x, B)];
    ++row.points;
    row.nh_sum += count_NH(c.hessian(x), B, st).count;
  });
  return t;
}

struct PartitionReport {
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  ClassTable table;
  bool equal() const { return lhs == rhs; }
};

template <Scalar S>
PartitionReport partition_check(const CubicForm<S>& c, long B, Strictness st = Strictness::Strict, int threads = 0) {
  PartitionReport r;
  r.lhs = count_aux(c, B, st, threads).count;
  r.table = class_table(c, B, st);
  r.rhs = r.table.total_nh();
  return r;
}

// ---------------------------------------------------------------------------
// Pigeonhole

enum class PigeonBranch { HSmall, Prescribed, AllPrescribed };

inline std::string_view to_string(PigeonBranch b) {
  switch (b) {
    case PigeonBranch::HSmall: return "H_SMALL";
    case PigeonBranch::Prescribed: return "PRESCRIBED";
    default: return "ALL_PRESCRIBED";
  }
}

/// Explicit constants for the three alternatives. With L = log2(2B):
///   |H_ij| <= 6nB, so |lambda_1| <= 6n^2 B and e_1 <= log2(6n^2 B) + 1;
///   the number of classes is at most (e_max + 1)^n <= (2 log2 n + 5)^n L^n;
///   in a class with prescribed e_1..e_k the volume bound of ellipsoid_bound
///   gives N_H(B) <= (4 sqrt(n)(1 + 3n^2))^n B^n 2^{-(e_1+...+e_k)}.
struct PigeonConstants {
  double classes = 0;     // (2 log2 n + 5)^n
  double per_point = 0;   // 3^n for H_SMALL
  double prescribed = 0;  // (4 sqrt(n)(1 + 3n^2))^n
  double kappa_small() const { return classes * per_point; }
  double kappa_prescribed() const { return classes * prescribed; }
};

inline PigeonConstants pigeon_constants(int n) {
  PigeonConstants k;
  k.classes = std::pow(2 * std::log2(double(n)) + 5, n);
  k.per_point = std::pow(3.0, n);
  k.prescribed = std::pow(4 * std::sqrt(double(n)) * (1 + 3.0 * n * n), n);
  return k;
}

struct PigeonholeResult {
  PigeonBranch branch = PigeonBranch::HSmall;
  DyadicClass selected;
  std::uint64_t n_aux = 0;
  double log_term = 0;          // L = log2(2B)
  std::uint64_t class_points = 0;  // #(Z^n cap K) for the inequality's right side
  double lhs = 0;               // 2^{sum e} N / (B^n L^n)
  double kappa = 0;
  double rhs = 0;               // kappa * class_points
  std::uint64_t classes_used = 0;
  ClassTable table;
  bool verified() const { return lhs <= rhs * (1 + 1e-12); }
};

/// The class carrying the largest share of N^aux (first in class order on
/// ties) decides the branch; the corresponding inequality is then checked
/// with the explicit constants.
template <Scalar S>
PigeonholeResult pigeonhole(const CubicForm<S>& c, long B, Strictness st = Strictness::Strict) {
  PigeonholeResult r;
  r.table = class_table(c, B, st);
  r.n_aux = r.table.total_nh();
  r.classes_used = r.table.rows.size();
  const int n = c.n();
  std::uint64_t best = 0;
  bool first = true;
  for (const auto& [cls, row] : r.table.rows)
    if (first || row.nh_sum > best) {
      best = row.nh_sum;
      r.selected = cls;
      first = false;
    }
  r.log_term = std::log2(2.0 * double(B));
  const auto K = pigeon_constants(n);
  const double denom = std::pow(double(B), n) * std::pow(r.log_term, n);
  if (r.selected.k == 0) {
    r.branch = PigeonBranch::HSmall;
    r.class_points = r.table.rows.at(r.selected).points;
    r.kappa = K.kappa_small();
    r.lhs = double(r.n_aux) / denom;
  } else {
    r.kappa = K.kappa_prescribed();
    r.lhs = std::ldexp(double(r.n_aux), r.selected.exponent_sum()) / denom;
    if (r.selected.k < n) {
      r.branch = PigeonBranch::Prescribed;
      r.class_points = r.table.rows.at(r.selected).points;
    } else {
      // K_n(2^{e_1..e_n}, 1) sits inside K_{n-1}(2^{e_1}, ..., 2^{e_n}); count the latter.
      r.branch = PigeonBranch::AllPrescribed;
      DyadicClass big{n - 1, std::vector<int>(r.selected.e.begin(), r.selected.e.end() - 1),
                      std::ldexp(1.0, r.selected.e.back())};
      std::uint64_t pts = 0;
      detail::for_each_box_point(n, B, [&](const std::vector<long>& xi) {
        const auto x = detail::to_point<S>(xi);
        if (big.contains_spectrum(symmetric_eigenvalues(c.hessian(x)))) ++pts;
      });
      r.class_points = pts;
    }
  }
  r.rhs = r.kappa * double(r.class_points);
  return r;
}

}  // namespace cubiclab

#endif  // CUBICLAB_COUNTING_HPP
