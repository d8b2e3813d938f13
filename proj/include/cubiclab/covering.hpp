#pragma once
#ifndef CUBICLAB_COVERING_HPP
#define CUBICLAB_COVERING_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cubiclab/counting.hpp"
#include "cubiclab/minors.hpp"

namespace cubiclab {

/// Axis-parallel box [lo, hi] (integer corners) grown around a centre point.
/// `v_coords` are the coordinates spanning V for the A_k(z) that produced it.
struct CoverBox {
  std::vector<long> center;
  std::vector<long> lo, hi;
  std::vector<int> v_coords;

  bool contains(const std::vector<long>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
  long max_side() const {
    long s = 0;
    for (std::size_t i = 0; i < lo.size(); ++i) s = std::max(s, hi[i] - lo[i]);
    return s;
  }
};

enum class CoverMode { Empty, HessianMap, Jacobian, Cubes };

inline std::string_view to_string(CoverMode m) {
  switch (m) {
    case CoverMode::Empty: return "empty";
    case CoverMode::HessianMap: return "hessian-map";
    case CoverMode::Jacobian: return "jacobian";
    default: return "cubes";
  }
}

struct CoverWitness {
  DyadicClass cls;
  CoverMode mode = CoverMode::Empty;
  double epsilon = 0;
  std::vector<CoverBox> boxes;
  std::uint64_t class_points = 0;
  double bound_expr = 0;       // B^sigma (E_1...E_{k+1}) E_{k+1}^{-sigma-k-1}
  double max_side_ratio = 0;   // max box side / E_{k+1}
  bool verified = false;       // every class point lies in some box (independent scan)
  double count_ratio() const { return bound_expr > 0 ? double(boxes.size()) / bound_expr : 0; }
};

/// A class point at which the construction's certificate fails.
struct FailureWitness {
  DyadicClass cls;
  std::vector<long> point;
  std::string reason;
  double measured = 0;
  double required = 0;
};

using CoverResult = std::variant<CoverWitness, FailureWitness>;

namespace detail {

template <Scalar S>
std::vector<std::vector<long>> class_points(const CubicForm<S>& c, long B, const DyadicClass& cls) {
  std::vector<std::vector<long>> pts;
  for_each_box_point(c.n(), B, [&](const std::vector<long>& xi) {
    if (cls.contains_spectrum(symmetric_eigenvalues(c.hessian(to_point<S>(xi))))) pts.push_back(xi);
  });
  return pts;
}

inline void check_cover_params(int n, long B, double C, int sigma, const DyadicClass& cls) {
  check_B(B);
  if (!(C >= 1)) throw OutOfRange("C must be >= 1");
  if (sigma < 0 || sigma > n - 1) throw OutOfRange("sigma must lie in 0..n-1");
  if (cls.k < 0 || cls.k > n - sigma - 1) throw OutOfRange("class index k must lie in 0..n-sigma-1");
  const auto E = cls.E();
  if (!(C * double(B) >= E.front() && E.back() >= 1)) throw OutOfRange("need C B >= E_1 >= E_{k+1} >= 1");
  for (std::size_t i = 1; i < E.size(); ++i)
    if (E[i] > E[i - 1]) throw OutOfRange("need E_1 >= ... >= E_{k+1}");
}

inline double sup_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

/// Certified lower bound for ||M v|| / ||v|| on the big subspace.
inline double certified_lower(const BigSubspace& s) { return std::max(s.guaranteed(), s.cofactor_ratio); }

}  // namespace detail

/// Covers the lattice points of a dyadic class by axis-parallel boxes, when the
/// construction's certificates hold.
///
/// k = 0:  V is the big coordinate subspace (dimension n - sigma) of the map
///         x -> H_c(x); boxes A_0(z) have half-width B along V and E_1 across.
/// k >= 1, E_{k+1} < E_k / C:  at each class point V is the big coordinate
///         subspace (dimension n - sigma - k) of J^(k+1)(x), certified by
///         ||J v|| >= C^-1 ||Delta^(k)(x)|| ||v||; boxes A_k(z) have half-width
///         epsilon E_k along V and E_{k+1} across.
/// otherwise: cubes of half-width E_{k+1}.
/// Boxes are placed greedily at uncovered class points (lexicographic order)
/// and then shrunk to the bounding box of the points they absorbed.
template <Scalar S>
CoverResult cover_class(const CubicForm<S>& c, long B, double C, int sigma, const DyadicClass& cls,
                        std::optional<double> epsilon = std::nullopt) {
  const int n = c.n();
  if (c.is_zero()) throw ZeroForm("cover of the zero form");
  detail::check_cover_params(n, B, C, sigma, cls);
  const auto E = cls.E();
  const int k = cls.k;
  CoverWitness w;
  w.cls = cls;
  w.epsilon = epsilon.value_or(1.0 / (16.0 * C * n));
  w.bound_expr = std::pow(double(B), sigma) * std::pow(E.back(), -sigma - k - 1);
  for (double e : E) w.bound_expr *= e;

  const auto pts = detail::class_points(c, B, cls);
  w.class_points = pts.size();
  if (pts.empty()) {
    w.verified = true;
    return w;
  }

  // V (as coordinate indices) and the half-widths along / across V per point
  std::map<std::vector<int>, std::vector<std::size_t>> groups;
  double along = 0;
  const double across = E.back();
  if (k == 0) {
    w.mode = CoverMode::HessianMap;
    const Matrix<double> map = c.hessian_map().template cast<double>();
    const auto sv = singular_values(map);
    if (!(sv[n - sigma - 1] > 1e-12 * std::max(1.0, sv[0])))
      return FailureWitness{cls, pts.front(), "the map x -> H_c(x) has rank below n - sigma", sv[n - sigma - 1], 0};
    groups[big_subspace(map, n - sigma).columns].resize(pts.size());
    auto& all = groups.begin()->second;
    for (std::size_t i = 0; i < pts.size(); ++i) all[i] = i;
    along = double(B);
  } else if (E[k] < E[k - 1] / C) {
    w.mode = CoverMode::Jacobian;
    along = w.epsilon * E[k - 1];
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto x = detail::to_point<double>(pts[p]);
      const auto fc = c.template cast<double>();
      const Matrix<double> jac = minors_jacobian<double>(fc, x, k + 1);
      const double dk = detail::sup_abs(minors_vector<double>(fc, x, k));
      const double required = dk / C;
      const auto sv = singular_values(jac);
      if (!(sv[n - sigma - k - 1] > 1e-12 * std::max(1.0, sv[0])))
        return FailureWitness{cls, pts[p], "J^(k+1) has rank below n - sigma - k", 0, required};
      const BigSubspace bs = big_subspace(jac, n - sigma - k);
      const double lower = detail::certified_lower(bs);
      if (lower < required)
        return FailureWitness{cls, pts[p], "big subspace of J^(k+1) not certified against C^-1 ||Delta^(k)||",
                              lower, required};
      groups[bs.columns].push_back(p);
    }
  } else {
    w.mode = CoverMode::Cubes;
    along = across;
    auto& all = groups[{}];
    for (std::size_t i = 0; i < pts.size(); ++i) all.push_back(i);
  }

  for (const auto& [vc, members] : groups) {
    std::vector<double> half(n, across);
    for (int j : vc) half[j] = along;
    std::vector<CoverBox> local;
    for (std::size_t p : members) {
      const auto& x = pts[p];
      bool placed = false;
      for (auto& b : local) {
        bool inside = true;
        for (int i = 0; i < n && inside; ++i) inside = std::fabs(double(x[i] - b.center[i])) <= half[i];
        if (inside) {
          for (int i = 0; i < n; ++i) {
            b.lo[i] = std::min(b.lo[i], x[i]);
            b.hi[i] = std::max(b.hi[i], x[i]);
          }
          placed = true;
          break;
        }
      }
      if (!placed) local.push_back(CoverBox{x, x, x, vc});
    }
    w.boxes.insert(w.boxes.end(), local.begin(), local.end());
  }

  long max_side = 0;
  for (const auto& b : w.boxes) max_side = std::max(max_side, b.max_side());
  w.max_side_ratio = double(max_side) / E.back();
  // independent pass over the whole box
  w.verified = true;
  detail::for_each_box_point(n, B, [&](const std::vector<long>& xi) {
    if (!w.verified) return;
    if (!cls.contains_spectrum(symmetric_eigenvalues(c.hessian(detail::to_point<S>(xi))))) return;
    w.verified = std::any_of(w.boxes.begin(), w.boxes.end(), [&](const CoverBox& b) { return b.contains(xi); });
  });
  return w;
}

// ---------------------------------------------------------------------------

enum class TrichotomyBranch { I, II, III, Inconclusive };

inline std::string_view to_string(TrichotomyBranch b) {
  switch (b) {
    case TrichotomyBranch::I: return "I";
    case TrichotomyBranch::II: return "II";
    case TrichotomyBranch::III: return "III";
    default: return "INCONCLUSIVE";
  }
}

struct TrichotomyResult {
  TrichotomyBranch branch = TrichotomyBranch::Inconclusive;
  std::optional<CoverWitness> cover;          // branch I
  std::optional<FailureWitness> failure;      // why I was not certified
  int b = 0;                                  // branch II
  std::vector<long> x0;                       // branch II
  Matrix<double> X;                           // n x dim, orthonormal columns (II, III)
  std::optional<Matrix<Rational>> X_exact;    // III when the map has an exact kernel
  double certified = 0;  // III: sqrt(n) Lambda_{n-sigma}; II: sqrt(n) Lambda_{n-sigma-b}(J)
  double required = 0;   // III: 1/C; II: C^-1 ||Delta^(b)(x0)||
  double measured = 0;   // sampled max of the left side over ||X|| = 1 directions
  std::string note;
};

namespace detail {

/// Alternative III: a (sigma+1)-dimensional X with ||H_c(X)|| <= C^-1 ||X||.
template <Scalar S>
bool try_cone(const CubicForm<S>& c, double C, int sigma, TrichotomyResult& r) {
  const int n = c.n();
  const auto map = c.hessian_map();
  const Matrix<double> md = map.template cast<double>();
  const auto sv = singular_values(md);
  const double cert = std::sqrt(double(n)) * sv[n - sigma - 1];
  if constexpr (is_exact_v<S>) {
    auto ker = kernel_basis(map);
    if (int(ker.size()) >= sigma + 1) {
      Matrix<Rational> xe(n, sigma + 1);
      for (int j = 0; j <= sigma; ++j)
        for (int i = 0; i < n; ++i) xe(i, j) = ker[j][i];
      r.branch = TrichotomyBranch::III;
      r.X_exact = xe;
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(to_eigen(xe));
      r.X = from_eigen(qr.householderQ() * Eigen::MatrixXd::Identity(n, sigma + 1));
      r.certified = 0;
      r.required = 1.0 / C;
      r.measured = 0;
      r.note = "exact kernel of x -> H_c(x)";
      return true;
    }
  }
  if (cert <= 1.0 / C) {
    const Eigen::MatrixXd v = right_singular_vectors(md);
    r.branch = TrichotomyBranch::III;
    r.X = from_eigen(v.rightCols(sigma + 1));
    r.certified = cert;
    r.required = 1.0 / C;
    r.measured = sampled_sup_ratio(to_eigen(md), v.rightCols(sigma + 1), 256, 0xc0e);
    r.note = "smallest singular directions of x -> H_c(x)";
    return true;
  }
  return false;
}

/// Alternative II at one point: SmallSpace of J^(b+1)(x0) of dimension sigma+b+1.
template <Scalar S>
bool try_jacobian_point(const CubicForm<S>& c, double C, int sigma, int b, const std::vector<long>& x0,
                        TrichotomyResult& r) {
  const int n = c.n();
  const auto fc = c.template cast<double>();
  const auto x = to_point<double>(x0);
  const Matrix<double> jac = minors_jacobian<double>(fc, x, b + 1);
  const double required = sup_abs(minors_vector<double>(fc, x, b)) / C;
  const auto sv = singular_values(jac);
  const int kk = n - sigma - b;  // SmallSpace parameter: dimension n - kk + 1 = sigma + b + 1
  const double cert = std::sqrt(double(n)) * sv[kk - 1];
  if (cert > required) return false;
  const Eigen::MatrixXd v = right_singular_vectors(jac);
  r.branch = TrichotomyBranch::II;
  r.b = b;
  r.x0 = x0;
  r.X = from_eigen(v.rightCols(sigma + b + 1));
  r.certified = cert;
  r.required = required;
  r.measured = sampled_sup_ratio(to_eigen(jac), v.rightCols(sigma + b + 1), 256, 0x11);
  r.note = "small singular directions of J^(b+1)(x0)";
  return true;
}

}  // namespace detail

/// Certifies one alternative of the covering trichotomy for a class: III (c close
/// to a cone) is tried first since it does not depend on the class, then I
/// (an explicit verified cover), then II (a point where J^(b+1) is small on a
/// (sigma+b+1)-dimensional space). Inconclusive is a result, not an error.
template <Scalar S>
TrichotomyResult trichotomy(const CubicForm<S>& c, long B, double C, int sigma, const DyadicClass& cls,
                            std::optional<double> epsilon = std::nullopt) {
  if (c.is_zero()) throw ZeroForm("trichotomy of the zero form");
  detail::check_cover_params(c.n(), B, C, sigma, cls);
  TrichotomyResult r;
  if (detail::try_cone(c, C, sigma, r)) return r;

  auto cover = cover_class(c, B, C, sigma, cls, epsilon);
  if (auto* w = std::get_if<CoverWitness>(&cover); w && w->verified) {
    r.branch = TrichotomyBranch::I;
    r.cover = *w;
    return r;
  }
  if (auto* f = std::get_if<FailureWitness>(&cover)) r.failure = *f;

  const auto E = cls.E();
  for (int b = 1; b <= cls.k; ++b) {
    if (!(E[b] < E[b - 1] / C)) continue;
    // points of K_b(E_1, ..., E_{b+1}); the failure point first when it qualifies
    DyadicClass kb{b, std::vector<int>(cls.e.begin(), cls.e.begin() + b), E[b]};
    std::vector<std::vector<long>> cand;
    if (r.failure && r.failure->point.size() == std::size_t(c.n())) cand.push_back(r.failure->point);
    for (auto& p : detail::class_points(c, B, kb)) cand.push_back(p);
    for (const auto& x0 : cand) {
      if (!kb.contains_spectrum(symmetric_eigenvalues(c.hessian(detail::to_point<S>(x0))))) continue;
      if (detail::try_jacobian_point(c, C, sigma, b, x0, r)) return r;
    }
  }
  r.branch = TrichotomyBranch::Inconclusive;
  r.note = r.failure ? r.failure->reason : "no alternative certified";
  return r;
}

}  // namespace cubiclab

#endif  // CUBICLAB_COVERING_HPP
