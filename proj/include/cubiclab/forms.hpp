#pragma once
#ifndef CUBICLAB_FORMS_HPP
#define CUBICLAB_FORMS_HPP

#include <algorithm>
#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cubiclab/matrix.hpp"
#include "cubiclab/scalar.hpp"

namespace cubiclab {

/// Canonical monomial x_i x_j x_k with 0 <= i <= j <= k < n.
using Monomial = std::array<int, 3>;

inline Monomial canonical(int i, int j, int k) {
  Monomial m{i, j, k};
  std::sort(m.begin(), m.end());
  return m;
}

/// d^3 (a m) / dx_i dx_j dx_k = factor * a: 6 for x_i^3, 2 for x_i^2 x_j,
/// 1 for x_i x_j x_k.
inline int derivative_factor(const Monomial& m) {
  if (m[0] == m[1] && m[1] == m[2]) return 6;
  if (m[0] == m[1] || m[1] == m[2]) return 2;
  return 1;
}

/// Homogeneous cubic form c(x) = sum over canonical monomials of a_m x_i x_j x_k.
///
/// Coefficients are stored by canonical monomial (i <= j <= k), so a form
/// written as x1^2 x2 has the single entry (0,0,1) -> 1. The symmetric
/// coefficient tensor is t_ijk = (1/6) d^3 c / dx_i dx_j dx_k, and the sup
/// norm is max |t_ijk|; the normalized form c/||c|| has largest symmetrized
/// coefficient of magnitude 1.
template <Scalar S>
class CubicForm {
 public:
  using scalar_type = S;

  CubicForm() = default;
  explicit CubicForm(int n) : n_(n) {
    if (n < 1) throw OutOfRange("form dimension must be positive");
    rebuild();
  }
  CubicForm(int n, const std::map<Monomial, S>& coeffs) : n_(n) {
    if (n < 1) throw OutOfRange("form dimension must be positive");
    for (const auto& [m, v] : coeffs) add(m[0], m[1], m[2], v, false);
    rebuild();
  }

  /// Builder-style accessor: adds `value` to the coefficient of x_i x_j x_k.
  CubicForm& add(int i, int j, int k, const S& value) { return add(i, j, k, value, true); }

  /// Diagonal form sum a_i x_i^3.
  static CubicForm diagonal(std::span<const S> a) {
    CubicForm c(static_cast<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!cubiclab::is_zero(a[i])) c.add(int(i), int(i), int(i), a[i], false);
    c.rebuild();
    return c;
  }

  int n() const noexcept { return n_; }
  Backend backend() const noexcept { return scalar_traits<S>::backend; }
  const std::map<Monomial, S>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  S coefficient(int i, int j, int k) const {
    auto it = coeffs_.find(canonical(i, j, k));
    return it == coeffs_.end() ? S(0) : it->second;
  }

  /// d^3 c / dx_i dx_j dx_k (a constant, symmetric in its indices).
  const S& third(int i, int j, int k) const { return tensor_[(std::size_t(i) * n_ + j) * n_ + k]; }

  /// ||c|| = (1/6) max |d^3 c|. Throws ZeroForm for the zero form.
  S sup_norm() const {
    if (is_zero()) throw ZeroForm("sup norm of the zero form is undefined for normalization");
    return norm_;
  }

  bool is_diagonal() const {
    for (const auto& [m, v] : coeffs_)
      if (!(m[0] == m[1] && m[1] == m[2])) return false;
    return true;
  }

  S operator()(std::span<const S> x) const { return eval(x); }

  S eval(std::span<const S> x) const {
    check_dim(x.size());
    S acc(0);
    for (const auto& [m, v] : coeffs_) acc += v * x[m[0]] * x[m[1]] * x[m[2]];
    return acc;
  }

  /// Gradient of c (not normalized).
  Vector<S> gradient(std::span<const S> x) const {
    check_dim(x.size());
    Vector<S> g(n_, S(0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
          const S& t = third(i, j, k);
          if (!cubiclab::is_zero(t)) g[i] += t * x[j] * x[k];
        }
    for (auto& v : g) v /= S(2);
    return g;
  }

  /// Unnormalized Hessian sum_k (d^3 c / dx_i dx_j dx_k) x_k.
  Matrix<S> raw_hessian(std::span<const S> x) const {
    check_dim(x.size());
    Matrix<S> h(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        S acc(0);
        for (int k = 0; k < n_; ++k) {
          const S& t = third(i, j, k);
          if (!cubiclab::is_zero(t)) acc += t * x[k];
        }
        h(i, j) = acc;
        h(j, i) = acc;
      }
    return h;
  }

  /// H_c(x): the Hessian of c/||c|| at x. Linear in x, symmetric.
  Matrix<S> hessian(std::span<const S> x) const {
    const S inv = S(1) / sup_norm();
    Matrix<S> h = raw_hessian(x);
    return inv * h;
  }

  /// y^T H_c(x) z, a symmetric trilinear form in (x, y, z).
  S trilinear(std::span<const S> x, std::span<const S> y, std::span<const S> z) const {
    check_dim(x.size());
    check_dim(y.size());
    check_dim(z.size());
    const S norm = sup_norm();
    S acc(0);
    for (int i = 0; i < n_; ++i) {
      if (cubiclab::is_zero(y[i])) continue;
      for (int j = 0; j < n_; ++j) {
        if (cubiclab::is_zero(z[j])) continue;
        for (int k = 0; k < n_; ++k) {
          const S& t = third(i, j, k);
          if (!cubiclab::is_zero(t)) acc += t * y[i] * z[j] * x[k];
        }
      }
    }
    return acc / norm;
  }

  /// Matrix of the linear map x -> H_c(x), shape n^2 x n, row index i*n + j.
  Matrix<S> hessian_map() const {
    const S norm = sup_norm();
    Matrix<S> m(std::size_t(n_) * n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) m(std::size_t(i) * n_ + j, k) = third(i, j, k) / norm;
    return m;
  }

  CubicForm scaled(const S& lambda) const {
    CubicForm out(n_);
    if (!cubiclab::is_zero(lambda))
      for (const auto& [m, v] : coeffs_) out.coeffs_[m] = v * lambda;
    out.rebuild();
    return out;
  }

  template <Scalar T>
  CubicForm<T> cast() const {
    std::map<Monomial, T> c;
    for (const auto& [m, v] : coeffs_) {
      if constexpr (std::is_same_v<T, double>) c[m] = to_double(v);
      else c[m] = T(v);
    }
    return CubicForm<T>(n_, c);
  }

  friend bool operator==(const CubicForm& a, const CubicForm& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  CubicForm& add(int i, int j, int k, const S& value, bool rebuild_now) {
    if (i < 0 || j < 0 || k < 0 || i >= n_ || j >= n_ || k >= n_)
      throw OutOfRange("monomial index out of range");
    const Monomial m = canonical(i, j, k);
    S v = coefficient(m[0], m[1], m[2]) + value;
    if constexpr (is_exact_v<S>) v.canonicalize();
    if (cubiclab::is_zero(v)) coeffs_.erase(m);
    else coeffs_[m] = v;
    if (rebuild_now) rebuild();
    return *this;
  }

  void check_dim(std::size_t d) const {
    if (d != std::size_t(n_)) throw DimensionMismatch("vector has dimension " + std::to_string(d) +
                                                      ", form has n = " + std::to_string(n_));
  }

  void rebuild() {
    tensor_.assign(std::size_t(n_) * n_ * n_, S(0));
    norm_ = S(0);
    for (const auto& [m, v] : coeffs_) {
      const S d = v * S(derivative_factor(m));
      std::array<int, 3> p = m;
      do {
        tensor_[(std::size_t(p[0]) * n_ + p[1]) * n_ + p[2]] = d;
      } while (std::next_permutation(p.begin(), p.end()));
      S a = abs_value(d);
      if (a > norm_) norm_ = a;
    }
    norm_ /= S(6);
  }

  int n_ = 0;
  std::map<Monomial, S> coeffs_;
  std::vector<S> tensor_;
  S norm_{0};
};

using ExactForm = CubicForm<Rational>;
using FloatForm = CubicForm<double>;

/// Symmetric matrices are plain square matrices built symmetric.
template <Scalar S>
using SymMatrix = Matrix<S>;

template <Scalar S>
S eval(const CubicForm<S>& c, std::span<const S> x) { return c.eval(x); }

template <Scalar S>
S sup_norm_form(const CubicForm<S>& c) { return c.sup_norm(); }

template <Scalar S>
SymMatrix<S> hessian(const CubicForm<S>& c, std::span<const S> x) { return c.hessian(x); }

template <Scalar S>
S trilinear(const CubicForm<S>& c, std::span<const S> x, std::span<const S> y, std::span<const S> y2) {
  return c.trilinear(x, y, y2);
}

/// beta_1 c_1 + ... + beta_R c_R, coefficientwise.
template <Scalar S>
CubicForm<S> linear_combination(std::span<const S> beta, std::span<const CubicForm<S>> cs) {
  if (beta.size() != cs.size()) throw DimensionMismatch("beta and form list lengths differ");
  if (cs.empty()) throw DimensionMismatch("empty form list");
  const int n = cs.front().n();
  std::map<Monomial, S> acc;
  for (std::size_t r = 0; r < cs.size(); ++r) {
    if (cs[r].n() != n) throw DimensionMismatch("forms have different dimensions");
    if (is_zero(beta[r])) continue;
    for (const auto& [m, v] : cs[r].coeffs()) acc[m] += beta[r] * v;
  }
  std::erase_if(acc, [](const auto& kv) { return is_zero(kv.second); });
  return CubicForm<S>(n, acc);
}

/// Integer scaling of an exact form: the tensor d^3 c multiplied by the lcm of
/// its denominators, with the largest magnitude. H_c(x) = 6 G(x) / max_abs where
/// G(x)_ij = sum_k tensor_ijk x_k.
struct IntegerTensor {
  int n = 0;
  std::vector<long long> t;  // n^3, row-major
  long long max_abs = 0;
  long long at(int i, int j, int k) const { return t[(std::size_t(i) * n + j) * n + k]; }
};

inline IntegerTensor integer_tensor(const CubicForm<Rational>& c) {
  if (c.is_zero()) throw ZeroForm("integer tensor of the zero form");
  const int n = c.n();
  Integer lcm = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.third(i, j, k).get_den_mpz_t());
  IntegerTensor out;
  out.n = n;
  out.t.resize(std::size_t(n) * n * n);
  Integer gcd = 0;
  std::vector<Integer> vals(out.t.size());
  for (std::size_t idx = 0; idx < vals.size(); ++idx) {
    const int i = int(idx / (std::size_t(n) * n)), j = int((idx / n) % n), k = int(idx % n);
    Rational v = c.third(i, j, k) * Rational(lcm);
    vals[idx] = v.get_num();
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), vals[idx].get_mpz_t());
  }
  for (std::size_t idx = 0; idx < vals.size(); ++idx) {
    Integer v = vals[idx] / gcd;
    if (!v.fits_slong_p()) throw Overflow("form coefficients too large for integer counting");
    out.t[idx] = v.get_si();
    out.max_abs = std::max(out.max_abs, std::abs(out.t[idx]));
  }
  if (out.max_abs > (1LL << 30)) throw Overflow("form coefficients too large for integer counting");
  return out;
}

}  // namespace cubiclab

#endif  // CUBICLAB_FORMS_HPP
