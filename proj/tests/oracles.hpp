// Independent reference computations used by the test suites. Nothing here
// calls into the library beyond evaluating a form at a point.
#pragma once

#include <cubiclab/forms.hpp>
#include <cubiclab/matrix.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using cubiclab::Matrix;
using cubiclab::Rational;

/// Leibniz expansion over all permutations.
template <class S>
S leibniz_det(const Matrix<S>& m) {
  const int n = int(m.rows());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  S total(0);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inv;
    S term(1);
    for (int i = 0; i < n; ++i) term *= m(i, p[i]);
    total += (inv % 2) ? S(-term) : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Mixed third difference Delta_i Delta_j Delta_k c at 0 with unit steps. For
/// a cubic polynomial this equals d^3 c / dx_i dx_j dx_k exactly.
inline Rational third_difference(const cubiclab::ExactForm& c, int i, int j, int k) {
  const int n = c.n();
  Rational acc = 0;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int d = 0; d <= 1; ++d) {
        std::vector<Rational> x(n, Rational(0));
        x[i] += a;
        x[j] += b;
        x[k] += d;
        const int sign = ((3 - a - b - d) % 2) ? -1 : 1;
        acc += sign * c.eval(x);
      }
  return acc;
}

inline Rational sup_norm_by_differences(const cubiclab::ExactForm& c) {
  Rational m = 0;
  for (int i = 0; i < c.n(); ++i)
    for (int j = 0; j < c.n(); ++j)
      for (int k = 0; k < c.n(); ++k) m = std::max(m, Rational(abs(third_difference(c, i, j, k))));
  return m / 6;
}

/// Central second differences; exact for cubics since all fourth derivatives vanish.
inline Matrix<Rational> raw_hessian_by_differences(const cubiclab::ExactForm& c, const std::vector<Rational>& x) {
  const int n = c.n();
  Matrix<Rational> h(n, n);
  auto at = [&](int i, int si, int j, int sj) {
    std::vector<Rational> y = x;
    y[i] += si;
    y[j] += sj;
    return c.eval(y);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / 4;
  return h;
}

inline Matrix<Rational> hessian_by_differences(const cubiclab::ExactForm& c, const std::vector<Rational>& x) {
  return (1 / sup_norm_by_differences(c)) * raw_hessian_by_differences(c, x);
}

inline long rand_int(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// a/b in canonical form (the two-argument mpq constructor does not reduce).
inline Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline Matrix<Rational> random_int_matrix(std::mt19937_64& rng, int rows, int cols, int range) {
  Matrix<Rational> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rand_int(rng, -range, range);
  return m;
}

inline std::vector<Rational> random_int_vector(std::mt19937_64& rng, int n, int range) {
  std::vector<Rational> v(n);
  for (auto& x : v) x = rand_int(rng, -range, range);
  return v;
}

/// Random nonzero integer cubic with coefficients in [-range, range].
inline cubiclab::ExactForm random_int_form(std::mt19937_64& rng, int n, int range, double density = 0.7) {
  std::bernoulli_distribution keep(density);
  while (true) {
    std::map<cubiclab::Monomial, Rational> co;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k)
          if (keep(rng)) {
            long v = rand_int(rng, -range, range);
            if (v) co[{i, j, k}] = v;
          }
    if (!co.empty()) return cubiclab::ExactForm(n, co);
  }
}

inline cubiclab::ExactForm fermat(int n) {
  std::vector<Rational> a(n, Rational(1));
  return cubiclab::ExactForm::diagonal(a);
}

}  // namespace oracle
