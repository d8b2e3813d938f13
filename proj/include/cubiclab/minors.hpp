#pragma once
#ifndef CUBICLAB_MINORS_HPP
#define CUBICLAB_MINORS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "cubiclab/forms.hpp"
#include "cubiclab/matrix.hpp"

namespace cubiclab {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
  return r;
}

/// Strictly increasing k-tuples from {0..l-1}, in lexicographic order. This
/// is the fixed order used for every vector or matrix of minors.
struct IndexTupleSet {
  int k = 0;
  int l = 0;
  std::vector<std::vector<int>> tuples;

  std::size_t size() const noexcept { return tuples.size(); }
  const std::vector<int>& operator[](std::size_t i) const { return tuples[i]; }
};

inline IndexTupleSet index_tuples(int k, int l) {
  if (k < 0 || l < 0 || k > l) throw OutOfRange("index tuples need 0 <= k <= l");
  IndexTupleSet set{k, l, {}};
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    set.tuples.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == l - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return set;
}

/// The k-th compound matrix: entry (a, b) is the determinant of rows a and
/// columns b, with a and b running over index_tuples in lex order.
template <Scalar S>
Matrix<S> minors_matrix(const Matrix<S>& m, int k) {
  if (k < 1 || std::size_t(k) > std::min(m.rows(), m.cols()))
    throw OutOfRange("minor size k = " + std::to_string(k) + " out of range");
  const auto rows = index_tuples(k, int(m.rows()));
  const auto cols = index_tuples(k, int(m.cols()));
  Matrix<S> out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) out(a, b) = determinant(m.select(rows[a], cols[b]));
  return out;
}

template <Scalar S>
struct CauchyBinetCheck {
  Matrix<S> compound_of_product;   // (LM)^(k)
  Matrix<S> product_of_compounds;  // L^(k) M^(k)
  Matrix<S> difference;
  bool exact_zero() const { return difference.is_zero(); }
};

template <Scalar S>
CauchyBinetCheck<S> cauchy_binet(const Matrix<S>& l, const Matrix<S>& m, int k) {
  if (l.cols() != m.rows()) throw DimensionMismatch("L columns must equal M rows");
  if (k < 1 || std::size_t(k) > std::min({l.rows(), l.cols(), m.cols()}))
    throw OutOfRange("k out of range for Cauchy-Binet");
  CauchyBinetCheck<S> r;
  r.compound_of_product = minors_matrix(l * m, k);
  r.product_of_compounds = minors_matrix(l, k) * minors_matrix(m, k);
  r.difference = r.compound_of_product - r.product_of_compounds;
  return r;
}

/// All k x k minors of H_c(x), flattened lexicographically in
/// (row-tuple, col-tuple); length binom(n,k)^2.
template <Scalar S>
Vector<S> minors_vector(const CubicForm<S>& c, std::span<const S> x, int k) {
  if (k < 1 || k > c.n()) throw OutOfRange("minor size out of range");
  return minors_matrix(c.hessian(x), k).data();
}

/// Jacobian of the minors vector: column t is d Delta^(k) / dx_t at x.
///
/// H_c is linear in x, so d/dx_t of det(H[a,b]) is the sum over columns j of
/// det(H[a,b] with column j taken from H_c(e_t)[a,b]).
template <Scalar S>
Matrix<S> minors_jacobian(const CubicForm<S>& c, std::span<const S> x, int k) {
  const int n = c.n();
  if (k < 1 || k > n) throw OutOfRange("minor size out of range");
  const Matrix<S> h = c.hessian(x);
  std::vector<Matrix<S>> dir;
  for (int t = 0; t < n; ++t) {
    Vector<S> e(n, S(0));
    e[t] = S(1);
    dir.push_back(c.hessian(e));
  }
  const auto tuples = index_tuples(k, n);
  const std::size_t len = tuples.size();
  Matrix<S> jac(len * len, n);
  for (std::size_t a = 0; a < len; ++a)
    for (std::size_t b = 0; b < len; ++b) {
      const Matrix<S> sub = h.select(tuples[a], tuples[b]);
      for (int t = 0; t < n; ++t) {
        const Matrix<S> dsub = dir[t].select(tuples[a], tuples[b]);
        if (dsub.is_zero()) continue;
        S acc(0);
        for (int j = 0; j < k; ++j) {
          Matrix<S> rep = sub;
          for (int i = 0; i < k; ++i) rep(i, j) = dsub(i, j);
          acc += determinant(std::move(rep));
        }
        jac(a * len + b, t) = acc;
      }
    }
  return jac;
}

/// Singular values in descending order.
struct SingularSpectrum {
  std::vector<double> values;
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const noexcept { return values.size(); }
  /// Lambda_1 ... Lambda_k.
  double leading_product(int k) const {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= values[i];
    return p;
  }
};

template <Scalar S>
SingularSpectrum singular_values(const Matrix<S>& m) {
  const Eigen::MatrixXd e = to_eigen(m);
  if (!e.allFinite()) throw NonFinite("matrix has non-finite entries");
  SingularSpectrum s;
  if (e.size() == 0) return s;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  const auto& sv = svd.singularValues();
  s.values.assign(sv.data(), sv.data() + sv.size());
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  // Lambda_i for i beyond min(rows, cols) are zero.
  s.values.resize(m.cols(), 0.0);
  return s;
}

/// Eigenvalues of a symmetric matrix sorted by decreasing absolute value.
template <Scalar S>
std::vector<double> symmetric_eigenvalues(const Matrix<S>& h) {
  const Eigen::MatrixXd e = to_eigen(h);
  if (!e.allFinite()) throw NonFinite("matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::stable_sort(v.begin(), v.end(), [](double a, double b) { return std::fabs(a) > std::fabs(b); });
  return v;
}

/// Two-sided comparison between the largest k x k minor and Lambda_1...Lambda_k:
///   Lambda_1...Lambda_k <= sqrt(binom(m,k) binom(n,k)) * ||Delta^(k)||
///   ||Delta^(k)||       <= sqrt(binom(n,k)) * Lambda_1...Lambda_k
/// Both follow from sum of squared minors = e_k(Lambda_1^2, ..., Lambda_n^2).
struct MinorSvBounds {
  int k = 0;
  double sup_minor = 0;
  double sv_product = 0;
  double lower_const = 0;  // sqrt(binom(m,k) binom(n,k))
  double upper_const = 0;  // sqrt(binom(n,k))
  bool lower_ok = false;
  bool upper_ok = false;
  bool pass() const { return lower_ok && upper_ok; }
};

template <Scalar S>
MinorSvBounds minor_sv_bounds(const Matrix<S>& m, int k, double rel_tol = 1e-9) {
  if (k < 1 || std::size_t(k) > std::min(m.rows(), m.cols())) throw OutOfRange("k out of range");
  MinorSvBounds r;
  r.k = k;
  r.sup_minor = to_double(minors_matrix(m, k).sup_norm());
  r.sv_product = singular_values(m).leading_product(k);
  r.lower_const = std::sqrt(double(binomial(int(m.rows()), k)) * double(binomial(int(m.cols()), k)));
  r.upper_const = std::sqrt(double(binomial(int(m.cols()), k)));
  const double scale = std::max({r.sup_minor, r.sv_product, 1e-300});
  r.lower_ok = r.sv_product <= r.lower_const * r.sup_minor + rel_tol * scale;
  r.upper_ok = r.sup_minor <= r.upper_const * r.sv_product + rel_tol * scale;
  return r;
}

/// A span of k standard basis vectors on which M is large:
///   ||M v||_inf >= kappa * Lambda_k * ||v||_inf.
/// The columns are those of a k x k minor of maximal magnitude (first in lex
/// order on ties). Expanding that minor along the column replaced by M v gives
///   ||M v||_inf >= ||Delta^(k)|| / (k ||Delta^(k-1)||) * ||v||_inf
/// (`cofactor_ratio`), and the minor/singular value bounds turn this into
///   kappa = 1 / (k sqrt(binom(m,k) binom(n,k) binom(n,k-1))).
struct BigSubspace {
  std::vector<int> columns;  // 0-based standard basis indices
  std::vector<int> rows;     // rows of the maximal minor
  double lambda_k = 0;
  double kappa = 0;
  double cofactor_ratio = 0;
  double guaranteed() const { return kappa * lambda_k; }
};

template <Scalar S>
BigSubspace big_subspace(const Matrix<S>& m, int k) {
  const int rows = int(m.rows()), cols = int(m.cols());
  if (k < 1 || k > std::min(rows, cols)) throw OutOfRange("k out of range for big_subspace");
  const Matrix<double> md = m.template cast<double>();
  const auto sv = singular_values(md);
  const double lam_k = sv[k - 1];
  if (!(lam_k > 1e-12 * std::max(1.0, sv[0]))) throw RankDeficient("Lambda_k vanishes; no big subspace");
  const auto rt = index_tuples(k, rows);
  const auto ct = index_tuples(k, cols);
  double best = -1;
  BigSubspace out;
  for (const auto& b : ct.tuples)
    for (const auto& a : rt.tuples) {
      const double d = std::fabs(determinant(md.select(a, b)));
      if (d > best) {
        best = d;
        out.columns = b;
        out.rows = a;
      }
    }
  double sup_prev = 1.0;
  if (k > 1) sup_prev = minors_matrix(md, k - 1).sup_norm();
  out.lambda_k = lam_k;
  out.kappa = 1.0 / (k * std::sqrt(double(binomial(rows, k)) * double(binomial(cols, k)) *
                                   double(binomial(cols, k - 1))));
  out.cofactor_ratio = sup_prev > 0 ? best / (k * sup_prev) : 0.0;
  return out;
}

/// Span of the right singular vectors for Lambda_k..Lambda_n; on it
/// ||M X||_inf <= sqrt(n) * Lambda_k * ||X||_inf.
struct SmallSpace {
  Matrix<double> basis;  // n x (n-k+1), orthonormal columns
  double lambda_k = 0;
  double norm_factor = 0;  // sqrt(n)
  double measured_max_ratio = 0;
  double certified_bound() const { return norm_factor * lambda_k; }
  bool verified() const { return measured_max_ratio <= certified_bound() * (1 + 1e-9) + 1e-12; }
};

/// Orthonormal right singular vectors of M (columns of V), descending order.
template <Scalar S>
Eigen::MatrixXd right_singular_vectors(const Matrix<S>& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m), Eigen::ComputeFullV);
  return svd.matrixV();
}

/// Max of ||M v||_inf / ||v||_inf over the basis vectors and `samples` random
/// combinations of the columns of `basis`.
inline double sampled_sup_ratio(const Eigen::MatrixXd& m, const Eigen::MatrixXd& basis, int samples,
                                std::uint64_t seed, bool minimum = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double best = minimum ? std::numeric_limits<double>::infinity() : 0.0;
  auto consider = [&](const Eigen::VectorXd& v) {
    const double vn = v.cwiseAbs().maxCoeff();
    if (vn == 0) return;
    const double r = (m * v).cwiseAbs().maxCoeff() / vn;
    best = minimum ? std::min(best, r) : std::max(best, r);
  };
  for (Eigen::Index j = 0; j < basis.cols(); ++j) consider(basis.col(j));
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd g(basis.cols());
    for (Eigen::Index j = 0; j < g.size(); ++j) g(j) = u(rng);
    consider(basis * g);
  }
  return best;
}

using SmallOrBig = std::variant<SmallSpace, BigSubspace>;

/// For C >= 1, returns SmallSpace when sqrt(n) Lambda_k <= 1/C (so M is
/// at most 1/C on an (n-k+1)-dimensional space) and BigSpace otherwise, where
/// Lambda_k > 1/(C sqrt(n)) makes the big-subspace bound kappa/(C sqrt(n)).
template <Scalar S>
SmallOrBig small_or_big(const Matrix<S>& m, int k, double C, int samples = 256) {
  const int n = int(m.cols());
  if (k < 1 || k > n) throw OutOfRange("k out of range for small_or_big");
  if (!(C >= 1)) throw OutOfRange("C must be >= 1");
  const auto sv = singular_values(m);
  const double lam_k = sv[k - 1];
  if (std::sqrt(double(n)) * lam_k <= 1.0 / C) {
    SmallSpace s;
    const Eigen::MatrixXd v = right_singular_vectors(m);
    s.basis = from_eigen(v.rightCols(n - k + 1));
    s.lambda_k = lam_k;
    s.norm_factor = std::sqrt(double(n));
    s.measured_max_ratio = sampled_sup_ratio(to_eigen(m), v.rightCols(n - k + 1), samples, 0x5eed);
    return s;
  }
  return big_subspace(m, k);
}

}  // namespace cubiclab

#endif  // CUBICLAB_MINORS_HPP
