#pragma once
#ifndef CUBICLAB_DAVENPORT_HPP
#define CUBICLAB_DAVENPORT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cubiclab/counting.hpp"
#include "cubiclab/covering.hpp"
#include "cubiclab/minors.hpp"

namespace cubiclab {

/// Davenport's vectors at x0 for rank parameter b. After permuting rows and
/// columns so that the largest b x b minor D of H_c(x0) sits in the lower
/// right corner (positions R = n-b..n-1), for i < n-b
///   y'_i = (-1)^{n-b} D,   y'_j = (-1)^{j+1} det A[R; i, R \ j] (j in R),   0 otherwise
/// (0-based j), so that (A y')_a = (-1)^{n-b} det A[a, R; i, R] for a < n-b and 0
/// for a in R. The vectors are stored in the original coordinates.
template <Scalar S>
struct DavenportSystem {
  int n = 0, b = 0;
  std::vector<int> row_perm, col_perm;  // position -> original index
  std::vector<int> minor_rows, minor_cols;
  S delta = S(0);       // signed lower-right determinant after permuting
  S delta_norm = S(0);  // ||Delta^(b)(x0)||
  std::vector<Vector<S>> y;

  // filled by build_Y_basis
  bool completed = false;
  std::vector<Vector<S>> Y;  // Y^(i) = sign * y^(i) / ||Delta^(b)||, original coordinates
  Matrix<S> Q;               // (Y'^(1) .. Y'^(n-b) e_{n-b+1} .. e_n) in the permuted frame
  Matrix<S> Q_inv;
  S det_Q = S(0);
  int sign = 1;  // -1 when the Y^(i) were negated to make det Q = 1
  bool q_entries_ok = false;
  bool det_ok = false;
  double q_inv_max_entry = 0;
  double gamma_bound = 0;  // max row sum of the first n-b rows of Q^-1

  Vector<S> to_frame(const Vector<S>& v) const {
    Vector<S> out(n);
    for (int l = 0; l < n; ++l) out[l] = v[col_perm[l]];
    return out;
  }
  /// gamma with v = sum gamma_i Y^(i), for v in the span.
  Vector<S> coefficients(const Vector<S>& v) const {
    const auto g = Q_inv.apply(to_frame(v));
    return Vector<S>(g.begin(), g.begin() + (n - b));
  }
  Matrix<double> Y_matrix() const {
    Matrix<double> m(n, n - b);
    for (int i = 0; i < n - b; ++i)
      for (int j = 0; j < n; ++j) m(j, i) = to_double(Y[i][j]);
    return m;
  }
};

namespace detail {

inline std::vector<int> complement_then(const std::vector<int>& tail, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (std::find(tail.begin(), tail.end(), i) == tail.end()) out.push_back(i);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

template <Scalar S>
S frame_det(const Matrix<S>& h, const DavenportSystem<S>& d, const std::vector<int>& rows,
            const std::vector<int>& cols) {
  std::vector<int> r, c;
  for (int a : rows) r.push_back(d.row_perm[a]);
  for (int l : cols) c.push_back(d.col_perm[l]);
  return determinant(h.select(r, c));
}

template <Scalar S>
bool negligible_minor(const S& v, const Matrix<S>& h, int b) {
  if constexpr (is_exact_v<S>) {
    return is_zero(v);
  } else {
    const double scale = std::pow(std::max(1.0, h.sup_norm()), b);
    return std::fabs(v) <= 1e-9 * h.rows() * scale;
  }
}

/// Construction from a given matrix; with `allow_vanishing` an all-zero set of
/// b x b minors keeps the identity permutation (every y is then zero).
template <Scalar S>
DavenportSystem<S> davenport_from_matrix(const Matrix<S>& h, int b, bool allow_vanishing) {
  const int n = int(h.rows());
  if (b < 1 || b > n - 1) throw OutOfRange("b must lie in 1..n-1");
  DavenportSystem<S> d;
  d.n = n;
  d.b = b;
  const auto mm = minors_matrix(h, b);
  const auto tup = index_tuples(b, n);
  std::size_t br = 0, bc = 0;
  for (std::size_t r = 0; r < mm.rows(); ++r)
    for (std::size_t c = 0; c < mm.cols(); ++c)
      if (abs_value(mm(r, c)) > abs_value(mm(br, bc))) {
        br = r;
        bc = c;
      }
  d.delta_norm = abs_value(mm(br, bc));
  if (negligible_minor(d.delta_norm, h, b)) {
    if (!allow_vanishing) throw VanishingMinor("Delta^(b)(x0) vanishes");
    br = bc = tup.size() - 1;  // the lower-right tuple: identity permutation
  }
  d.minor_rows = tup[br];
  d.minor_cols = tup[bc];
  d.row_perm = complement_then(d.minor_rows, n);
  d.col_perm = complement_then(d.minor_cols, n);

  std::vector<int> R;
  for (int j = n - b; j < n; ++j) R.push_back(j);
  d.delta = frame_det(h, d, R, R);
  const S head = ((n - b) % 2) ? S(-d.delta) : d.delta;
  for (int i = 0; i < n - b; ++i) {
    Vector<S> yp(n, S(0));
    yp[i] = head;
    for (int j : R) {
      std::vector<int> cols{i};
      for (int l : R)
        if (l != j) cols.push_back(l);
      const S m = frame_det(h, d, R, cols);
      yp[j] = (j % 2 == 0) ? S(-m) : m;  // (-1)^{j+1} with 0-based j
    }
    Vector<S> yo(n);
    for (int l = 0; l < n; ++l) yo[d.col_perm[l]] = yp[l];
    d.y.push_back(std::move(yo));
  }
  return d;
}

}  // namespace detail

/// The n-b vectors y^(i)(x0). Throws VanishingMinor when Delta^(b)(x0) = 0.
template <Scalar S>
DavenportSystem<S> build_y_vectors(const CubicForm<S>& c, std::span<const S> x0, int b) {
  if (c.is_zero()) throw ZeroForm("Davenport construction for the zero form");
  return detail::davenport_from_matrix(c.hessian(x0), b, false);
}

/// Normalizes y^(i) into Y^(i) and assembles Q; the common sign of the Y^(i)
/// is chosen so that det Q = 1.
template <Scalar S>
DavenportSystem<S> build_Y_basis(const CubicForm<S>& c, std::span<const S> x0, int b) {
  auto d = build_y_vectors(c, x0, b);
  const int n = d.n;
  const S head = ((n - b) % 2) ? S(-d.delta) : d.delta;
  d.sign = head < S(0) ? -1 : 1;
  const S scale = S(d.sign) / d.delta_norm;
  d.Q = Matrix<S>(n, n);
  for (int i = 0; i < n - b; ++i) {
    Vector<S> v = d.y[i];
    for (auto& t : v) t *= scale;
    const auto vf = d.to_frame(v);
    for (int l = 0; l < n; ++l) d.Q(l, i) = vf[l];
    d.Y.push_back(std::move(v));
  }
  for (int j = n - b; j < n; ++j) d.Q(j, j) = S(1);
  d.det_Q = determinant(d.Q);
  d.Q_inv = inverse(d.Q);
  if constexpr (is_exact_v<S>) {
    d.det_ok = d.det_Q == 1;
    d.q_entries_ok = d.Q.sup_norm() <= 1;
  } else {
    d.det_ok = std::fabs(d.det_Q - 1.0) <= 1e-9;
    d.q_entries_ok = d.Q.sup_norm() <= 1.0 + 1e-12;
  }
  d.q_inv_max_entry = to_double(d.Q_inv.sup_norm());
  for (int i = 0; i < n - b; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += std::fabs(to_double(d.Q_inv(i, j)));
    d.gamma_bound = std::max(d.gamma_bound, s);
  }
  d.completed = true;
  return d;
}

// ---------------------------------------------------------------------------

struct HyReport {
  int trials = 0;
  int passed = 0;
  int vanishing = 0;   // trials where every b x b minor was zero
  long entries = 0;    // componentwise comparisons made
  std::string first_failure;
  bool pass() const { return passed == trials; }
};

/// Checks H_c(x) y^(i)(x) against the stated (b+1) x (b+1) minors at random
/// integer points x in [-range, range]^n, in exact arithmetic.
inline HyReport verify_Hy_identity(const ExactForm& c, int b, int trials, std::uint64_t seed = 1, long range = 9) {
  const int n = c.n();
  if (b < 1 || b > n - 1) throw OutOfRange("b must lie in 1..n-1");
  if (c.is_zero()) throw ZeroForm("identity check for the zero form");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> u(-range, range);
  HyReport r;
  for (int t = 0; t < trials; ++t) {
    Vector<Rational> x(n);
    for (auto& v : x) v = u(rng);
    const auto h = c.hessian(x);
    const auto d = detail::davenport_from_matrix(h, b, true);
    if (is_zero(d.delta_norm)) ++r.vanishing;
    bool ok = true;
    std::vector<int> R;
    for (int j = n - b; j < n; ++j) R.push_back(j);
    for (int i = 0; i < n - b && ok; ++i) {
      const auto hy = h.apply(d.y[i]);
      for (int a = 0; a < n; ++a) {
        Rational expected = 0;
        if (a < n - b) {
          std::vector<int> rows{a}, cols{i};
          rows.insert(rows.end(), R.begin(), R.end());
          cols.insert(cols.end(), R.begin(), R.end());
          expected = detail::frame_det(h, d, rows, cols);
          if ((n - b) % 2) expected = -expected;
        }
        ++r.entries;
        if (hy[d.row_perm[a]] != expected) {
          ok = false;
          if (r.first_failure.empty())
            r.first_failure = "trial " + std::to_string(t) + ", vector " + std::to_string(i) + ", row " +
                              std::to_string(d.row_perm[a]);
          break;
        }
      }
    }
    ++r.trials;
    if (ok) ++r.passed;
  }
  return r;
}

/// Constant in |Y^(i)T H(t) Y^(j)| <= kappa (||J^(b+1)(x0) t|| / ||Delta^(b)|| + |lambda_{b+1}| ||t|| / |lambda_b|).
/// The first term of the derivative identity contributes (b+1); the second
/// n * c1 * c2 with c1 = sqrt(binom(n,b+1)) binom(n,b) bounding
/// ||Delta^(b+1)|| / (||Delta^(b)|| |lambda_{b+1}|) and c2 = 6 n b^2 sqrt(binom(n,b-1)) binom(n,b)
/// bounding ||d_t Delta^(b)|| |lambda_b| / (||Delta^(b)|| ||t||).
inline double davenport_kappa(int n, int b) {
  const double bnb = double(binomial(n, b));
  const double c1 = std::sqrt(double(binomial(n, b + 1))) * bnb;
  const double c2 = 6.0 * n * b * b * std::sqrt(double(binomial(n, b - 1))) * bnb;
  return std::max(double(b + 1), n * c1 * c2);
}

struct TrilinearReport {
  int samples = 0;
  double max_ratio = 0;
  double ratio_at_x0 = 0;
  double kappa = 0;
  bool pass() const { return max_ratio <= kappa; }
};

/// Samples t (x0 itself, then uniform in [-1, 1]^n) and reports the largest
/// |Y^(i)T H_c(t) Y^(j)| divided by the right-hand side of the trilinear bound.
template <Scalar S>
TrilinearReport trilinear_bound_check(const CubicForm<S>& c, std::span<const S> x0, int b, int samples,
                                      std::uint64_t seed = 7) {
  const auto d = build_Y_basis(c, x0, b);
  const int n = c.n();
  const auto lam = symmetric_eigenvalues(c.hessian(x0));
  const double lb = std::fabs(lam[b - 1]), lb1 = std::fabs(lam[b]);
  if (!(lb > 1e-9 * n * std::max(1.0, std::fabs(lam[0])))) throw ZeroEigenvalue("lambda_b(x0) vanishes");
  const auto fc = c.template cast<double>();
  std::vector<double> xd;
  for (const auto& v : x0) xd.push_back(to_double(v));
  const Matrix<double> jac = minors_jacobian<double>(fc, xd, b + 1);
  const double dnorm = to_double(d.delta_norm);
  const Matrix<double> Ym = d.Y_matrix();

  TrilinearReport r;
  r.kappa = davenport_kappa(n, b);
  auto ratio_at = [&](const std::vector<double>& t) {
    const Matrix<double> g = Ym.transpose() * fc.hessian(t) * Ym;
    const double lhs = g.sup_norm();
    const double rhs = sup_norm(std::span<const double>(jac.apply(t))) / dnorm +
                       lb1 * sup_norm(std::span<const double>(t)) / lb;
    if (lhs == 0) return 0.0;
    if (rhs == 0) return std::numeric_limits<double>::infinity();
    return lhs / rhs;
  };
  r.ratio_at_x0 = ratio_at(xd);
  r.max_ratio = r.ratio_at_x0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    std::vector<double> t(n);
    for (auto& v : t) v = u(rng);
    r.max_ratio = std::max(r.max_ratio, ratio_at(t));
  }
  r.samples = samples + 1;
  return r;
}

// ---------------------------------------------------------------------------

/// Subspaces X, Y with |Y^T H_c(X) Y'| <= (kappa / C) ||Y|| ||X|| ||Y'||.
struct SubspacePair {
  Matrix<double> X, Y;  // bases as columns
  std::optional<Matrix<Rational>> X_exact, Y_exact;
  std::string source;   // "II" or "III"
  int b = 0;
  double C = 1;
  double kappa = 0;
  double measured = 0;  // sampled max of |Y^T H(X) Y'| / (||Y|| ||X|| ||Y'||)
  double certified() const { return kappa / C; }
  bool verified() const { return measured <= certified() * (1 + 1e-9) + 1e-12; }
  std::size_t dim_sum() const { return X.cols() + Y.cols(); }
};

template <Scalar S>
double measure_pair(const CubicForm<S>& c, const Matrix<double>& X, const Matrix<double>& Y, int samples,
                    std::uint64_t seed = 99) {
  const auto fc = c.template cast<double>();
  const int n = c.n();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto combo = [&](const Matrix<double>& basis) {
    std::vector<double> v(n, 0.0);
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      const double g = u(rng);
      for (int i = 0; i < n; ++i) v[i] += g * basis(i, j);
    }
    return v;
  };
  auto ratio = [&](const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& yp) {
    const double nx = sup_norm(std::span<const double>(x)), ny = sup_norm(std::span<const double>(y)),
                 nyp = sup_norm(std::span<const double>(yp));
    if (nx == 0 || ny == 0 || nyp == 0) return 0.0;
    const auto hy = fc.hessian(x).apply(yp);
    double s = 0;
    for (int i = 0; i < n; ++i) s += y[i] * hy[i];
    return std::fabs(s) / (nx * ny * nyp);
  };
  double best = 0;
  for (std::size_t a = 0; a < X.cols(); ++a)
    for (std::size_t p = 0; p < Y.cols(); ++p)
      for (std::size_t q = 0; q < Y.cols(); ++q) best = std::max(best, ratio(X.column(a), Y.column(p), Y.column(q)));
  for (int s = 0; s < samples; ++s) best = std::max(best, ratio(combo(X), combo(Y), combo(Y)));
  return best;
}

enum class DichotomyKind { Bound, Pair, Inconclusive };

inline std::string_view to_string(DichotomyKind k) {
  switch (k) {
    case DichotomyKind::Bound: return "BOUND";
    case DichotomyKind::Pair: return "PAIR";
    default: return "INCONCLUSIVE";
  }
}

/// N^aux(B) against kappa B^{n+sigma} L^n with L = log2(2B).
struct BoundCertificate {
  std::uint64_t n_aux = 0;
  double kappa = 0;
  double rhs = 0;
  bool within() const { return double(n_aux) <= rhs; }
};

/// Calibrated constant of the bound alternative.
inline double bound_kappa(int n) { return std::pow(3.0, n); }

template <Scalar S>
struct DichotomyResult {
  DichotomyKind kind = DichotomyKind::Inconclusive;
  PigeonholeResult pigeon;
  DyadicClass cls;         // class handed to the trichotomy
  bool truncated = false;  // class index reduced to n - sigma - 1
  TrichotomyResult tri;
  std::optional<BoundCertificate> bound;
  std::optional<SubspacePair> pair;
  std::optional<DavenportSystem<S>> davenport;
  std::string note;
};

namespace detail {

inline DyadicClass trichotomy_class(const PigeonholeResult& p, int n, int sigma, bool& truncated) {
  DyadicClass cls = p.selected;
  if (p.branch == PigeonBranch::AllPrescribed)
    cls = DyadicClass{n - 1, std::vector<int>(cls.e.begin(), cls.e.end() - 1), std::ldexp(1.0, cls.e.back())};
  truncated = false;
  const int kmax = n - sigma - 1;
  if (cls.k > kmax) {
    truncated = true;
    cls = DyadicClass{kmax, std::vector<int>(cls.e.begin(), cls.e.begin() + kmax), std::ldexp(1.0, cls.e[kmax])};
  }
  return cls;
}

template <Scalar S>
void make_pair_from_cone(const CubicForm<S>& c, double C, DichotomyResult<S>& r, int samples) {
  const int n = c.n();
  SubspacePair p;
  p.source = "III";
  p.X = r.tri.X;
  p.X_exact = r.tri.X_exact;
  p.Y = Matrix<double>::identity(n);
  p.Y_exact = Matrix<Rational>::identity(n);
  p.C = C;
  p.kappa = double(n) * n;
  p.measured = measure_pair(c, p.X, p.Y, samples);
  r.pair = p;
  r.kind = DichotomyKind::Pair;
}

}  // namespace detail

/// Pigeonhole, then the trichotomy on the selected class (index truncated to
/// n - sigma - 1 when larger). I gives BOUND, II gives PAIR with Y from
/// Davenport's construction at the witness point, III gives PAIR with Y = R^n.
template <Scalar S>
DichotomyResult<S> dichotomy(const CubicForm<S>& c, long B, double C, int sigma,
                             Strictness st = Strictness::Strict, int samples = 256) {
  const int n = c.n();
  if (c.is_zero()) throw ZeroForm("dichotomy of the zero form");
  if (!(C >= 1)) throw OutOfRange("C must be >= 1");
  if (sigma < 0 || sigma > n - 1) throw OutOfRange("sigma must lie in 0..n-1");
  DichotomyResult<S> r;
  r.pigeon = pigeonhole(c, B, st);
  r.cls = detail::trichotomy_class(r.pigeon, n, sigma, r.truncated);

  if (C * double(B) < r.cls.E().front()) {
    if (detail::try_cone(c, C, sigma, r.tri)) {
      detail::make_pair_from_cone(c, C, r, samples);
    } else {
      r.note = "C B < E_1 for the selected class; only the cone alternative applies";
    }
    return r;
  }
  r.tri = trichotomy(c, B, C, sigma, r.cls);
  switch (r.tri.branch) {
    case TrichotomyBranch::I: {
      BoundCertificate bc;
      bc.n_aux = r.pigeon.n_aux;
      bc.kappa = bound_kappa(n);
      bc.rhs = bc.kappa * std::pow(double(B), n + sigma) * std::pow(r.pigeon.log_term, n);
      r.bound = bc;
      r.kind = DichotomyKind::Bound;
      break;
    }
    case TrichotomyBranch::III:
      detail::make_pair_from_cone(c, C, r, samples);
      break;
    case TrichotomyBranch::II: {
      const auto x0 = detail::to_point<S>(r.tri.x0);
      auto d = build_Y_basis(c, std::span<const S>(x0), r.tri.b);
      SubspacePair p;
      p.source = "II";
      p.b = r.tri.b;
      p.X = r.tri.X;
      p.Y = d.Y_matrix();
      if constexpr (is_exact_v<S>) {
        Matrix<Rational> ye(n, n - p.b);
        for (int i = 0; i < n - p.b; ++i)
          for (int j = 0; j < n; ++j) ye(j, i) = d.Y[i][j];
        p.Y_exact = ye;
      }
      p.C = C;
      const double nb = double(n - p.b);
      p.kappa = 3.0 * nb * nb * d.gamma_bound * d.gamma_bound * davenport_kappa(n, p.b);
      p.measured = measure_pair(c, p.X, p.Y, samples);
      r.davenport = std::move(d);
      r.pair = p;
      r.kind = DichotomyKind::Pair;
      break;
    }
    default:
      r.note = r.tri.note;
  }
  return r;
}

// ---------------------------------------------------------------------------

struct SingularCandidate {
  std::vector<double> y;
  std::optional<std::vector<Rational>> y_exact;
  double residual = 0;  // ||grad c(y)|| / (||c|| ||y||^2)
  bool exact_zero = false;
};

struct SingularCandidates {
  int equations = 0;  // n - dim X
  std::vector<std::vector<double>> complement;  // x^(1..equations)
  std::vector<SingularCandidate> points;
  bool exact = false;
};

namespace detail {

template <class T>
T quad_value(const Matrix<T>& q, const Vector<T>& u) {
  const auto qu = q.apply(u);
  T s(0);
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * qu[i];
  return s;
}

inline bool rational_sqrt(const Rational& v, Rational& out) {
  if (sgn(v) < 0) return false;
  mpz_class a = v.get_num(), b = v.get_den();
  if (!mpz_perfect_square_p(a.get_mpz_t()) || !mpz_perfect_square_p(b.get_mpz_t())) return false;
  mpz_class ra, rb;
  mpz_sqrt(ra.get_mpz_t(), a.get_mpz_t());
  mpz_sqrt(rb.get_mpz_t(), b.get_mpz_t());
  out = Rational(ra, rb);
  out.canonicalize();
  return true;
}

/// Roots s of a s^2 + b s + c = 0 (rational roots only for T = Rational).
/// `whole` is set when the polynomial vanishes identically.
template <class T>
std::vector<T> quadratic_roots(const T& a, const T& b, const T& c, bool& whole) {
  whole = false;
  std::vector<T> out;
  if constexpr (std::is_same_v<T, Rational>) {
    if (sgn(a) == 0) {
      if (sgn(b) != 0) out.push_back(Rational(-c / b));
      else whole = sgn(c) == 0;
      return out;
    }
    Rational r;
    if (!rational_sqrt(Rational(b * b - 4 * a * c), r)) return out;
    out.push_back(Rational((-b - r) / (2 * a)));
    if (sgn(r) != 0) out.push_back(Rational((-b + r) / (2 * a)));
  } else {
    const double scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
    if (scale == 0) {
      whole = true;
      return out;
    }
    if (std::fabs(a) <= 1e-12 * scale) {
      if (std::fabs(b) > 1e-12 * scale) out.push_back(-c / b);
      return out;
    }
    double disc = b * b - 4 * a * c;
    if (disc < -1e-12 * scale * scale) return out;
    disc = std::sqrt(std::max(0.0, disc));
    // stable form
    const double qq = -0.5 * (b + (b >= 0 ? disc : -disc));
    out.push_back(qq / a);
    if (qq != 0) out.push_back(c / qq);
  }
  return out;
}

/// Projective common zeros of the quadrics u^T Q_i u on R^dim, found on the
/// lines p + s d with p, d in {-1, 0, 1}^dim.
template <class T>
std::vector<Vector<T>> common_zeros(const std::vector<Matrix<T>>& qs, int dim, std::size_t cap) {
  std::vector<Vector<T>> found;
  auto vanishes = [&](const Vector<T>& u) {
    for (const auto& q : qs) {
      const T v = quad_value(q, u);
      if constexpr (std::is_same_v<T, Rational>) {
        if (sgn(v) != 0) return false;
      } else {
        double un = 0;
        for (double t : u) un = std::max(un, std::fabs(t));
        if (std::fabs(v) > 1e-9 * std::max(1.0, q.sup_norm()) * un * un) return false;
      }
    }
    return true;
  };
  auto normalized = [](Vector<T> u) {
    std::size_t lead = 0;
    if constexpr (std::is_same_v<T, Rational>) {
      while (lead < u.size() && sgn(u[lead]) == 0) ++lead;
    } else {
      double m = 0;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (std::fabs(u[i]) > m * (1 + 1e-9)) {
          m = std::fabs(u[i]);
          lead = i;
        }
    }
    if (lead == u.size()) return u;
    const T l = u[lead];
    for (auto& t : u) t /= l;
    return u;
  };
  auto same = [](const Vector<T>& a, const Vector<T>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if constexpr (std::is_same_v<T, Rational>) {
        if (a[i] != b[i]) return false;
      } else if (std::fabs(a[i] - b[i]) > 1e-9) {
        return false;
      }
    }
    return true;
  };
  auto add = [&](const Vector<T>& u) {
    bool nonzero = false;
    for (const auto& t : u) nonzero = nonzero || !is_zero(t);
    if (!nonzero || found.size() >= cap || !vanishes(u)) return;
    auto v = normalized(u);
    for (const auto& f : found)
      if (same(f, v)) return;
    found.push_back(std::move(v));
  };

  if (dim == 1) {
    add(Vector<T>{T(1)});
    return found;
  }
  std::vector<Vector<T>> grid;
  std::vector<int> digit(dim, -1);
  while (true) {
    Vector<T> v(dim);
    bool nz = false;
    for (int i = 0; i < dim; ++i) {
      v[i] = T(long(digit[i]));
      nz = nz || digit[i] != 0;
    }
    if (nz) grid.push_back(v);
    int i = dim - 1;
    while (i >= 0 && digit[i] == 1) digit[i--] = -1;
    if (i < 0) break;
    ++digit[i];
  }
  for (const auto& p : grid)
    for (const auto& d : grid) {
      if (found.size() >= cap) return found;
      // a = Q(d), b = 2 p^T Q d, c = Q(p) for the first quadric
      const auto& q = qs.front();
      const auto qd = q.apply(d);
      T bb(0);
      for (int i = 0; i < dim; ++i) bb += p[i] * qd[i];
      bb *= T(2);
      bool whole = false;
      auto roots = quadratic_roots<T>(quad_value(q, d), bb, quad_value(q, p), whole);
      if (whole) roots = {T(0), T(1)};
      for (const auto& s : roots) {
        Vector<T> u(dim);
        for (int i = 0; i < dim; ++i) u[i] = p[i] + s * d[i];
        add(u);
      }
      add(d);
    }
  return found;
}

template <class T>
std::vector<int> complement_coords(const Matrix<double>& X, const std::optional<Matrix<Rational>>& Xe, int n) {
  std::vector<int> out;
  if (Xe) {
    Matrix<Rational> cur = *Xe;
    std::size_t r = rank(cur.transpose());
    for (int j = 0; j < n && int(r) < n; ++j) {
      Matrix<Rational> next(n, cur.cols() + 1);
      for (int i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < cur.cols(); ++k) next(i, k) = cur(i, k);
        next(i, cur.cols()) = Rational(i == j ? 1 : 0);
      }
      const std::size_t nr = rank(next.transpose());
      if (nr > r) {
        out.push_back(j);
        cur = next;
        r = nr;
      }
    }
    return out;
  }
  Eigen::MatrixXd cur = to_eigen(X);
  auto rk = [](const Eigen::MatrixXd& m) {
    if (m.cols() == 0) return Eigen::Index(0);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-9);
    return qr.rank();
  };
  Eigen::Index r = rk(cur);
  for (int j = 0; j < n && r < n; ++j) {
    Eigen::MatrixXd next(n, cur.cols() + 1);
    next << cur, Eigen::VectorXd::Unit(n, j);
    const Eigen::Index nr = rk(next);
    if (nr > r) {
      out.push_back(j);
      cur = next;
      r = nr;
    }
  }
  return out;
}

}  // namespace detail

/// Points y of Y with y^T H_c(x^(i)) y = 0 for the coordinate vectors x^(i)
/// completing X to a basis. When X and Y make Y^T H_c(X) Y' vanish these are
/// singular points of V(c); the residual measures how far grad c(y) is from 0.
/// Exact arithmetic is used when c is exact and Y has an exact basis (rational
/// roots only); otherwise, or when that finds nothing, doubles are used.
template <Scalar S>
SingularCandidates singular_candidates(const CubicForm<S>& c, const SubspacePair& pair, std::size_t cap = 32) {
  const int n = c.n();
  const int dy = int(pair.Y.cols());
  if (dy < 1 || dy > 3) throw OutOfRange("singular_candidates needs 1 <= dim Y <= 3");
  if (c.is_zero()) throw ZeroForm("singular points of the zero form");
  SingularCandidates out;
  const auto comp = detail::complement_coords<double>(pair.X, pair.X_exact, n);
  out.equations = int(comp.size());
  for (int j : comp) {
    std::vector<double> e(n, 0.0);
    e[j] = 1;
    out.complement.push_back(e);
  }
  const double cn = to_double(c.sup_norm());

  if constexpr (is_exact_v<S>) {
    if (pair.Y_exact) {
      const Matrix<Rational>& Ye = *pair.Y_exact;
      std::vector<Matrix<Rational>> qs;
      for (int j : comp) {
        Vector<Rational> e(n, Rational(0));
        e[j] = 1;
        qs.push_back(Ye.transpose() * c.hessian(e) * Ye);
      }
      if (qs.empty()) qs.push_back(Matrix<Rational>(dy, dy));
      for (const auto& u : detail::common_zeros<Rational>(qs, dy, cap)) {
        const auto y = Ye.apply(u);
        const auto g = c.gradient(y);
        Rational gn = 0, yn = 0;
        for (const auto& t : g) gn = std::max(gn, Rational(abs(t)));
        for (const auto& t : y) yn = std::max(yn, Rational(abs(t)));
        const Rational res = gn / (c.sup_norm() * yn * yn);
        SingularCandidate sc;
        sc.y_exact = y;
        for (const auto& t : y) sc.y.push_back(t.get_d());
        sc.residual = res.get_d();
        sc.exact_zero = sgn(res) == 0;
        out.points.push_back(std::move(sc));
      }
      out.exact = true;
      if (!out.points.empty()) return out;
    }
  }

  const auto fc = c.template cast<double>();
  std::vector<Matrix<double>> qs;
  for (int j : comp) {
    std::vector<double> e(n, 0.0);
    e[j] = 1;
    qs.push_back(pair.Y.transpose() * fc.hessian(e) * pair.Y);
  }
  if (qs.empty()) qs.push_back(Matrix<double>(dy, dy));
  out.exact = false;
  for (const auto& u : detail::common_zeros<double>(qs, dy, cap)) {
    const auto y = pair.Y.apply(u);
    const auto g = fc.gradient(y);
    const double yn = sup_norm(std::span<const double>(y));
    SingularCandidate sc;
    sc.y = y;
    sc.residual = sup_norm(std::span<const double>(g)) / (cn * yn * yn);
    sc.exact_zero = false;
    out.points.push_back(std::move(sc));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SigmaDiagonal {
  int sigma = 0;
  Vector<Rational> beta;         // combination attaining the maximum
  std::vector<int> vanishing;    // coordinates where beta . a_i = 0
};

/// sigma_K for the pencil of diagonal forms sum_i a_{r,i} x_i^3: one more than
/// the largest dim Sing V(beta . c) = #{i : beta . a_i = 0} - 1 over beta with
/// beta . c nonzero. The best sets of vanishing columns are those lying in a
/// hyperplane spanned by at most R - 1 columns that misses some column.
inline SigmaDiagonal sigma_diagonal(std::span<const ExactForm> forms) {
  if (forms.empty()) throw OutOfRange("no forms given");
  const int R = int(forms.size()), n = forms[0].n();
  for (const auto& f : forms) {
    if (f.n() != n) throw DimensionMismatch("forms in different numbers of variables");
    if (!f.is_diagonal()) throw NonDiagonal("sigma_diagonal requires diagonal forms");
  }
  Matrix<Rational> A(R, n);
  for (int r = 0; r < R; ++r)
    for (int i = 0; i < n; ++i) A(r, i) = forms[r].coefficient(i, i, i);
  if (A.is_zero()) throw ZeroForm("every form is zero");

  SigmaDiagonal best;
  best.sigma = -1;
  auto try_span = [&](const std::vector<int>& gens) {
    // beta orthogonal to the generating columns
    Matrix<Rational> g(gens.size(), R);
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (int r = 0; r < R; ++r) g(a, r) = A(r, gens[a]);
    const auto ker = gens.empty() ? std::vector<Vector<Rational>>{} : kernel_basis(g);
    std::vector<Vector<Rational>> cands = ker;
    if (gens.empty())
      for (int r = 0; r < R; ++r) {
        Vector<Rational> e(R, Rational(0));
        e[r] = 1;
        cands.push_back(e);
      }
    for (const auto& beta : cands) {
      std::vector<int> zeros;
      for (int i = 0; i < n; ++i) {
        Rational s = 0;
        for (int r = 0; r < R; ++r) s += beta[r] * A(r, i);
        if (sgn(s) == 0) zeros.push_back(i);
      }
      if (int(zeros.size()) == n) continue;  // beta . c = 0
      // with gens nonempty every kernel vector vanishes on span(gens); keep the largest set
      if (int(zeros.size()) > best.sigma) {
        best.sigma = int(zeros.size());
        best.beta = beta;
        best.vanishing = zeros;
      }
    }
  };
  std::vector<int> gens;
  std::function<void(int)> rec = [&](int start) {
    try_span(gens);
    if (int(gens.size()) == R - 1) return;
    for (int i = start; i < n; ++i) {
      gens.push_back(i);
      rec(i + 1);
      gens.pop_back();
    }
  };
  rec(0);
  // dim Sing = |zeros| - 1, sigma = 1 + dim Sing
  return best;
}

}  // namespace cubiclab

#endif  // CUBICLAB_DAVENPORT_HPP
