#include <gtest/gtest.h>

#include <cubiclab/minors.hpp>

#include "oracles.hpp"

using namespace cubiclab;

namespace {

std::vector<Rational> q(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Matrix<double> random_float(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> g;
  Matrix<double> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = g(rng);
  return m;
}

// Lagrange interpolation of s -> f(s) from s = 0..deg, differentiated at 0.
Rational derivative_at_zero(const std::vector<Rational>& f) {
  const int d = int(f.size()) - 1;
  Rational total = 0;
  for (int i = 0; i <= d; ++i) {
    // d/ds prod_{j != i} (s - j)/(i - j) at s = 0
    Rational denom = 1;
    for (int j = 0; j <= d; ++j)
      if (j != i) denom *= (i - j);
    Rational num = 0;
    for (int skip = 0; skip <= d; ++skip) {
      if (skip == i) continue;
      Rational p = 1;
      for (int j = 0; j <= d; ++j)
        if (j != i && j != skip) p *= -j;
      num += p;
    }
    total += f[i] * num / denom;
  }
  return total;
}

}  // namespace

TEST(IndexTuples, Examples) {
  auto a = index_tuples(1, 3);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[2], std::vector<int>{2});
  auto b = index_tuples(2, 3);
  EXPECT_EQ(b.tuples, (std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}}));
  auto c = index_tuples(3, 5);
  ASSERT_EQ(c.size(), 10u);
  EXPECT_EQ(c[0], (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(c[9], (std::vector<int>{2, 3, 4}));
  EXPECT_THROW(index_tuples(4, 3), OutOfRange);
}

TEST(IndexTuples, CompleteSortedDistinct) {
  for (int l = 1; l <= 7; ++l)
    for (int k = 1; k <= l; ++k) {
      auto s = index_tuples(k, l);
      EXPECT_EQ(s.size(), binomial(l, k));
      EXPECT_TRUE(std::is_sorted(s.tuples.begin(), s.tuples.end()));
      EXPECT_EQ(std::adjacent_find(s.tuples.begin(), s.tuples.end()), s.tuples.end());
    }
}

TEST(MinorsMatrix, Examples) {
  EXPECT_EQ(minors_matrix(Matrix<Rational>::identity(4), 2), Matrix<Rational>::identity(6));
  Matrix<Rational> m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(minors_matrix(m, 2), (Matrix<Rational>{{-3, -6, -3}}));
  Matrix<Rational> d{{3, 0, 0}, {0, 2, 0}, {0, 0, 1}};
  EXPECT_EQ(minors_matrix(d, 2), (Matrix<Rational>{{6, 0, 0}, {0, 3, 0}, {0, 0, 2}}));
  EXPECT_THROW(minors_matrix(m, 3), OutOfRange);
}

TEST(MinorsMatrix, EntriesMatchLeibniz) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = oracle::random_int_matrix(rng, 5, 4, 9);
    for (int k = 1; k <= 4; ++k) {
      auto mm = minors_matrix(m, k);
      auto rt = index_tuples(k, 5), ct = index_tuples(k, 4);
      for (std::size_t a = 0; a < rt.size(); ++a)
        for (std::size_t b = 0; b < ct.size(); ++b) EXPECT_EQ(mm(a, b), oracle::leibniz_det(m.select(rt[a], ct[b])));
    }
  }
}

TEST(CauchyBinet, Examples) {
  Matrix<Rational> l{{1, 2, 3}, {4, 5, 6}}, m{{1, 0}, {0, 1}, {1, 1}};
  auto r = cauchy_binet(l, m, 2);
  EXPECT_EQ(r.compound_of_product, (Matrix<Rational>{{-6}}));
  EXPECT_TRUE(r.exact_zero());
  auto id = cauchy_binet(Matrix<Rational>::identity(3), Matrix<Rational>::identity(3), 2);
  EXPECT_EQ(id.compound_of_product, Matrix<Rational>::identity(3));
  EXPECT_TRUE(id.exact_zero());
  EXPECT_THROW(cauchy_binet(l, l, 1), DimensionMismatch);
}

TEST(CauchyBinet, RandomIntegerTriples) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    int l = int(oracle::rand_int(rng, 1, 6)), m = int(oracle::rand_int(rng, 1, 6)), n = int(oracle::rand_int(rng, 1, 6));
    int k = int(oracle::rand_int(rng, 1, std::min({l, m, n, 4})));
    auto a = oracle::random_int_matrix(rng, l, m, 9), b = oracle::random_int_matrix(rng, m, n, 9);
    auto r = cauchy_binet(a, b, k);
    ASSERT_TRUE(r.exact_zero()) << l << "x" << m << " * " << m << "x" << n << " k=" << k;
    // independent check of the left side
    auto rt = index_tuples(k, l), ct = index_tuples(k, n);
    auto ab = a * b;
    EXPECT_EQ(r.compound_of_product(0, 0), oracle::leibniz_det(ab.select(rt[0], ct[0])));
  }
}

TEST(CauchyBinet, CompoundOfOrthogonalIsOrthogonal) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(to_eigen(random_float(rng, 5, 5)));
    Matrix<double> o = from_eigen(qr.householderQ() * Eigen::MatrixXd::Identity(5, 5));
    for (int k = 1; k <= 4; ++k) {
      auto p = minors_matrix(o.transpose(), k) * minors_matrix(o, k);
      auto id = Matrix<double>::identity(p.rows());
      EXPECT_LT((p - id).sup_norm(), 1e-9);
    }
  }
}

TEST(MinorsVector, Examples) {
  auto c = oracle::fermat(3);
  auto v1 = minors_vector<Rational>(c, q({1, 2, 3}), 1);
  EXPECT_EQ(v1, q({6, 0, 0, 0, 12, 0, 0, 0, 18}));
  EXPECT_EQ(minors_vector<Rational>(c, q({1, 2, 3}), 3), q({1296}));
  auto z = minors_vector<Rational>(c, q({0, 0, 0}), 2);
  EXPECT_TRUE(std::all_of(z.begin(), z.end(), [](const Rational& r) { return r == 0; }));
}

TEST(MinorsVector, HomogeneousOfDegreeK) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = oracle::random_int_form(rng, 4, 9);
    auto x = oracle::random_int_vector(rng, 4, 5);
    const Rational t(3, 2);
    std::vector<Rational> tx;
    for (auto& v : x) tx.push_back(t * v);
    for (int k = 1; k <= 4; ++k) {
      auto a = minors_vector<Rational>(c, x, k), b = minors_vector<Rational>(c, tx, k);
      Rational tk = 1;
      for (int i = 0; i < k; ++i) tk *= t;
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(b[i], tk * a[i]);
    }
  }
}

TEST(MinorsJacobian, FermatTwoVariables) {
  auto c = oracle::fermat(2);
  auto j = minors_jacobian<Rational>(c, q({5, -7}), 1);
  EXPECT_EQ(j, (Matrix<Rational>{{6, 0}, {0, 0}, {0, 0}, {0, 6}}));
  EXPECT_EQ(minors_jacobian<Rational>(c, q({0, 0}), 1), j);
}

TEST(MinorsJacobian, MatchesExactInterpolation) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    auto c = oracle::random_int_form(rng, n, 9);
    auto x = oracle::random_int_vector(rng, n, 5);
    for (int k = 1; k <= n; ++k) {
      auto jac = minors_jacobian<Rational>(c, x, k);
      for (int t = 0; t < n; ++t) {
        // Delta(x + s e_t) is a polynomial of degree k in s
        std::vector<std::vector<Rational>> samples;
        for (int s = 0; s <= k; ++s) {
          auto y = x;
          y[t] += s;
          samples.push_back(minors_vector<Rational>(c, y, k));
        }
        for (std::size_t row = 0; row < jac.rows(); ++row) {
          std::vector<Rational> f;
          for (auto& s : samples) f.push_back(s[row]);
          ASSERT_EQ(jac(row, t), derivative_at_zero(f));
        }
      }
    }
  }
}

TEST(MinorsJacobian, MatchesFiniteDifferences) {
  std::mt19937_64 rng(26);
  const double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    auto c = oracle::random_int_form(rng, 3, 9).cast<double>();
    std::vector<double> x(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (auto& v : x) v = u(rng);
    for (int k = 1; k <= 3; ++k) {
      auto jac = minors_jacobian<double>(c, x, k);
      for (int t = 0; t < 3; ++t) {
        auto xp = x;
        xp[t] += h;
        auto a = minors_vector<double>(c, x, k), b = minors_vector<double>(c, xp, k);
        for (std::size_t r = 0; r < a.size(); ++r) {
          const double fd = (b[r] - a[r]) / h;
          EXPECT_LE(std::fabs(fd - jac(r, t)), 10 * h * std::max(1.0, std::fabs(jac(r, t))) * 100);
        }
      }
    }
  }
}

TEST(SingularValues, Examples) {
  auto a = singular_values(Matrix<double>{{3, 0, 0}, {0, -2, 0}, {0, 0, 1}});
  EXPECT_NEAR(a[0], 3, 1e-12);
  EXPECT_NEAR(a[1], 2, 1e-12);
  EXPECT_NEAR(a[2], 1, 1e-12);
  auto z = singular_values(Matrix<double>(3, 3));
  for (double v : z.values) EXPECT_EQ(v, 0);
  auto n = singular_values(Matrix<double>{{0, 1}, {0, 0}});
  EXPECT_NEAR(n[0], 1, 1e-12);
  EXPECT_NEAR(n[1], 0, 1e-12);
  Matrix<double> bad{{std::nan(""), 0}, {0, 1}};
  EXPECT_THROW(singular_values(bad), NonFinite);
}

TEST(SingularValues, SymmetricEqualsAbsEigenvalues) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_float(rng, 5, 5);
    auto s = m + m.transpose();
    auto sv = singular_values(s);
    auto ev = symmetric_eigenvalues(s);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(sv[i], std::fabs(ev[i]), 1e-9);
  }
}

TEST(MinorSvBounds, Examples) {
  auto r = minor_sv_bounds(Matrix<double>{{3, 0, 0}, {0, 2, 0}, {0, 0, 1}}, 2);
  EXPECT_NEAR(r.sup_minor, 6, 1e-12);
  EXPECT_NEAR(r.sv_product, 6, 1e-12);
  EXPECT_TRUE(r.pass());
  auto z = minor_sv_bounds(Matrix<double>{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}, 2);
  EXPECT_NEAR(z.sup_minor, 0, 1e-15);
  EXPECT_NEAR(z.sv_product, 0, 1e-15);
  EXPECT_TRUE(z.pass());
}

TEST(MinorSvBounds, RandomMatrices) {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 200; ++trial) {
    int r = int(oracle::rand_int(rng, 2, 6)), c = int(oracle::rand_int(rng, 2, 6));
    auto m = random_float(rng, r, c);
    for (int k = 1; k <= std::min(r, c); ++k) ASSERT_TRUE(minor_sv_bounds(m, k).pass());
  }
}

TEST(BigSubspace, Examples) {
  auto d = big_subspace(Matrix<double>{{3, 0, 0}, {0, 2, 0}, {0, 0, 1}}, 2);
  EXPECT_EQ(d.columns, (std::vector<int>{0, 1}));
  auto p = big_subspace(Matrix<double>{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, 3);
  EXPECT_EQ(p.columns, (std::vector<int>{0, 1, 2}));
  EXPECT_THROW(big_subspace(Matrix<double>{{1, 0}, {0, 0}}, 2), RankDeficient);
}

TEST(BigSubspace, SampledLowerBound) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_float(rng, 4, 4);
    for (int k = 1; k <= 4; ++k) {
      auto bs = big_subspace(m, k);
      Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(4, k);
      for (int i = 0; i < k; ++i) basis(bs.columns[i], i) = 1;
      const double lo = sampled_sup_ratio(to_eigen(m), basis, 1000, 77 + trial, true);
      EXPECT_GE(lo, bs.guaranteed() * (1 - 1e-12));
      EXPECT_GE(lo, bs.cofactor_ratio * (1 - 1e-9));
      EXPECT_GE(bs.cofactor_ratio, bs.guaranteed() * (1 - 1e-9));
    }
  }
}

TEST(SmallOrBig, Examples) {
  auto z = small_or_big(Matrix<double>(3, 3), 2, 4.0);
  ASSERT_TRUE(std::holds_alternative<SmallSpace>(z));
  EXPECT_EQ(std::get<SmallSpace>(z).basis.cols(), 2u);
  EXPECT_EQ(std::get<SmallSpace>(z).measured_max_ratio, 0);
  EXPECT_TRUE(std::holds_alternative<BigSubspace>(small_or_big(Matrix<double>::identity(3), 1, 2.0)));
  auto t = small_or_big(Matrix<double>{{1, 0, 0}, {0, 1e-6, 0}, {0, 0, 1e-6}}, 2, 1e3);
  ASSERT_TRUE(std::holds_alternative<SmallSpace>(t));
  EXPECT_EQ(std::get<SmallSpace>(t).basis.cols(), 2u);
  EXPECT_THROW(small_or_big(Matrix<double>::identity(3), 1, 0.5), OutOfRange);
}

TEST(SmallOrBig, CertificatesHold) {
  std::mt19937_64 rng(30);
  std::uniform_real_distribution<double> scale(-8, 1);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(to_eigen(random_float(rng, 4, 4)));
    Eigen::MatrixXd o = qr.householderQ();
    Eigen::VectorXd d(4);
    for (int i = 0; i < 4; ++i) d(i) = std::pow(10.0, scale(rng));
    Matrix<double> m = from_eigen(o * d.asDiagonal() * o.transpose());
    for (int k = 1; k <= 4; ++k) {
      auto r = small_or_big(m, k, 10.0);
      if (auto* s = std::get_if<SmallSpace>(&r)) {
        EXPECT_TRUE(s->verified());
        EXPECT_LE(s->certified_bound(), 0.1 * (1 + 1e-12));
      } else {
        auto& b = std::get<BigSubspace>(r);
        EXPECT_GT(std::sqrt(4.0) * b.lambda_k, 0.1);
      }
    }
  }
}
