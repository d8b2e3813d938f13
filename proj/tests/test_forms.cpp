#include <gtest/gtest.h>

#include <cubiclab/form_io.hpp>
#include <cubiclab/forms.hpp>

#include "oracles.hpp"

using namespace cubiclab;

namespace {

std::vector<Rational> q(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

ExactForm monomial(int n, int i, int j, int k, Rational a = 1) {
  ExactForm c(n);
  c.add(i, j, k, a);
  return c;
}

}  // namespace

TEST(Eval, Examples) {
  EXPECT_EQ(monomial(1, 0, 0, 0).eval(q({2})), 8);
  EXPECT_EQ(oracle::fermat(3).eval(q({1, -1, 0})), 0);
  EXPECT_EQ(monomial(2, 0, 0, 1).eval(q({3, 2})), 18);
}

TEST(Eval, DimensionMismatch) {
  EXPECT_THROW(oracle::fermat(3).eval(q({1, 2})), DimensionMismatch);
}

TEST(Eval, HomogeneousOfDegreeThree) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = oracle::random_int_form(rng, 4, 5);
    auto x = oracle::random_int_vector(rng, 4, 6);
    Rational t = oracle::frac(oracle::rand_int(rng, -7, 7), oracle::rand_int(rng, 1, 5));
    std::vector<Rational> tx;
    for (auto& v : x) tx.push_back(t * v);
    EXPECT_EQ(c.eval(tx), t * t * t * c.eval(x));
  }
}

TEST(SupNorm, Examples) {
  EXPECT_EQ(monomial(1, 0, 0, 0).sup_norm(), 1);
  EXPECT_EQ(monomial(1, 0, 0, 0, 2).sup_norm(), 2);
  EXPECT_EQ(monomial(2, 0, 0, 1).sup_norm(), Rational(1, 3));
}

TEST(SupNorm, ZeroFormRejected) {
  ExactForm z(3);
  EXPECT_TRUE(z.is_zero());
  EXPECT_THROW(z.sup_norm(), ZeroForm);
  EXPECT_THROW(z.hessian(q({1, 2, 3})), ZeroForm);
}

TEST(SupNorm, MatchesThirdDifferences) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = oracle::random_int_form(rng, 1 + trial % 4, 9);
    EXPECT_EQ(c.sup_norm(), oracle::sup_norm_by_differences(c));
  }
}

TEST(SupNorm, AbsoluteHomogeneity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = oracle::random_int_form(rng, 3, 9);
    Rational lam = oracle::frac(oracle::rand_int(rng, -20, 20), oracle::rand_int(rng, 1, 9));
    if (lam == 0) continue;
    EXPECT_EQ(c.scaled(lam).sup_norm(), abs(lam) * c.sup_norm());
  }
}

TEST(Hessian, Examples) {
  auto h = oracle::fermat(3).hessian(q({1, 2, 3}));
  EXPECT_EQ(h, (Matrix<Rational>{{6, 0, 0}, {0, 12, 0}, {0, 0, 18}}));
  EXPECT_TRUE(oracle::fermat(3).hessian(q({0, 0, 0})).is_zero());
  EXPECT_EQ(monomial(1, 0, 0, 0, 2).hessian(q({1})), (Matrix<Rational>{{6}}));
}

TEST(Hessian, MatchesCentralDifferences) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = oracle::random_int_form(rng, 1 + trial % 5, 9);
    auto x = oracle::random_int_vector(rng, c.n(), 9);
    EXPECT_EQ(c.hessian(x), oracle::hessian_by_differences(c, x));
  }
}

TEST(Hessian, LinearAndSymmetric) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = oracle::random_int_form(rng, 4, 9);
    auto x = oracle::random_int_vector(rng, 4, 9), y = oracle::random_int_vector(rng, 4, 9);
    Rational s(oracle::rand_int(rng, -5, 5)), t = oracle::frac(oracle::rand_int(rng, -5, 5), 3);
    std::vector<Rational> z(4);
    for (int i = 0; i < 4; ++i) z[i] = s * x[i] + t * y[i];
    auto h = c.hessian(z);
    EXPECT_EQ(h, s * c.hessian(x) + t * c.hessian(y));
    EXPECT_EQ(h, h.transpose());
  }
}

TEST(Hessian, EulerIdentity) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = oracle::random_int_form(rng, 1 + trial % 5, 9);
    auto x = oracle::random_int_vector(rng, c.n(), 9);
    auto hx = c.hessian(x).apply(x);
    Rational xhx = 0;
    for (int i = 0; i < c.n(); ++i) xhx += x[i] * hx[i];
    EXPECT_EQ(xhx, 6 * c.eval(x) / c.sup_norm());
  }
}

TEST(Hessian, MapRowsMatchHessian) {
  std::mt19937_64 rng(7);
  auto c = oracle::random_int_form(rng, 3, 9);
  auto x = oracle::random_int_vector(rng, 3, 9);
  auto flat = c.hessian_map().apply(x);
  auto h = c.hessian(x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(flat[i * 3 + j], h(i, j));
}

TEST(LinearCombination, Examples) {
  auto c1 = oracle::fermat(2), c2 = monomial(2, 0, 0, 1);
  std::vector<ExactForm> cs{c1, c2};
  EXPECT_EQ(linear_combination<Rational>(q({1, 0}), cs), c1);
  EXPECT_TRUE(linear_combination<Rational>(q({0, 0}), cs).is_zero());
  std::vector<ExactForm> cancel{monomial(1, 0, 0, 0), monomial(1, 0, 0, 0, -1)};
  EXPECT_TRUE(linear_combination<Rational>(q({1, 1}), cancel).is_zero());
  EXPECT_THROW(linear_combination<Rational>(q({1}), cs), DimensionMismatch);
  std::vector<ExactForm> mixed{oracle::fermat(2), oracle::fermat(3)};
  EXPECT_THROW(linear_combination<Rational>(q({1, 1}), mixed), DimensionMismatch);
}

TEST(LinearCombination, ThirdDerivativesAddLinearly) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ExactForm> cs{oracle::random_int_form(rng, 3, 9), oracle::random_int_form(rng, 3, 9)};
    auto beta = oracle::random_int_vector(rng, 2, 6);
    auto c = linear_combination<Rational>(beta, cs);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          EXPECT_EQ(c.third(i, j, k), beta[0] * cs[0].third(i, j, k) + beta[1] * cs[1].third(i, j, k));
  }
}

TEST(Trilinear, Examples) {
  auto ones = q({1, 1, 1});
  EXPECT_EQ(oracle::fermat(3).trilinear(ones, ones, ones), 18);
  EXPECT_EQ(oracle::fermat(3).trilinear(ones, q({0, 0, 0}), ones), 0);
}

TEST(Trilinear, FullySymmetric) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = oracle::random_int_form(rng, 3, 9);
    std::vector<Rational> x(3), y(3), z(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = oracle::frac(oracle::rand_int(rng, -9, 9), oracle::rand_int(rng, 1, 7));
      y[i] = oracle::frac(oracle::rand_int(rng, -9, 9), oracle::rand_int(rng, 1, 7));
      z[i] = oracle::frac(oracle::rand_int(rng, -9, 9), oracle::rand_int(rng, 1, 7));
    }
    const Rational v = c.trilinear(x, y, z);
    EXPECT_EQ(v, c.trilinear(y, x, z));
    EXPECT_EQ(v, c.trilinear(z, y, x));
    EXPECT_EQ(v, c.trilinear(x, z, y));
    EXPECT_EQ(v, c.trilinear(y, z, x));
    EXPECT_EQ(v, c.trilinear(z, x, y));
  }
}

TEST(Backends, FloatAgreesWithExact) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = oracle::random_int_form(rng, 4, 9);
    auto f = c.cast<double>();
    auto x = oracle::random_int_vector(rng, 4, 9);
    auto xd = to_double_vec<Rational>(x);
    EXPECT_NEAR(f.eval(xd), c.eval(x).get_d(), 1e-9 * (1 + std::fabs(c.eval(x).get_d())));
    auto he = c.hessian(x);
    auto hf = f.hessian(xd);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(hf(i, j), he(i, j).get_d(), 1e-9 * (1 + std::fabs(he(i, j).get_d())));
  }
}

TEST(IntegerTensor, ReproducesHessian) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = oracle::random_int_form(rng, 3, 9).scaled(Rational(2, 7));
    auto it = integer_tensor(c);
    auto x = oracle::random_int_vector(rng, 3, 9);
    auto h = c.hessian(x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        long long g = 0;
        for (int k = 0; k < 3; ++k) g += it.at(i, j, k) * x[k].get_num().get_si();
        EXPECT_EQ(h(i, j), oracle::frac(long(6 * g), long(it.max_abs)));
      }
  }
}

TEST(FormFile, ParsesAndRoundTrips) {
  const std::string text =
      "# mixed\nn 3\nR 2\nbackend exact\nform 1\n1 1 1 : 1\n2 1 1 : -3/2\n3 3 3 : 0.25\n"
      "form 2\n1 2 3 : 1e-2\n";
  auto f = parse_form_text(text);
  ASSERT_EQ(f.n, 3);
  ASSERT_EQ(f.R(), 2);
  EXPECT_EQ(f.forms[0].coefficient(0, 0, 1), Rational(-3, 2));
  EXPECT_EQ(f.forms[0].coefficient(2, 2, 2), Rational(1, 4));
  EXPECT_EQ(f.forms[1].coefficient(2, 1, 0), Rational(1, 100));
  auto g = parse_form_text(write_form_text(f));
  EXPECT_EQ(g.forms, f.forms);
  EXPECT_EQ(write_form_text(g), write_form_text(f));
}

TEST(FormFile, RejectsMalformedInput) {
  EXPECT_THROW(parse_form_text("1 1 1 : 1\n"), ParseError);
  EXPECT_THROW(parse_form_text("n 2\n1 1 3 : 1\n"), ParseError);
  EXPECT_THROW(parse_form_text("n 2\n1 1 : 1\n"), ParseError);
  EXPECT_THROW(parse_form_text("n 2\n1 1 1 : x\n"), ParseError);
  EXPECT_THROW(parse_form_text("n 2\nR 2\n1 1 1 : 1\n"), ParseError);
  EXPECT_THROW(parse_form_text("n 2\nbackend quad\n"), ParseError);
}
