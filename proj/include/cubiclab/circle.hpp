#pragma once
#ifndef CUBICLAB_CIRCLE_HPP
#define CUBICLAB_CIRCLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cubiclab/errors.hpp"
#include "cubiclab/forms.hpp"
#include "cubiclab/parallel.hpp"

namespace cubiclab {

/// R diagonal cubic forms c_i = sum_j a_ij x_j^3 with integer coefficients and
/// an axis-parallel box inside [-1, 1]^n.
struct DiagonalSystem {
  int n = 0, R = 0;
  std::vector<std::vector<long long>> a;
  std::vector<std::pair<Rational, Rational>> box;

  /// Scales each form to integer coefficients; the box defaults to [-1, 1]^n.
  static DiagonalSystem from_forms(std::span<const ExactForm> forms) {
    if (forms.empty()) throw OutOfRange("no forms given");
    DiagonalSystem s;
    s.n = forms[0].n();
    s.R = int(forms.size());
    for (const auto& f : forms) {
      if (f.n() != s.n) throw DimensionMismatch("forms in different numbers of variables");
      if (!f.is_diagonal()) throw NonDiagonal("the circle module needs diagonal forms");
      mpz_class l = 1;
      for (int j = 0; j < s.n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), f.coefficient(j, j, j).get_den_mpz_t());
      std::vector<long long> row;
      for (int j = 0; j < s.n; ++j) {
        const mpz_class v = f.coefficient(j, j, j).get_num() * (l / f.coefficient(j, j, j).get_den());
        if (!v.fits_slong_p()) throw Overflow("coefficient too large");
        row.push_back(v.get_si());
      }
      s.a.push_back(row);
    }
    s.box.assign(s.n, {Rational(-1), Rational(1)});
    s.validate();
    return s;
  }

  void validate() const {
    if (R < 1 || int(a.size()) != R || int(box.size()) != n) throw DimensionMismatch("malformed system");
    for (const auto& row : a) {
      if (int(row.size()) != n) throw DimensionMismatch("coefficient row length");
      if (std::all_of(row.begin(), row.end(), [](long long v) { return v == 0; })) throw ZeroForm("a form is zero");
    }
    for (const auto& [lo, hi] : box)
      if (lo > hi || lo < -1 || hi > 1) throw OutOfRange("box must be a product of intervals inside [-1, 1]");
  }

  /// Integers x with x / P in the j-th interval.
  std::pair<long, long> range(int j, long P) const {
    const Rational lo = box[j].first * P, hi = box[j].second * P;
    mpz_class l, h;
    mpz_cdiv_q(l.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(h.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    return {l.get_si(), h.get_si()};
  }

  double volume() const {
    double v = 1;
    for (const auto& [lo, hi] : box) v *= Rational(hi - lo).get_d();
    return v;
  }
};

namespace detail {

inline void check_P(long P) {
  if (P < 1) throw OutOfRange("P must be >= 1");
  if (P > 1000000) throw Overflow("P too large for 64-bit cubes");
}

inline std::vector<long> cube_values(long long a, long lo, long hi) {
  std::vector<long> v;
  for (long x = lo; x <= hi; ++x) {
    const __int128 t = __int128(a) * x * x * x;
    if (t > INT64_MAX / 16 || t < INT64_MIN / 16) throw Overflow("a x^3 exceeds 64 bits");
    v.push_back(long(t));
  }
  return v;
}

/// Histogram of partial sums over a set of variables: counts[s - offset].
struct SumHistogram {
  long offset = 0;
  std::vector<std::uint64_t> counts{1};
};

inline SumHistogram sum_histogram(const std::vector<std::vector<long>>& vals) {
  SumHistogram h;
  for (const auto& v : vals) {
    const long vmin = *std::min_element(v.begin(), v.end()), vmax = *std::max_element(v.begin(), v.end());
    SumHistogram next;
    next.offset = h.offset + vmin;
    next.counts.assign(h.counts.size() + std::size_t(vmax - vmin), 0);
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      if (!h.counts[i]) continue;
      for (long t : v) next.counts[i + std::size_t(t - vmin)] += h.counts[i];
    }
    h = std::move(next);
  }
  return h;
}

inline std::vector<long> all_sums(const std::vector<std::vector<long>>& vals) {
  std::vector<long> s{0};
  for (const auto& v : vals) {
    std::vector<long> next;
    next.reserve(s.size() * v.size());
    for (long a : s)
      for (long t : v) next.push_back(a + t);
    s = std::move(next);
  }
  std::sort(s.begin(), s.end());
  return s;
}

inline constexpr std::size_t kHistogramCap = std::size_t(1) << 26;

}  // namespace detail

/// #{x in Z^n : x/P in box, c_i(x) = 0 for all i} by direct enumeration.
inline std::uint64_t count_zeros_brute(const DiagonalSystem& s, long P) {
  s.validate();
  detail::check_P(P);
  std::vector<std::pair<long, long>> rg;
  double total = 1;
  for (int j = 0; j < s.n; ++j) {
    rg.push_back(s.range(j, P));
    total *= double(std::max(0L, rg.back().second - rg.back().first + 1));
  }
  if (total == 0) return 0;
  if (total > 2e8) throw OutOfRange("box too large for enumeration");
  std::vector<long> x(s.n);
  for (int j = 0; j < s.n; ++j) x[j] = rg[j].first;
  std::uint64_t count = 0;
  while (true) {
    bool zero = true;
    for (int i = 0; i < s.R && zero; ++i) {
      __int128 v = 0;
      for (int j = 0; j < s.n; ++j) v += __int128(s.a[i][j]) * x[j] * x[j] * x[j];
      zero = v == 0;
    }
    if (zero) ++count;
    int j = s.n - 1;
    while (j >= 0 && x[j] == rg[j].second) {
      x[j] = rg[j].first;
      --j;
    }
    if (j < 0) return count;
    ++x[j];
  }
}

/// Exact zero count. For one form the variables are split in two halves and
/// the histograms of their partial sums are matched against each other
/// (sorted lists when the value range is too wide); systems of several forms
/// are enumerated directly.
inline std::uint64_t count_zeros_box(const DiagonalSystem& s, long P, int threads = 0) {
  s.validate();
  detail::check_P(P);
  if (s.R != 1) return count_zeros_brute(s, P);
  std::vector<std::vector<long>> vals;
  for (int j = 0; j < s.n; ++j) {
    const auto [lo, hi] = s.range(j, P);
    if (lo > hi) return 0;
    vals.push_back(detail::cube_values(s.a[0][j], lo, hi));
  }
  const int h = (s.n + 1) / 2;
  const std::vector<std::vector<long>> left(vals.begin(), vals.begin() + h), right(vals.begin() + h, vals.end());
  auto span_of = [](const std::vector<std::vector<long>>& vs) {
    long double w = 1;
    for (const auto& v : vs) w += (long double)(*std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end()));
    return w;
  };
  const int nt = resolve_threads(threads);
  unsigned __int128 total = 0;
  if (span_of(left) <= detail::kHistogramCap && span_of(right) <= detail::kHistogramCap) {
    const auto hl = detail::sum_histogram(left), hr = detail::sum_histogram(right);
    // sum over s of hl[s] * hr[-s]
    total = parallel_sum<unsigned __int128>(hl.counts.size(), nt, [&](std::size_t i) -> unsigned __int128 {
      if (!hl.counts[i]) return 0;
      const long v = -(hl.offset + long(i));
      const long k = v - hr.offset;
      if (k < 0 || k >= long(hr.counts.size())) return 0;
      return (unsigned __int128)hl.counts[i] * hr.counts[std::size_t(k)];
    });
  } else {
    long double sizes = 1;
    for (const auto& v : vals) sizes *= v.size();
    if (sizes > 1e17L) throw OutOfRange("box too large for meet-in-the-middle");
    auto sl = detail::all_sums(left), sr = detail::all_sums(right);
    for (auto& v : sr) v = -v;
    std::reverse(sr.begin(), sr.end());
    std::size_t i = 0, j = 0;
    while (i < sl.size() && j < sr.size()) {
      if (sl[i] < sr[j]) {
        ++i;
      } else if (sl[i] > sr[j]) {
        ++j;
      } else {
        std::size_t i2 = i, j2 = j;
        while (i2 < sl.size() && sl[i2] == sl[i]) ++i2;
        while (j2 < sr.size() && sr[j2] == sr[j]) ++j2;
        total += (unsigned __int128)(i2 - i) * (j2 - j);
        i = i2;
        j = j2;
      }
    }
  }
  if (total > UINT64_MAX) throw Overflow("count exceeds 64 bits");
  return std::uint64_t(total);
}

// ---------------------------------------------------------------------------

struct LocalDensity {
  long p = 0;
  int k = 0;
  mpz_class solutions = 1;  // #{x mod p^k : c(x) = 0 mod p^k}
  mpz_class primitive = 1;  // those with some x_j not divisible by p
  Rational sigma = 1;       // solutions / p^{k(n-R)}
};

inline long density_modulus_cap(int R) { return R == 1 ? 512 : 64; }

namespace detail {

/// Number of x mod q with c(x) = 0 mod q, the x_j restricted to multiples of
/// `step` (1 for all residues).
inline mpz_class residue_count(const DiagonalSystem& s, long q, long step) {
  const std::size_t cells = s.R == 1 ? std::size_t(q) : std::size_t(q * q);
  std::vector<mpz_class> state(cells, 0);
  state[0] = 1;
  for (int j = 0; j < s.n; ++j) {
    // per-variable histogram of residues (a_1 t^3, ..., a_R t^3)
    std::vector<std::uint64_t> hist(cells, 0);
    for (long t = 0; t < q; t += step) {
      const long t3 = long(((__int128)t * t % q) * t % q);
      std::size_t cell = 0;
      for (int i = 0; i < s.R; ++i) {
        long r = long((__int128(s.a[i][j]) % q + q) % q * t3 % q);
        cell = cell * std::size_t(q) + std::size_t(r);
      }
      ++hist[cell];
    }
    std::vector<std::pair<std::size_t, std::uint64_t>> nz;
    for (std::size_t c = 0; c < cells; ++c)
      if (hist[c]) nz.emplace_back(c, hist[c]);
    std::vector<mpz_class> next(cells, 0);
    for (std::size_t c = 0; c < cells; ++c) {
      if (state[c] == 0) continue;
      for (const auto& [d, w] : nz) {
        std::size_t e;
        if (s.R == 1) {
          e = (c + d) % std::size_t(q);
        } else {
          const std::size_t c1 = c / q, c2 = c % q, d1 = d / q, d2 = d % q;
          e = ((c1 + d1) % q) * q + (c2 + d2) % q;
        }
        next[e] += state[c] * w;
      }
    }
    state = std::move(next);
  }
  return state[0];
}

}  // namespace detail

/// sigma_{p,k} = #{x mod p^k : c_i(x) = 0 mod p^k} / p^{k(n-R)} by cyclic
/// convolution of residue histograms; p^k is capped at 512 for one form and
/// 64 for two.
inline LocalDensity local_density(const DiagonalSystem& s, long p, int k) {
  s.validate();
  if (p < 2 || k < 0) throw OutOfRange("need a prime p and k >= 0");
  if (s.R > 2) throw OutOfRange("local densities for at most two forms");
  LocalDensity d;
  d.p = p;
  d.k = k;
  if (k == 0) return d;
  long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > density_modulus_cap(s.R)) throw DepthTooLarge("p^k exceeds " + std::to_string(density_modulus_cap(s.R)));
  }
  d.solutions = detail::residue_count(s, q, 1);
  d.primitive = d.solutions - detail::residue_count(s, q, p);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(s.n - s.R));
  d.sigma = Rational(d.solutions, den);
  d.sigma.canonicalize();
  return d;
}

inline std::vector<long> primes_up_to(long m) {
  std::vector<bool> sieve(std::size_t(std::max(2L, m + 1)), true);
  std::vector<long> out;
  for (long i = 2; i <= m; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= m; j += i) sieve[j] = false;
  }
  return out;
}

struct SeriesReport {
  struct Row {
    long p = 0;
    int k = 0;
    Rational sigma;
    bool primitive = true;  // a primitive solution exists mod p^k
    double partial = 0;     // product up to and including p
  };
  long cutoff = 0;
  std::vector<Row> rows;
  double estimate = 0;
  bool hasse_obstruction = false;
  long obstruction_prime = 0;
};

/// Truncated product of local densities over p <= cutoff. `depth` 0 picks the
/// largest k with p^k under the cap. A prime without primitive solutions mod
/// p^k forces the p-adic density, and so the estimate, to 0.
inline SeriesReport singular_series_estimate(const DiagonalSystem& s, long cutoff, int depth = 0) {
  s.validate();
  SeriesReport r;
  r.cutoff = cutoff;
  Rational prod = 1;
  for (long p : primes_up_to(cutoff)) {
    int k = depth;
    if (k == 0) {
      long q = p;
      while (q * p <= density_modulus_cap(s.R)) {
        q *= p;
        ++k;
      }
      ++k;
    }
    const auto d = local_density(s, p, k);
    SeriesReport::Row row{p, k, d.sigma, d.primitive != 0, 0};
    if (!row.primitive && !r.hasse_obstruction) {
      r.hasse_obstruction = true;
      r.obstruction_prime = p;
    }
    prod *= row.primitive ? d.sigma : Rational(0);
    row.partial = prod.get_d();
    r.rows.push_back(row);
  }
  r.estimate = prod.get_d();
  return r;
}

// ---------------------------------------------------------------------------

struct IntegralReport {
  double epsilon = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t hits = 0;       // samples with |c_i(x)| < epsilon for all i
  std::uint64_t hits_half = 0;  // same with epsilon / 2
  double J_eps = 0;             // (2 eps)^-R vol{|c| < eps}
  double J_half = 0;
  double estimate = 0;  // (4 J_half - J_eps) / 3
  double stderr_ = 0;   // of `estimate`
  double stderr_eps = 0;
  bool degenerate = false;
};

/// Monte-Carlo estimate of lim (2 eps)^-R vol{x in box : |c_i(x)| < eps}.
/// Samples are drawn in 64 fixed chunks, chunk c from mt19937_64 seeded by
/// (seed, c), so the result does not depend on the worker count. The window
/// average has an eps^2 error for a smooth density, which the Richardson
/// combination removes; a large change between eps and eps/2 marks a
/// degenerate integral.
inline IntegralReport singular_integral_estimate(const DiagonalSystem& s, double epsilon, std::uint64_t samples,
                                                 std::uint64_t seed = 42, int threads = 0) {
  s.validate();
  if (s.R > 2) throw OutOfRange("singular integral for at most two forms");
  if (!(epsilon > 0) || samples == 0) throw OutOfRange("need epsilon > 0 and samples > 0");
  constexpr std::size_t chunks = 64;
  struct Part {
    std::uint64_t hits = 0, half = 0;
  };
  std::vector<Part> parts(chunks);
  std::vector<std::pair<double, double>> box;
  for (const auto& [lo, hi] : s.box) box.emplace_back(lo.get_d(), hi.get_d());
  parallel_chunks(chunks, resolve_threads(threads), [&](std::size_t c) {
    std::seed_seq sq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(c)};
    std::mt19937_64 rng(sq);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::uint64_t lo = samples * c / chunks, hi = samples * (c + 1) / chunks;
    std::vector<double> x3(s.n);
    Part p;
    for (std::uint64_t i = lo; i < hi; ++i) {
      for (int j = 0; j < s.n; ++j) {
        const double x = box[j].first + (box[j].second - box[j].first) * u(rng);
        x3[j] = x * x * x;
      }
      double m = 0;
      for (int f = 0; f < s.R; ++f) {
        double v = 0;
        for (int j = 0; j < s.n; ++j) v += double(s.a[f][j]) * x3[j];
        m = std::max(m, std::fabs(v));
      }
      if (m < epsilon) ++p.hits;
      if (m < epsilon / 2) ++p.half;
    }
    parts[c] = p;
  });
  IntegralReport r;
  r.epsilon = epsilon;
  r.samples = samples;
  r.seed = seed;
  for (const auto& p : parts) {
    r.hits += p.hits;
    r.hits_half += p.half;
  }
  const double N = double(samples), V = s.volume();
  const double w_eps = V / std::pow(2 * epsilon, s.R), w_half = V / std::pow(epsilon, s.R);
  r.J_eps = w_eps * double(r.hits) / N;
  r.J_half = w_half * double(r.hits_half) / N;
  // per sample: Z = (4 w_half 1[half] - w_eps 1[eps]) / 3; 1[half] implies 1[eps]
  const double z_both = (4 * w_half - w_eps) / 3, z_eps_only = -w_eps / 3;
  const double nb = double(r.hits_half), ne = double(r.hits - r.hits_half);
  r.estimate = (z_both * nb + z_eps_only * ne) / N;
  const double second = (z_both * z_both * nb + z_eps_only * z_eps_only * ne) / N;
  r.stderr_ = std::sqrt(std::max(0.0, second - r.estimate * r.estimate) / std::max(1.0, N - 1));
  const double pe = double(r.hits) / N;
  r.stderr_eps = w_eps * std::sqrt(pe * (1 - pe) / std::max(1.0, N - 1));
  const double diff = std::fabs(r.J_half - r.J_eps);
  r.degenerate = r.hits == 0 || (diff > 0.1 * std::max(r.J_half, r.J_eps) && diff > 4 * r.stderr_);
  return r;
}

// ---------------------------------------------------------------------------

struct AsymptoticReport {
  struct Row {
    long P = 0;
    std::uint64_t N = 0;
    double prediction = 0;  // S J P^{n-3R}
    double ratio = 0;
  };
  int exponent = 0;
  SeriesReport series;
  IntegralReport integral;
  std::vector<Row> rows;
};

/// N(P) against S J P^{n-3} for one diagonal form in n >= 4 variables.
inline AsymptoticReport convergence_report(const DiagonalSystem& s, std::span<const long> Ps, long cutoff,
                                           std::uint64_t samples, std::uint64_t seed = 42, double epsilon = 0.05,
                                           int depth = 0, int threads = 0) {
  s.validate();
  if (s.R != 1) throw OutOfRange("convergence report needs a single form");
  if (s.n < 4) throw OutOfRange("convergence report needs n >= 4");
  AsymptoticReport r;
  r.exponent = s.n - 3 * s.R;
  r.series = singular_series_estimate(s, cutoff, depth);
  r.integral = singular_integral_estimate(s, epsilon, samples, seed, threads);
  const double sj = r.series.estimate * r.integral.estimate;
  if (!(sj > 0)) throw ZeroPrediction("S J estimate is not positive");
  for (long P : Ps) {
    AsymptoticReport::Row row;
    row.P = P;
    row.N = count_zeros_box(s, P, threads);
    row.prediction = sj * std::pow(double(P), r.exponent);
    row.ratio = double(row.N) / row.prediction;
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace cubiclab

#endif  // CUBICLAB_CIRCLE_HPP
