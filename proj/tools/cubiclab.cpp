// Command-line driver for the cubiclab experiments.
//
// Every subcommand reads a form file, runs one library operation and writes a
// CSV table or a JSON certificate to stdout (or --output). Output depends only
// on the arguments: --threads changes the worker count, never the numbers.
//
// Exit status: 0 success (including inconclusive outcomes, which are data),
// 1 domain error (zero form, vanishing minor, bad file, ...), 2 usage error.

#include <CLI11.hpp>
#include <cubiclab/cubiclab.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cubiclab;
using nlohmann::ordered_json;

namespace {

struct Common {
  std::string form;
  std::string output;
  std::string format;
  int threads = 0;
};

struct Args {
  long B = 8;
  bool strict = true;
  bool weak = false;
  bool histogram = false;
  std::string x;
  double C = 8;
  int sigma = 0;
  int b = 1;
  int trials = 200;
  std::uint64_t seed = 42;
  long range = 9;
  int samples = 256;
  std::string P = "32";
  long cutoff = 50;
  std::string depth = "auto";
  double samples_mc = 1e6;
  double epsilon = 0.05;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot write '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError("list", "empty list");
  return out;
}

std::uint64_t sample_count(double v) {
  if (!(v >= 1) || v > 1e12 || v != std::floor(v)) throw CLI::ValidationError("--samples", "need a whole number >= 1");
  return std::uint64_t(v);
}

Strictness strictness(const Args& a) { return a.weak ? Strictness::Weak : Strictness::Strict; }

const ExactForm& single_form(const FormFile& f) {
  if (f.R() != 1) throw OutOfRange("this operation takes a file with exactly one form");
  return f.forms[0];
}

DiagonalSystem diagonal_system(const FormFile& f) {
  auto s = DiagonalSystem::from_forms(f.forms);
  if (!f.box.empty()) {
    s.box = f.box;
    s.validate();
  }
  return s;
}

// Runs body<S>() on the backend named in the form file.
template <class F>
int with_backend(const FormFile& f, F&& body) {
  if (f.backend == Backend::Exact) return body.template operator()<Rational>();
  return body.template operator()<double>();
}

// ---------------------------------------------------------------------------

int run_count_aux(const Common& c, const Args& a) {
  const auto f = read_form_file(c.form);
  Output out(c.output);
  return with_backend(f, [&]<Scalar S>() {
    const auto form = single_form(f).template cast<S>();
    const auto r = count_aux(form, a.B, strictness(a), c.threads);
    if (c.format == "json") {
      auto j = json::document("count aux");
      j["n"] = f.n;
      j["B"] = a.B;
      j["strictness"] = to_string(r.strictness);
      j["count"] = r.count;
      out.os() << j.dump(2) << "\n";
    } else {
      out.os() << "n,B,strictness,count\n" << f.n << "," << a.B << "," << to_string(r.strictness) << "," << r.count << "\n";
    }
    return 0;
  });
}

int run_count_nh(const Common& c, const Args& a) {
  const auto f = read_form_file(c.form);
  Output out(c.output);
  const auto x = parse_list(a.x);
  if (int(x.size()) != f.n) throw DimensionMismatch("--x needs " + std::to_string(f.n) + " coordinates");
  return with_backend(f, [&]<Scalar S>() {
    const auto form = single_form(f).template cast<S>();
    const auto h = form.hessian(detail::to_point<S>(x));
    const auto r = count_NH(h, a.B, strictness(a));
    const auto e = ellipsoid_bound(h, a.B);
    if (c.format == "json") {
      auto j = json::document("count nh");
      j["x"] = x;
      j["B"] = a.B;
      j["strictness"] = to_string(r.strictness);
      j["hessian"] = json::matrix(h);
      j["count"] = r.count;
      j["bound"] = e.value;
      out.os() << j.dump(2) << "\n";
    } else {
      out.os() << "B,strictness,count,bound\n"
               << a.B << "," << to_string(r.strictness) << "," << r.count << "," << num(e.value) << "\n";
    }
    return 0;
  });
}

int run_classify(const Common& c, const Args& a) {
  const auto f = read_form_file(c.form);
  Output out(c.output);
  return with_backend(f, [&]<Scalar S>() {
    const auto form = single_form(f).template cast<S>();
    const auto p = partition_check(form, a.B, strictness(a), c.threads);
    if (c.format == "json") {
      auto j = json::document("classify");
      j["B"] = a.B;
      j["n_aux"] = p.lhs;
      j["class_sum"] = p.rhs;
      j["equal"] = p.equal();
      if (a.histogram) j["classes"] = json::class_table(p.table);
      out.os() << j.dump(2) << "\n";
    } else if (a.histogram) {
      out.os() << "class,k,points,nh_sum\n";
      for (const auto& [cls, row] : p.table.rows)
        out.os() << '"' << cls.label() << "\"," << cls.k << "," << row.points << "," << row.nh_sum << "\n";
    } else {
      out.os() << "B,n_aux,class_sum,classes,equal\n"
               << a.B << "," << p.lhs << "," << p.rhs << "," << p.table.rows.size() << "," << (p.equal() ? 1 : 0)
               << "\n";
    }
    return 0;
  });
}

int run_trichotomy(const Common& c, const Args& a) {
  const auto f = read_form_file(c.form);
  Output out(c.output);
  return with_backend(f, [&]<Scalar S>() {
    const auto form = single_form(f).template cast<S>();
    const int n = f.n;
    if (a.sigma < 0 || a.sigma > n - 1) throw OutOfRange("--sigma must lie in 0..n-1");
    auto j = json::document("trichotomy");
    j["B"] = a.B;
    j["C"] = a.C;
    j["sigma"] = a.sigma;
    j["classes"] = ordered_json::array();
    if (c.format != "json") out.os() << "class,points,branch,b,certified,required,measured,boxes\n";
    for (const auto& [cls, row] : class_table(form, a.B, strictness(a)).rows) {
      if (cls.k > n - a.sigma - 1 || a.C * double(a.B) < cls.E().front()) continue;
      const auto r = trichotomy(form, a.B, a.C, a.sigma, cls);
      if (c.format == "json") {
        auto t = json::trichotomy(r);
        t["class"] = json::dyadic(cls);
        t["points"] = row.points;
        j["classes"].push_back(t);
      } else {
        out.os() << '"' << cls.label() << "\"," << row.points << "," << to_string(r.branch) << "," << r.b << ","
                 << num(r.certified) << "," << num(r.required) << "," << num(r.measured) << ","
                 << (r.cover ? r.cover->boxes.size() : 0) << "\n";
      }
    }
    if (c.format == "json") out.os() << j.dump(2) << "\n";
    return 0;
  });
}

int run_davenport_verify(const Common& c, const Args& a) {
  const auto f = read_form_file(c.form);
  Output out(c.output);
  const auto r = verify_Hy_identity(single_form(f), a.b, a.trials, a.seed, a.range);
  if (c.format == "csv") {
    out.os() << "b,trials,passed,vanishing,entries,pass\n"
             << a.b << "," << r.trials << "," << r.passed << "," << r.vanishing << "," << r.entries << ","
             << (r.pass() ? 1 : 0) << "\n";
  } else {
    auto j = json::document("davenport verify");
    j["b"] = a.b;
    j["seed"] = a.seed;
    j["range"] = a.range;
    j["report"] = json::hy(r);
    out.os() << j.dump(2) << "\n";
  }
  return 0;
}

int run_dichotomy(const Common& c, const Args& a, bool singular) {
  const auto f = read_form_file(c.form);
  Output out(c.output);
  return with_backend(f, [&]<Scalar S>() {
    const auto form = single_form(f).template cast<S>();
    const auto r = dichotomy(form, a.B, a.C, a.sigma, strictness(a), a.samples);
    std::optional<SingularCandidates> sc;
    if (singular && r.pair && r.pair->Y.cols() <= 3) sc = singular_candidates(form, *r.pair);
    if (c.format == "csv") {
      out.os() << "kind,pigeonhole,class,branch,dim_sum,measured,certified";
      if (singular) out.os() << ",candidates,exact_zeros";
      out.os() << "\n"
               << to_string(r.kind) << "," << to_string(r.pigeon.branch) << ",\"" << r.cls.label() << "\","
               << to_string(r.tri.branch) << "," << (r.pair ? r.pair->dim_sum() : 0) << ","
               << num(r.pair ? r.pair->measured : 0) << "," << num(r.pair ? r.pair->certified() : 0);
      if (singular) {
        std::size_t exact = 0;
        if (sc)
          for (const auto& p : sc->points) exact += p.exact_zero;
        out.os() << "," << (sc ? sc->points.size() : 0) << "," << exact;
      }
      out.os() << "\n";
    } else {
      auto j = json::document(singular ? "davenport singular" : "davenport dichotomy");
      j["B"] = a.B;
      j["C"] = a.C;
      j["sigma"] = a.sigma;
      j["result"] = json::dichotomy(r);
      if (singular) j["singular"] = sc ? json::candidates(*sc) : ordered_json(nullptr);
      out.os() << j.dump(2) << "\n";
    }
    return 0;
  });
}

int run_circle_count(const Common& c, const Args& a) {
  const auto s = diagonal_system(read_form_file(c.form));
  Output out(c.output);
  auto j = json::document("circle count");
  j["rows"] = ordered_json::array();
  if (c.format != "json") out.os() << "P,N\n";
  for (long P : parse_list(a.P)) {
    const auto N = count_zeros_box(s, P, c.threads);
    if (c.format == "json") j["rows"].push_back({{"P", P}, {"N", N}});
    else out.os() << P << "," << N << "\n";
  }
  if (c.format == "json") out.os() << j.dump(2) << "\n";
  return 0;
}

int depth_arg(const std::string& d) {
  if (d == "auto") return 0;
  try {
    std::size_t used = 0;
    const int v = std::stoi(d, &used);
    if (used == d.size() && v >= 1) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--depth", "expected 'auto' or a positive integer");
}

int run_circle_series(const Common& c, const Args& a) {
  const auto s = diagonal_system(read_form_file(c.form));
  Output out(c.output);
  const auto r = singular_series_estimate(s, a.cutoff, depth_arg(a.depth));
  if (c.format == "json") {
    auto j = json::document("circle series");
    j["series"] = json::series(r);
    out.os() << j.dump(2) << "\n";
  } else {
    out.os() << "p,k,sigma,primitive,partial\n";
    for (const auto& row : r.rows)
      out.os() << row.p << "," << row.k << "," << row.sigma.get_str() << "," << (row.primitive ? 1 : 0) << ","
               << num(row.partial) << "\n";
  }
  return 0;
}

int run_circle_integral(const Common& c, const Args& a) {
  const auto s = diagonal_system(read_form_file(c.form));
  Output out(c.output);
  const auto r = singular_integral_estimate(s, a.epsilon, sample_count(a.samples_mc), a.seed, c.threads);
  if (c.format == "json") {
    auto j = json::document("circle integral");
    j["integral"] = json::integral(r);
    out.os() << j.dump(2) << "\n";
  } else {
    out.os() << "epsilon,samples,seed,J_eps,J_half,estimate,stderr,degenerate\n"
             << num(r.epsilon) << "," << r.samples << "," << r.seed << "," << num(r.J_eps) << "," << num(r.J_half)
             << "," << num(r.estimate) << "," << num(r.stderr_) << "," << (r.degenerate ? 1 : 0) << "\n";
  }
  return 0;
}

int run_circle_report(const Common& c, const Args& a) {
  const auto s = diagonal_system(read_form_file(c.form));
  Output out(c.output);
  const auto Ps = parse_list(a.P);
  const auto r = convergence_report(s, Ps, a.cutoff, sample_count(a.samples_mc), a.seed, a.epsilon,
                                    depth_arg(a.depth), c.threads);
  if (c.format == "json") {
    auto j = json::document("circle report");
    j["report"] = json::asymptotic(r);
    out.os() << j.dump(2) << "\n";
  } else {
    out.os() << "P,N,S,J,J_stderr,prediction,ratio\n";
    for (const auto& row : r.rows)
      out.os() << row.P << "," << row.N << "," << num(r.series.estimate) << "," << num(r.integral.estimate) << ","
               << num(r.integral.stderr_) << "," << num(row.prediction) << "," << num(row.ratio) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

constexpr const char* kFooter = R"(Operations:
  count aux            N^aux(B) = #{(x, y) in [-B, B]^2n : ||H_c(x) y|| < B}
  count nh             N_H(B) for H = H_c(x), with the ellipsoid packing bound
  classify             N^aux(B) split over the dyadic spectral classes K_k(E)
  trichotomy           per class: box cover (I), Jacobian-minor subspace (II)
                       or Hessian-map subspace (III)
  davenport verify     H_c(x) y^(i) = (b+1) x (b+1) minors, in exact arithmetic
  davenport dichotomy  N^aux(B) << B^{n+sigma} (log B)^n, or a subspace pair
                       (X, Y) with dim X + dim Y large and Y^T H(X) Y small
  davenport singular   the dichotomy, then candidate singular points in Y
  circle count         N(P) = #{x in Z^n : x/P in box, c(x) = 0}
  circle series        truncated singular series, product of local densities
  circle integral      Monte-Carlo singular integral
  circle report        N(P) / (S J P^{n-3R}), the Hardy-Littlewood ratio

Exit status: 0 success, 1 domain error, 2 usage error.
CUBIC_AUX_THREADS sets the default worker count.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting and certificate experiments for cubic forms"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Common common;
  Args args;
  auto add_common = [&](CLI::App* sub, const std::string& default_format) {
    sub->preparse_callback([&common, default_format](std::size_t) { common.format = default_format; });
    sub->add_option("--form", common.form, "Form file")->required()->check(CLI::ExistingFile);
    sub->add_option("--output,-o", common.output, "Write to this file instead of stdout");
    sub->add_option("--format", common.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_str(default_format);
    sub->add_option("--threads", common.threads, "Worker count (default: CUBIC_AUX_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_B = [&](CLI::App* sub) {
    sub->add_option("--B", args.B, "Box size B")->capture_default_str();
    auto* s = sub->add_flag("--strict", args.strict, "Count ||H y|| < B (default)");
    sub->add_flag("--weak", args.weak, "Count ||H y|| <= B")->excludes(s);
  };
  auto add_cover = [&](CLI::App* sub) {
    sub->add_option("--C", args.C, "Constant C >= 1")->capture_default_str();
    sub->add_option("--sigma", args.sigma, "sigma")->capture_default_str();
  };

  std::function<int()> action;
  auto bind = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  auto* count = app.add_subcommand("count", "Auxiliary counts")->require_subcommand(1);
  auto* aux = count->add_subcommand("aux", "N^aux(B)");
  add_common(aux, "csv");
  add_B(aux);
  bind(aux, [&] { return run_count_aux(common, args); });
  auto* nh = count->add_subcommand("nh", "N_H(B) for the Hessian at a point");
  add_common(nh, "csv");
  add_B(nh);
  nh->add_option("--x", args.x, "Point, comma separated")->required();
  bind(nh, [&] { return run_count_nh(common, args); });

  auto* classify = app.add_subcommand("classify", "Dyadic class table");
  add_common(classify, "csv");
  add_B(classify);
  classify->add_flag("--histogram", args.histogram, "One row per class");
  bind(classify, [&] { return run_classify(common, args); });

  auto* tri = app.add_subcommand("trichotomy", "Covering trichotomy for every admissible class");
  add_common(tri, "csv");
  add_B(tri);
  add_cover(tri);
  bind(tri, [&] { return run_trichotomy(common, args); });

  auto* dav = app.add_subcommand("davenport", "Davenport construction")->require_subcommand(1);
  auto* verify = dav->add_subcommand("verify", "Check the H(x) y identity at random points");
  add_common(verify, "json");
  verify->add_option("--b", args.b, "Minor size b")->capture_default_str();
  verify->add_option("--trials", args.trials, "Random points")->capture_default_str();
  verify->add_option("--seed", args.seed, "Seed")->capture_default_str();
  verify->add_option("--range", args.range, "Points drawn from [-range, range]^n")->capture_default_str();
  bind(verify, [&] { return run_davenport_verify(common, args); });
  for (const bool singular : {false, true}) {
    auto* d = dav->add_subcommand(singular ? "singular" : "dichotomy",
                                  singular ? "Dichotomy followed by singular-point candidates" : "Bound or subspace pair");
    add_common(d, "json");
    add_B(d);
    add_cover(d);
    d->add_option("--samples", args.samples, "Samples for the measured pair ratio")->capture_default_str();
    bind(d, [&, singular] { return run_dichotomy(common, args, singular); });
  }

  auto* circle = app.add_subcommand("circle", "Diagonal circle-method experiments")->require_subcommand(1);
  auto* ccount = circle->add_subcommand("count", "Exact N(P)");
  add_common(ccount, "csv");
  ccount->add_option("--P", args.P, "P values, comma separated")->capture_default_str();
  bind(ccount, [&] { return run_circle_count(common, args); });
  auto* series = circle->add_subcommand("series", "Singular series");
  add_common(series, "csv");
  series->add_option("--cutoff", args.cutoff, "Largest prime")->capture_default_str();
  series->add_option("--depth", args.depth, "p-power depth or 'auto'")->capture_default_str();
  bind(series, [&] { return run_circle_series(common, args); });
  auto* integral = circle->add_subcommand("integral", "Singular integral");
  add_common(integral, "csv");
  integral->add_option("--epsilon", args.epsilon, "Window half-width")->capture_default_str();
  integral->add_option("--samples", args.samples_mc, "Monte-Carlo samples (1e7 accepted)")->capture_default_str();
  integral->add_option("--seed", args.seed, "Seed")->capture_default_str();
  bind(integral, [&] { return run_circle_integral(common, args); });
  auto* report = circle->add_subcommand("report", "Convergence table");
  add_common(report, "csv");
  report->add_option("--P", args.P, "P values, comma separated")->default_val("8,16,32");
  report->add_option("--cutoff", args.cutoff, "Largest prime")->capture_default_str();
  report->add_option("--depth", args.depth, "p-power depth or 'auto'")->capture_default_str();
  report->add_option("--epsilon", args.epsilon, "Window half-width")->capture_default_str();
  report->add_option("--samples", args.samples_mc, "Monte-Carlo samples")->capture_default_str();
  report->add_option("--seed", args.seed, "Seed")->capture_default_str();
  bind(report, [&] { return run_circle_report(common, args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
