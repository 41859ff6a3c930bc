#include "lzlab/cli.hpp"

#include "lzlab/arith.hpp"
#include "lzlab/besselmellin.hpp"
#include "lzlab/errors.hpp"
#include "lzlab/predictions.hpp"
#include "lzlab/report.hpp"
#include "lzlab/rmt.hpp"
#include "lzlab/testfn.hpp"
#include "lzlab/vanishing.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>

namespace lzlab {

namespace {

struct FunctionOptions {
  std::optional<double> sigma;
  std::string spline;

  void attach(CLI::App* app) {
    app->add_option("--sigma", sigma, "Fejer support half-width in (0, 1], default 1");
    app->add_option("--spline", spline, "hat-spline file (overrides --sigma)");
  }
  TestFunction build() const {
    if (!spline.empty()) {
      if (!std::filesystem::exists(spline)) throw ValidationError("spline file does not exist: " + spline);
      return make_hat_spline(load_piecewise_polynomial(spline));
    }
    return make_fejer(sigma.value_or(1.0));
  }
  Json echo() const {
    Json j;
    if (!spline.empty()) {
      j["spline"] = spline;
    } else {
      j["sigma"] = sigma.value_or(1.0);
    }
    return j;
  }
};

struct Common {
  std::string format;
  std::string output;
  int workers = 0;

  void attach(CLI::App* app, const std::string& default_format) {
    format = default_format;
    app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--output", output, "output path (default stdout)");
    app->add_option("--workers", workers, "worker threads (default LZLAB_WORKERS or hardware)");
  }
};

Json number_or_null(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

// --- moments ---------------------------------------------------------------

struct MomentsCmd {
  FunctionOptions fn;
  std::vector<int> Ms;
  std::string parity;
  int n_max = 4;
  long long samples = 10000;
  std::optional<std::uint64_t> seed;
  std::string centering = "empirical";
  bool check = false;
  double gate_sigmas = 3.0;

  Report run(int workers) const {
    if (!seed) throw ValidationError("moments: --seed is required");
    const TestFunction f = fn.build();
    Report r;
    r.command = "moments";
    r.columns = {"parity", "M", "sigma", "n", "samples", "centering", "estimate", "std_err", "prediction"};
    r.config = fn.echo();
    r.config["M"] = Ms;
    r.config["n_max"] = n_max;
    r.config["samples"] = samples;
    r.config["seed"] = *seed;
    r.config["centering"] = centering;
    const Centering cen = parse_centering(centering);
    for (const int M : Ms) {
      const EnsembleSpec spec{M, parity.empty() ? parity_of(M) : parse_parity(parity)};
      spec.validate();
      const auto est = mc_moments(spec, f, n_max, samples, *seed, cen, workers);
      for (const auto& e : est) {
        std::optional<double> pred;
        if (e.n == 1) {
          pred = 0.0;
        } else {
          try {
            pred = centered_moment_prediction(spec.parity, e.n, f).value;
          } catch (const OutOfRangeError&) {
          }
        }
        r.add_row(Json{{"parity", std::string(to_string(spec.parity))},
                       {"M", M},
                       {"sigma", f.sigma()},
                       {"n", e.n},
                       {"samples", e.samples},
                       {"centering", std::string(to_string(e.centering))},
                       {"estimate", e.value},
                       {"std_err", e.std_err},
                       {"prediction", number_or_null(pred)}});
        if (check && pred) {
          const double slack = (e.n % 2 == 1) ? 5.0 / M : 0.0;
          if (std::abs(e.value - *pred) > gate_sigmas * e.std_err + slack)
            r.failures.push_back("M=" + std::to_string(M) + " n=" + std::to_string(e.n));
        }
      }
    }
    return r;
  }
};

// --- predict ---------------------------------------------------------------

struct PredictCmd {
  FunctionOptions fn;
  std::string parity = "even";
  int n = 2;

  Report run() const {
    const TestFunction f = fn.build();
    const MomentPrediction p = centered_moment_prediction(parse_parity(parity), n, f);
    Report r;
    r.command = "predict";
    r.columns = {"parity", "n", "sigma", "gaussian_part", "correction", "value"};
    r.config = fn.echo();
    r.config["parity"] = parity;
    r.config["n"] = n;
    r.add_row(Json{{"parity", std::string(to_string(p.parity))},
                   {"n", p.n},
                   {"sigma", p.sigma},
                   {"gaussian_part", p.gaussian_part},
                   {"correction", p.correction},
                   {"value", p.value}});
    return r;
  }
};

// --- identities ------------------------------------------------------------

struct IdentitiesCmd {
  FunctionOptions fn;
  std::string suite = "appendix-d";
  int n = 2;
  std::optional<double> tol;

  Report run() const {
    Report r;
    r.command = "identities";
    r.columns = {"suite", "n", "sigma", "value", "reference", "residual", "tol", "pass"};
    r.config = fn.echo();
    r.config["suite"] = suite;
    r.config["n"] = n;
    double value = 0.0, reference = 0.0, t = 0.0, sigma = 0.0;
    if (suite == "composition") {
      value = to_double(composition_sum(n, CompositionWeight::two_pow_minus_2m));
      reference = n == 1 ? 0.0 : 2.0 * (n % 2 == 0 ? 1.0 : -1.0);
      const double plain = to_double(composition_sum(n, CompositionWeight::plain));
      if (n == 1) reference = value;  // weighted sum is not constrained at n = 1
      value += std::abs(plain - (n == 1 ? 1.0 : 0.0));
      t = tol.value_or(0.0);
    } else {
      const TestFunction f = fn.build();
      sigma = f.sigma();
      if (suite == "appendix-d") {
        value = ft_identity_residual(f, n);
        reference = 0.0;
        t = tol.value_or(n <= 2 ? 1e-5 : 1e-4);
      } else if (suite == "qn") {
        value = q_n_multidim(f, n);
        reference = r_n(f, n);
        t = tol.value_or(n == 2 ? 1e-3 : 1e-2);
      } else if (suite == "variance") {
        value = variance_limit(Parity::even, f) - variance_limit(Parity::odd, f);
        reference = -4.0 * (sinc_moment(f, 2) - 0.5 * f.phi0() * f.phi0());
        t = tol.value_or(1e-6);
      } else {
        throw ValidationError("unknown identities suite: " + suite);
      }
    }
    const double residual = std::abs(value - reference);
    const bool pass = residual <= t;
    r.add_row(Json{{"suite", suite}, {"n", n}, {"sigma", sigma}, {"value", value}, {"reference", reference},
                   {"residual", residual}, {"tol", t}, {"pass", pass}});
    if (!pass) r.failures.push_back(suite);
    return r;
  }
};

// --- arith-check -----------------------------------------------------------

struct LemmaTally {
  long long checked = 0;
  long long failed = 0;
  double worst = 0.0;
  void record(double residual, double tol) {
    ++checked;
    worst = std::max(worst, residual);
    if (!(residual <= tol)) ++failed;
  }
};

struct ArithCmd {
  std::optional<long long> max_q;
  std::optional<long long> max_n;
  std::vector<std::string> lemmas;

  LemmaTally run_lemma(const std::string& lemma, double& tol) const {
    LemmaTally t;
    if (lemma == "c1" || lemma == "c4") {
      tol = 1e-9;
      const long long bmax = max_q.value_or(12), amax = max_n.value_or(30);
      for (const long long N : {3LL, 5LL, 7LL, 11LL})
        for (long long b = 1; b <= bmax; ++b)
          for (long long m = 1; m <= 5; ++m)
            for (long long a = 1; a <= amax; ++a) {
              SumParams p;
              p.N = N;
              p.b = b;
              p.m = m;
              if (lemma == "c1") {
                if (gcd_ll(a, b) != 1 || gcd_ll(N, b) != 1 || gcd_ll(m, N) != 1) continue;
                p.P = a;
                t.record(kloosterman_char_expansion_residual(p), tol);
              } else {
                const long long r = gcd_ll(a, b);
                if (gcd_ll(a, N) != 1 || gcd_ll(N, b) != 1 || gcd_ll(r, b / r) != 1) continue;
                p.Q = a;
                t.record(kloosterman_char_expansion_r_residual(p), tol);
              }
            }
    } else if (lemma == "gauss2") {
      tol = 1e-6;
      for (long long q = 1; q <= max_q.value_or(50); ++q)
        for (long long n = 1; n <= std::min(q, max_n.value_or(q)); ++n)
          t.record(std::abs(gauss_square_identity(q, n)), tol);
    } else if (lemma == "weil") {
      tol = 0.0;
      const long long nmax = max_n.value_or(20);
      for (long long q = 1; q <= max_q.value_or(500); ++q)
        for (long long m = 0; m <= nmax; ++m)
          for (long long n = 0; n <= nmax; ++n) {
            double excess = 0.0;
            try {
              excess = std::max(0.0, std::abs(kloosterman_sum(m, n, q)) - kloosterman_weil_bound(m, n, q));
            } catch (const InvariantError&) {
              excess = INFINITY;
            }
            t.record(excess, tol);
          }
    } else if (lemma == "ramanujan") {
      tol = 1e-9;
      for (long long q = 1; q <= max_q.value_or(60); ++q)
        for (long long n = 1; n <= max_n.value_or(60); ++n)
          t.record(std::abs(ramanujan_sum_exponential(n, q) - static_cast<double>(ramanujan_sum_divisor(n, q))), tol);
    } else if (lemma == "hecke") {
      tol = 1e-9;
      std::mt19937_64 rng(12345);
      std::uniform_real_distribution<double> u(0.01, 3.13);
      std::vector<double> thetas(50);
      for (double& th : thetas) th = u(rng);
      for (int n = 1; n <= std::min<long long>(30, max_n.value_or(30)); ++n)
        t.record(hecke_power_residual(n, thetas), tol);
    } else {
      throw ValidationError("unknown lemma: " + lemma);
    }
    return t;
  }

  Report run() const {
    Report r;
    r.command = "arith-check";
    r.columns = {"lemma", "checked", "failed", "worst_residual", "tol"};
    r.config["max_q"] = max_q ? Json(*max_q) : Json(nullptr);
    r.config["max_n"] = max_n ? Json(*max_n) : Json(nullptr);
    const std::vector<std::string> all{"c1", "c4", "gauss2", "weil", "ramanujan", "hecke"};
    const auto& which = lemmas.empty() ? all : lemmas;
    r.config["lemmas"] = which;
    for (const auto& lemma : which) {
      double tol = 0.0;
      const LemmaTally t = run_lemma(lemma, tol);
      r.add_row(Json{{"lemma", lemma}, {"checked", t.checked}, {"failed", t.failed}, {"worst_residual", t.worst},
                     {"tol", tol}});
      if (t.failed > 0) r.failures.push_back(lemma);
    }
    return r;
  }
};

// --- ils-check -------------------------------------------------------------

struct IlsCmd {
  FunctionOptions fn;
  int k = 2;
  std::vector<long long> Ns{1009, 10007, 100003};
  double eps = 0.05;
  long long b_cut = 1000;
  std::optional<double> max_residual;

  Report run() const {
    const TestFunction f = fn.build();
    Report r;
    r.command = "ils-check";
    r.columns = {"N", "lhs", "rhs", "residual"};
    r.config = fn.echo();
    r.config["k"] = k;
    r.config["N"] = Ns;
    r.config["eps"] = eps;
    r.config["b_cut"] = b_cut;
    for (const long long N : Ns) {
      const IlsResult res = ils_sum_residual(f, k, N, eps, b_cut);
      r.add_row(Json{{"N", N}, {"lhs", res.lhs}, {"rhs", res.rhs}, {"residual", res.residual}});
      if (max_residual && !(res.residual <= *max_residual)) r.failures.push_back("N=" + std::to_string(N));
    }
    return r;
  }
};

// --- vanishing -------------------------------------------------------------

struct VanishingCmd {
  FunctionOptions fn;
  int n = 2;
  int r_max = 9;
  std::string parity = "odd";

  Report run() const {
    const TestFunction f = fn.build();
    Report r;
    r.command = "vanishing";
    r.columns = {"r", "n", "B", "bound"};
    r.config = fn.echo();
    r.config["n"] = n;
    r.config["r_max"] = r_max;
    r.config["parity"] = parity;
    const auto rows = vanishing_table(f, parse_parity(parity), n, r_max);
    if (!rows.empty()) r.config["epsilon_slack"] = rows.front().epsilon_slack;
    for (const auto& v : rows) r.add_row(Json{{"r", v.r}, {"n", v.n}, {"B", v.B}, {"bound", v.probability_bound}});
    return r;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lzlab: low-lying zero moment laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  Common common_moments, common_predict, common_ident, common_arith, common_ils, common_van;
  MomentsCmd moments;
  auto* sm = app.add_subcommand("moments", "Monte Carlo centered moments of Z over Haar SO(M)");
  moments.fn.attach(sm);
  common_moments.attach(sm, "csv");
  sm->add_option("--M", moments.Ms, "matrix dimensions")->required()->delimiter(',');
  sm->add_option("--parity", moments.parity, "even or odd (must match M)");
  sm->add_option("--n-max", moments.n_max, "highest moment order (<= 8)");
  sm->add_option("--samples", moments.samples, "Haar samples per M");
  sm->add_option("--seed", moments.seed, "RNG seed");
  sm->add_option("--centering", moments.centering, "empirical or analytic")
      ->check(CLI::IsMember({"empirical", "analytic"}));
  sm->add_flag("--check", moments.check, "gate estimates against predictions");
  sm->add_option("--tol-sigmas", moments.gate_sigmas, "gate width in standard errors");

  PredictCmd predict;
  auto* sp = app.add_subcommand("predict", "closed-form limit of a centered moment");
  predict.fn.attach(sp);
  common_predict.attach(sp, "json");
  sp->add_option("--parity", predict.parity)->check(CLI::IsMember({"even", "odd"}));
  sp->add_option("--n", predict.n)->required();

  IdentitiesCmd ident;
  auto* si = app.add_subcommand("identities", "check a Fourier or combinatorial identity");
  ident.fn.attach(si);
  common_ident.attach(si, "csv");
  si->add_option("--suite", ident.suite)->check(CLI::IsMember({"appendix-d", "qn", "variance", "composition"}));
  si->add_option("--n", ident.n);
  si->add_option("--tol", ident.tol, "override the residual tolerance");

  ArithCmd arith;
  auto* sa = app.add_subcommand("arith-check", "exhaustive exponential-sum identity sweeps");
  common_arith.attach(sa, "json");
  sa->add_option("--max-q", arith.max_q);
  sa->add_option("--max-n", arith.max_n);
  sa->add_option("--lemma", arith.lemmas)
      ->check(CLI::IsMember({"c1", "c4", "gauss2", "weil", "ramanujan", "hecke"}))
      ->delimiter(',');

  IlsCmd ils;
  auto* sl = app.add_subcommand("ils-check", "truncated Bessel double sum against its limit");
  ils.fn.attach(sl);
  common_ils.attach(sl, "csv");
  sl->add_option("--k", ils.k);
  sl->add_option("--N-list", ils.Ns, "prime levels")->delimiter(',');
  sl->add_option("--eps", ils.eps);
  sl->add_option("--b-cut", ils.b_cut);
  sl->add_option("--max-residual", ils.max_residual, "gate on the residual");

  VanishingCmd van;
  auto* sv = app.add_subcommand("vanishing", "order-of-vanishing bounds from moment bounds");
  van.fn.attach(sv);
  common_van.attach(sv, "csv");
  sv->add_option("--n", van.n);
  sv->add_option("--r-max", van.r_max);
  sv->add_option("--parity", van.parity)->check(CLI::IsMember({"even", "odd"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report report;
    Common* common = nullptr;
    if (sm->parsed()) {
      common = &common_moments;
      report = moments.run(common->workers > 0 ? common->workers : default_workers());
    } else if (sp->parsed()) {
      common = &common_predict;
      report = predict.run();
    } else if (si->parsed()) {
      common = &common_ident;
      report = ident.run();
    } else if (sa->parsed()) {
      common = &common_arith;
      report = arith.run();
    } else if (sl->parsed()) {
      common = &common_ils;
      report = ils.run();
    } else {
      common = &common_van;
      report = van.run();
    }
    report.version = version_string();
    report.workers = common->workers > 0 ? common->workers : default_workers();
    report.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const OutputFormat format = parse_format(common->format);
    if (report.command == "predict" && format == OutputFormat::json) {
      const std::string body = report.rows.front().dump(2) + "\n";
      if (common->output.empty() || common->output == "-") {
        out << body;
      } else {
        Report single = report;
        emit_report(single, common->output, OutputFormat::json, out);
      }
    } else {
      emit_report(report, common->output, format, out);
    }
    err << report.version << " " << report.command << " workers=" << report.workers
        << " wall_clock_s=" << report.wall_clock_s << " status=" << (report.all_pass() ? "pass" : "fail") << "\n";
    for (const auto& f : report.failures) err << "gate failed: " << f << "\n";
    return report.all_pass() ? kExitPass : kExitGateFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace lzlab
