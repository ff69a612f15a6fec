// Acceptance checks. Each criterion prints one PASS/FAIL line; the exit code
// is nonzero if any requested criterion fails.
//
//   linksmooth_acceptance            run every criterion
//   linksmooth_acceptance NAME...    run the named criteria
//   linksmooth_acceptance --list     print the criterion names

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include <fmt/format.h>

#include <linksmooth/montecarlo.hpp>
#include <linksmooth/rates.hpp>
#include <linksmooth/summation.hpp>

#include "linksmooth_cli/app.hpp"
#include "../oracle/brute_force.hpp"

namespace fs = std::filesystem;
using namespace linksmooth;

namespace {

// Tolerances and budgets.
constexpr double kOracleTol = 1e-12;       // relative to max(1, |reference|)
constexpr double kNormalizationTol = 1e-12;
constexpr double kFastBudgetSeconds = 5.0;
constexpr std::size_t kOracleInstances = 200;
constexpr std::size_t kNormalizationConfigs = 100;

constexpr std::size_t kRatioNodes = 500;
constexpr std::size_t kRatioReps = 10000;
constexpr double kRatioSmoothMin = 1.5;  // random / fixed variance at s = 3
constexpr double kRatioRoughLow = 0.6;   // at s = 0.75
constexpr double kRatioRoughHigh = 1.6;

constexpr std::size_t kRateNs[] = {100, 200, 400, 800};
constexpr std::size_t kRateFixedRy = 2000;
constexpr std::size_t kRateRandomRx = 1000;
constexpr std::size_t kRateRandomRy = 2;
constexpr double kSlopeTol = 0.3;
constexpr double kMatchedSlopeGap = 0.15;

constexpr std::size_t kConventionalNodes = 5000;
constexpr std::size_t kConventionalReps = 10000;
constexpr double kConventionalLow = 0.6;
constexpr double kConventionalHigh = 1.6;

constexpr std::size_t kTotalVarianceNodes = 200;
constexpr std::size_t kTotalVarianceDraws = 200;  // rx = ry
constexpr double kTotalVarianceTol = 0.05;

struct Outcome {
  bool pass;
  std::string detail;
};

using Criterion = std::function<Outcome()>;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double rel_diff(double value, double reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

ExecutionOptions exec() {
  return {std::max(1u, std::thread::hardware_concurrency())};
}

SmootherConfig link_smoother(double h, double lambda) {
  SmootherConfig cfg;
  cfg.kernel = {KernelKind::kBoxcar, 1, false};
  cfg.h = h;
  cfg.lambda = lambda;
  cfg.query_x = {0.5};
  cfg.query_xp = {0.5};
  return cfg;
}

ExperimentConfig link_experiment(DesignKind kind, std::size_t n, double h, double lambda,
                                 std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.design = kind == DesignKind::kFixedLattice ? DesignSpec::fixed(n, 1) : DesignSpec::random(n, 1);
  cfg.smoother = link_smoother(h, lambda);
  cfg.master_seed = seed;
  return cfg;
}

std::vector<double> values_of(const std::vector<ReplicateValue>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.value);
  return out;
}

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> n_dist(2, 6), d_dist(1, 2), k_dist(0, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0), h_dist(0.1, 1.0), log_lambda(-4.0, 0.0);
  double worst = 0.0;
  std::string worst_what = "none";
  const auto track = [&](double diff, const char* what) {
    if (diff > worst) {
      worst = diff;
      worst_what = what;
    }
  };
  for (std::size_t t = 0; t < kOracleInstances; ++t) {
    const auto n = static_cast<std::size_t>(n_dist(rng));
    const int d = d_dist(rng);
    const bool box = k_dist(rng) == 0;
    oracle::LinkInstance ref;
    ref.kernel = box ? oracle::Kernel::kBoxcar : oracle::Kernel::kEpanechnikov;
    ref.h = h_dist(rng);
    ref.lambda = std::pow(10.0, log_lambda(rng));
    std::vector<double> flat;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> p(d);
      for (auto& v : p) flat.push_back(v = unit(rng));
      ref.X.push_back(p);
    }
    ref.x.resize(d);
    ref.xp.resize(d);
    for (auto& v : ref.x) v = unit(rng);
    for (auto& v : ref.xp) v = unit(rng);
    ref.Y.assign(n, std::vector<double>(n, 0.0));
    LinkOutcomes y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = unit(rng) < 0.5 ? 0.0 : unit(rng);
        ref.Y[i][j] = ref.Y[j][i] = v;
        y.set(i, j, v);
      }
    }
    const CovariateSet cov(DesignSpec::fixed(n, d), flat);
    const SmootherConfig cfg{{box ? KernelKind::kBoxcar : KernelKind::kEpanechnikov, d, false},
                             ref.h, ref.lambda, ref.x, ref.xp};

    track(rel_diff(link_smooth(cov, y, cfg), oracle::smooth(ref)), "estimate");
    const auto w = link_smooth_weights(cov, cfg);
    const auto wref = oracle::weights(ref);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) track(rel_diff(w.values[i * n + j], wref[i][j]), "weight");
    }
    LinkModel model;  // product link
    const auto diag = diagnostics(cov, cfg, model);
    const auto dref = oracle::diagnostics(ref, [](const auto& a, const auto& b) {
      long double s = 0;
      for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<long double>(a[k]) * b[k];
      return s;
    });
    track(rel_diff(diag.s_nh, dref.s_nh), "S_nh");
    track(rel_diff(diag.t_nh, dref.t_nh), "T_nh");
    track(rel_diff(conditional_mean(cov, cfg, model), dref.conditional_mean), "conditional mean");

    // Conventional smoother on the first coordinate of the same nodes.
    std::vector<double> xs, ys;
    std::vector<std::vector<double>> X;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(ref.X[i][0]);
      X.push_back({ref.X[i][0]});
      ys.push_back(unit(rng));
    }
    const double lambda = 0.01 + unit(rng);
    const CovariateSet cov1(DesignSpec::fixed(n, 1), xs);
    const KernelSpec k1{box ? KernelKind::kBoxcar : KernelKind::kEpanechnikov, 1, false};
    track(rel_diff(conventional_smooth(cov1, ys, k1, ref.h, lambda, std::vector<double>{ref.x[0]}),
                   oracle::conventional(ref.kernel, ref.h, lambda, X, ys, {ref.x[0]})),
          "conventional");
  }
  const double elapsed = seconds_since(start);
  return {worst <= kOracleTol && elapsed < kFastBudgetSeconds,
          fmt::format("{} instances, worst relative gap {:.3g} ({}) vs tol {:g}, {:.2f} s (budget {:g} s)",
                      kOracleInstances, worst, worst_what, kOracleTol, elapsed, kFastBudgetSeconds)};
}

Outcome weight_normalization() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_sum = 0.0, worst_const = 0.0;
  for (std::size_t t = 0; t < kNormalizationConfigs; ++t) {
    const int d = 1 + static_cast<int>(t % 3);
    const std::size_t n = 2 + rng() % 40;
    const auto kind = t % 2 == 0 ? DesignKind::kRandomIID : DesignKind::kFixedLattice;
    const DesignSpec spec = kind == DesignKind::kRandomIID ? DesignSpec::random(n, d) : DesignSpec::fixed(n, d);
    const auto cov = generate(spec, rng());
    SmootherConfig cfg{{t % 4 < 2 ? KernelKind::kBoxcar : KernelKind::kEpanechnikov, d, false},
                       0.05 + unit(rng),
                       std::pow(10.0, -4.0 * unit(rng)),
                       std::vector<double>(d),
                       std::vector<double>(d)};
    for (auto& v : cfg.query_x) v = unit(rng);
    for (auto& v : cfg.query_xp) v = unit(rng);
    const auto w = link_smooth_weights(cov, cfg);
    CompensatedSum total;
    for (double v : w.values) total.add(v);
    worst_sum = std::max(worst_sum, std::abs(total.value() - 1.0));

    LinkModel constant;
    constant.function = LinkFunction::kConstant;
    constant.constant = unit(rng);
    constant.law = OutcomeLaw::kGaussian;
    constant.sigma = 0.0;
    const double est = link_smooth(cov, sample_outcomes(constant, cov, rng()), cfg);
    worst_const = std::max(worst_const, std::abs(est - constant.constant));
  }
  const double elapsed = seconds_since(start);
  return {worst_sum <= kNormalizationTol && worst_const <= kNormalizationTol && elapsed < kFastBudgetSeconds,
          fmt::format("{} configs, max |sum W - 1| = {:.3g}, max |f_hat - c| = {:.3g} (tol {:g}), {:.2f} s",
                      kNormalizationConfigs, worst_sum, worst_const, kNormalizationTol, elapsed)};
}

Outcome fixed_degeneracy() {
  const std::size_t n = 200;
  auto cfg = link_experiment(DesignKind::kFixedLattice, n, bandwidth(n, 3.0, 1), 1.0 / n, 7);
  cfg.rx = 50;  // ignored by the fixed design
  cfg.ry = 500;
  const auto est = run_decomposition(cfg, exec());
  std::size_t mismatches = 0;
  for (const auto& v : est.values) {
    if (v.conditional_mean != est.values.front().conditional_mean) ++mismatches;
  }
  return {mismatches == 0 && est.rho3_hat == 0.0 && est.rho3_exact == 0.0 && est.rx == 1,
          fmt::format("{} replicates, {} conditional means differ from the first, rho3_hat = {:g}, "
                      "rho3_exact = {:g}",
                      est.values.size(), mismatches, est.rho3_hat, est.rho3_exact)};
}

double design_ratio(double s, std::uint64_t seed) {
  const std::size_t n = kRatioNodes;
  const double h = bandwidth(n, s, 1);
  auto fixed = link_experiment(DesignKind::kFixedLattice, n, h, 1.0 / n, seed);
  fixed.rx = 1;
  fixed.ry = kRatioReps;
  auto random = link_experiment(DesignKind::kRandomIID, n, h, 1.0 / n, seed);
  random.rx = kRatioReps;
  random.ry = 1;
  const auto vf = values_of(run_replicates(fixed, exec()).values);
  const auto vr = values_of(run_replicates(random, exec()).values);
  return sample_variance(vr) / sample_variance(vf);
}

Outcome design_variance_ratio() {
  const double smooth = design_ratio(3.0, 42);
  const double rough = design_ratio(0.75, 42);
  const bool pass = smooth >= kRatioSmoothMin && rough >= kRatioRoughLow &&
                    rough <= kRatioRoughHigh && smooth > rough;
  return {pass, fmt::format("n = {}, {} reps/design: var ratio random/fixed {:.3f} at s = 3 (need >= {:g}), "
                            "{:.3f} at s = 0.75 (need [{:g}, {:g}])",
                            kRatioNodes, kRatioReps, smooth, kRatioSmoothMin, rough,
                            kRatioRoughLow, kRatioRoughHigh)};
}

RateStudy rate_study(DesignKind kind, double s, std::uint64_t seed) {
  auto base = link_experiment(kind, kRateNs[0], 1.0, 0.0, seed);
  if (kind == DesignKind::kFixedLattice) {
    base.rx = 1;
    base.ry = kRateFixedRy;
  } else {
    base.rx = kRateRandomRx;
    base.ry = kRateRandomRy;
  }
  const Schedule schedule{s, parse_lambda_rule("inverse-n")};
  return run_rate_study(base, schedule, kRateNs, exec());
}

double slope(const RateStudy& study, RateStatistic stat) {
  const auto& f = study.fit_for(stat);
  return f.fit ? f.fit->slope : std::nan("");
}

Outcome rate_exponents_misspecified() {
  const double fixed = slope(rate_study(DesignKind::kFixedLattice, 3.0, 301), RateStatistic::kTotalVariance);
  const double random = slope(rate_study(DesignKind::kRandomIID, 3.0, 302), RateStatistic::kTotalVariance);
  const double pf = predicted_variance_exponent(3.0, 1.0, 1, DesignKind::kFixedLattice);
  const double pr = predicted_variance_exponent(3.0, 1.0, 1, DesignKind::kRandomIID);
  const bool pass = std::abs(fixed - pf) <= kSlopeTol && std::abs(random - pr) <= kSlopeTol && random < fixed;
  return {pass, fmt::format("s = 3, beta = 1: total-variance exponent fixed {:.3f} (predicted {:g}), "
                            "random {:.3f} (predicted {:g}), tol {:g}",
                            fixed, pf, random, pr, kSlopeTol)};
}

Outcome rate_exponents_matched() {
  const double fixed = slope(rate_study(DesignKind::kFixedLattice, 1.0, 311), RateStatistic::kTotalVariance);
  const double random = slope(rate_study(DesignKind::kRandomIID, 1.0, 312), RateStatistic::kTotalVariance);
  const bool pass = std::abs(fixed - 1.0) <= kSlopeTol && std::abs(random - 1.0) <= kSlopeTol &&
                    std::abs(fixed - random) <= kMatchedSlopeGap;
  return {pass, fmt::format("s = 1, beta = 1: total-variance exponent fixed {:.3f}, random {:.3f} "
                            "(predicted 1, tol {:g}, gap {:.3f} vs {:g})",
                            fixed, random, kSlopeTol, std::abs(fixed - random), kMatchedSlopeGap)};
}

Outcome risk_rate() {
  // h = n^{-1/(beta + d)} is the schedule with s = beta.
  const double fixed = slope(rate_study(DesignKind::kFixedLattice, 1.0, 321), RateStatistic::kRisk);
  const double random = slope(rate_study(DesignKind::kRandomIID, 1.0, 322), RateStatistic::kRisk);
  const double target = predicted_risk_exponent(1.0, 1);
  const bool pass = std::abs(fixed - target) <= kSlopeTol && std::abs(random - target) <= kSlopeTol;
  return {pass, fmt::format("h = n^(-1/2): risk exponent fixed {:.3f}, random {:.3f} (predicted {:g}, tol {:g})",
                            fixed, random, target, kSlopeTol)};
}

Outcome conventional_contrast() {
  bool pass = true;
  std::string detail = fmt::format("n = {}, {} reps, lambda = n^(-1/2): ratios", kConventionalNodes,
                                   kConventionalReps);
  for (double s : {0.75, 1.0, 2.0, 3.0}) {
    ConventionalConfig cfg;
    cfg.n = kConventionalNodes;
    cfg.model = NodeModel{};  // f(x) = x, Bernoulli
    cfg.kernel = {KernelKind::kBoxcar, 1, false};
    cfg.h = bandwidth(cfg.n, s, 1);
    cfg.lambda = 1.0 / std::sqrt(static_cast<double>(cfg.n));
    cfg.query = 0.5;
    cfg.reps = kConventionalReps;
    cfg.master_seed = 500 + static_cast<std::uint64_t>(s * 100);
    const auto cmp = run_conventional_comparison(cfg, exec());
    const double ratio = sample_variance(cmp.random) / sample_variance(cmp.fixed);
    pass = pass && ratio >= kConventionalLow && ratio <= kConventionalHigh;
    detail += fmt::format(" s={:g}:{:.3f}", s, ratio);
  }
  detail += fmt::format(" (need [{:g}, {:g}])", kConventionalLow, kConventionalHigh);
  return {pass, detail};
}

Outcome total_variance_law() {
  const std::size_t n = kTotalVarianceNodes;
  auto cfg = link_experiment(DesignKind::kRandomIID, n, bandwidth(n, 3.0, 1), 1.0 / n, 404);
  cfg.rx = kTotalVarianceDraws;
  cfg.ry = kTotalVarianceDraws;
  const auto est = run_decomposition(cfg, exec());
  const double parts = est.rho2_hat + est.rho3_hat;
  const double rel = std::abs(est.total_variance - parts) / est.total_variance;
  return {rel <= kTotalVarianceTol,
          fmt::format("rx = ry = {}: total {:.6e}, rho2 + rho3 = {:.6e}, relative gap {:.4f} (tol {:g})",
                      kTotalVarianceDraws, est.total_variance, parts, rel, kTotalVarianceTol)};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / fmt::format("linksmooth_acceptance_{}", std::random_device{}());
  const std::vector<std::vector<std::string>> commands = {
      {"histogram", "--design", "both", "--n", "120", "--reps", "400", "--s", "3", "--seed", "42"},
      {"decompose", "--design", "both", "--n", "60", "--rx", "20", "--ry", "20", "--seed", "42"},
      {"ratestudy", "--design", "both", "--ns", "30,60,120", "--rx", "10", "--ry", "10", "--seed", "42"},
      {"conventional", "--n", "1000", "--reps", "300", "--s", "2", "--seed", "42"},
  };
  std::size_t compared = 0;
  std::string problem;
  for (std::size_t c = 0; c < commands.size() && problem.empty(); ++c) {
    std::vector<fs::path> dirs;
    for (const char* threads : {"1", "4", "4"}) {
      auto args = commands[c];
      dirs.push_back(root / fmt::format("{}_{}_{}", c, threads, dirs.size()));
      args.insert(args.end(), {"--threads", threads, "--out", dirs.back().string()});
      std::ostringstream out, err;
      if (const int code = cli::run(args, out, err); code != 0) {
        problem = fmt::format("{} exited {}: {}", commands[c][0], code, err.str());
        break;
      }
    }
    if (!problem.empty()) break;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const auto name = entry.path().filename();
      if (name == "run_manifest.json") continue;  // wall time and thread count only
      const std::string first = slurp(entry.path());
      for (std::size_t k = 1; k < dirs.size(); ++k) {
        if (slurp(dirs[k] / name) != first) {
          problem = fmt::format("{} differs between runs of {}", name.string(), commands[c][0]);
        }
      }
      ++compared;
    }
  }
  fs::remove_all(root);
  if (!problem.empty()) return {false, problem};
  return {compared > 0, fmt::format("{} CSV/JSON outputs byte-identical across --threads 1/4/4", compared)};
}

const std::vector<std::pair<std::string, Criterion>>& criteria() {
  static const std::vector<std::pair<std::string, Criterion>> table = {
      {"oracle_equivalence", oracle_equivalence},
      {"weight_normalization", weight_normalization},
      {"fixed_degeneracy", fixed_degeneracy},
      {"design_variance_ratio", design_variance_ratio},
      {"rate_exponents_misspecified", rate_exponents_misspecified},
      {"rate_exponents_matched", rate_exponents_matched},
      {"risk_rate", risk_rate},
      {"conventional_contrast", conventional_contrast},
      {"total_variance_law", total_variance_law},
      {"determinism", determinism},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  if (wanted.size() == 1 && wanted[0] == "--list") {
    for (const auto& [name, fn] : criteria()) std::cout << name << "\n";
    return 0;
  }
  for (const auto& name : wanted) {
    const bool known = std::any_of(criteria().begin(), criteria().end(),
                                   [&](const auto& c) { return c.first == name; });
    if (!known) {
      std::cerr << "unknown criterion " << name << "\n";
      return 2;
    }
  }
  int failures = 0;
  for (const auto& [name, fn] : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    Outcome result;
    const auto start = std::chrono::steady_clock::now();
    try {
      result = fn();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    if (!result.pass) ++failures;
    std::cout << (result.pass ? "PASS " : "FAIL ") << name << ": " << result.detail
              << fmt::format(" [{:.1f} s]", seconds_since(start)) << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
