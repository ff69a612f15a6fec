#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include <linksmooth/montecarlo.hpp>
#include <linksmooth/seeding.hpp>
#include <linksmooth/summation.hpp>

#include "linksmooth_cli/commands.hpp"

namespace linksmooth::cli {

namespace {

// Returns an empty string on success, a reason otherwise.
using Check = std::function<std::string(const ExecutionOptions&)>;

ExperimentConfig small_experiment(DesignKind kind, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.design = kind == DesignKind::kFixedLattice ? DesignSpec::fixed(30, 1) : DesignSpec::random(30, 1);
  cfg.smoother.kernel = {KernelKind::kBoxcar, 1, false};
  cfg.smoother.h = 0.3;
  cfg.smoother.lambda = 1.0 / 30;
  cfg.smoother.query_x = {0.5};
  cfg.smoother.query_xp = {0.5};
  cfg.rx = 40;
  cfg.ry = 40;
  cfg.master_seed = seed;
  return cfg;
}

std::string weights_normalize(const ExecutionOptions&) {
  Engine engine = make_engine(7, StreamTag::kHolder, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 2;
    auto spec = DesignSpec::random(4 + trial % 5, d);
    const auto cov = generate(spec, stream_seed(7, StreamTag::kCovariates, trial));
    SmootherConfig cfg{{KernelKind::kEpanechnikov, d, false}, 0.2 + unit(engine), 0.01 * unit(engine),
                       std::vector<double>(d), std::vector<double>(d)};
    for (int j = 0; j < d; ++j) {
      cfg.query_x[j] = unit(engine);
      cfg.query_xp[j] = unit(engine);
    }
    const auto w = link_smooth_weights(cov, cfg);
    CompensatedSum total;
    for (double v : w.values) total.add(v);
    if (std::abs(total.value() - 1.0) > 1e-12) {
      return fmt::format("trial {}: sum of weights {:.17g}", trial, total.value());
    }
    LinkModel constant;
    constant.function = LinkFunction::kConstant;
    constant.constant = 0.3;
    constant.law = OutcomeLaw::kGaussian;
    constant.sigma = 0.0;
    const double est = link_smooth(cov, sample_outcomes(constant, cov, 1), cfg);
    if (std::abs(est - 0.3) > 1e-12) return fmt::format("trial {}: constant estimate {:.17g}", trial, est);
  }
  return {};
}

std::string fixed_degeneracy(const ExecutionOptions& exec) {
  auto cfg = small_experiment(DesignKind::kFixedLattice, 11);
  const auto run = run_replicates(cfg, exec);
  for (const auto& v : run.values) {
    if (v.conditional_mean != run.values.front().conditional_mean) {
      return fmt::format("replicate {} has a different conditional mean", v.replicate);
    }
  }
  const auto est = decompose(run, cfg.ry);
  if (est.rho3_hat != 0.0) return fmt::format("rho3_hat = {:.17g}", est.rho3_hat);
  return {};
}

std::string thread_determinism(const ExecutionOptions&) {
  const auto cfg = small_experiment(DesignKind::kRandomIID, 13);
  const auto one = run_replicates(cfg, {1});
  const auto many = run_replicates(cfg, {3});
  for (std::size_t k = 0; k < one.values.size(); ++k) {
    if (one.values[k].value != many.values[k].value) {
      return fmt::format("replicate {} differs between 1 and 3 threads", k);
    }
  }
  return {};
}

std::string total_variance(const ExecutionOptions& exec) {
  const auto est = run_decomposition(small_experiment(DesignKind::kRandomIID, 17), exec);
  const double parts = est.rho2_hat + est.rho3_hat;
  const double rel = std::abs(est.total_variance - parts) / est.total_variance;
  if (rel > 0.05) return fmt::format("relative gap {:.4f}", rel);
  if (est.histogram.total() != est.rx * est.ry) return "histogram counts do not sum to rx * ry";
  return {};
}

}  // namespace

int cmd_selftest(const RunOptions& options, std::ostream& out, std::ostream&) {
  const ExecutionOptions exec{options.thread_count()};
  const std::vector<std::pair<std::string, Check>> checks = {
      {"weights sum to one and constants are reproduced", weights_normalize},
      {"fixed design has a constant conditional mean", fixed_degeneracy},
      {"results do not depend on the thread count", thread_determinism},
      {"law of total variance", total_variance},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    std::string reason;
    try {
      reason = check(exec);
    } catch (const std::exception& e) {
      reason = e.what();
    }
    if (reason.empty()) {
      out << "PASS " << name << "\n";
    } else {
      ++failures;
      out << "FAIL " << name << ": " << reason << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace linksmooth::cli
