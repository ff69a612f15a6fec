#include "linksmooth/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linksmooth/seeding.hpp"
#include "linksmooth/summation.hpp"

namespace linksmooth {

namespace {

// A task covers outcome replicates [begin, end) of one covariate draw.
struct Task {
  std::size_t draw;
  std::size_t begin;
  std::size_t end;
};

std::vector<Task> plan_tasks(std::size_t draws, std::size_t ry, unsigned threads) {
  // Enough tasks to keep every worker busy; chunking never changes results.
  const std::size_t target = 4 * static_cast<std::size_t>(std::max(1U, threads));
  const std::size_t chunks =
      draws >= target ? 1 : std::min(ry, (target + draws - 1) / draws);
  const std::size_t chunk = (ry + chunks - 1) / chunks;
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < draws; ++d) {
    for (std::size_t b = 0; b < ry; b += chunk) tasks.push_back({d, b, std::min(ry, b + chunk)});
  }
  return tasks;
}

}  // namespace

ReplicateError::ReplicateError(std::size_t draw_index, std::size_t inner_index,
                               const std::string& what)
    : Error("replicate (draw " + std::to_string(draw_index) + ", outcome " +
            std::to_string(inner_index) + "): " + what),
      draw(draw_index),
      inner(inner_index) {}

void ExperimentConfig::validate() const {
  design.validate();
  model.validate();
  smoother.validate(design.dim);
  require(rx >= 1, "rx must be ≥ 1");
  require(ry >= 1, "ry must be ≥ 1");
}

ExperimentRun run_replicates(const ExperimentConfig& cfg, const ExecutionOptions& exec) {
  cfg.validate();
  const std::size_t draws = cfg.covariate_draws();
  const std::size_t ry = cfg.ry;

  ExperimentRun run;
  run.truth = truth(cfg.model, cfg.smoother.query_x, cfg.smoother.query_xp);
  run.values.resize(draws * ry);
  run.draws.resize(draws);

  const auto tasks = plan_tasks(draws, ry, exec.threads);
  parallel_for(tasks.size(), exec.threads, [&](std::size_t t) {
    const Task& task = tasks[t];
    std::size_t inner = task.begin;
    try {
      const CovariateSet cov = generate(
          cfg.design, stream_seed(cfg.master_seed, StreamTag::kCovariates, task.draw));
      const LinkSmoother smoother(cov, cfg.smoother);
      const double s = smoother.s_nh(cfg.model);
      const double tn = smoother.t_nh();
      const double cond_mean = tn > 0.0 ? run.truth + s / tn : std::nan("");
      if (task.begin == 0) {
        DrawSummary& summary = run.draws[task.draw];
        summary.draw = task.draw;
        summary.s_nh = s;
        summary.t_nh = tn;
        summary.conditional_mean = cond_mean;
      }
      LinkOutcomes outcomes(cov.size());
      for (; inner < task.end; ++inner) {
        sample_outcomes_into(
            cfg.model, cov,
            stream_seed(cfg.master_seed, StreamTag::kOutcomes, task.draw, inner), outcomes);
        const std::size_t r = task.draw * ry + inner;
        run.values[r] = {r, task.draw, inner, smoother(outcomes), s, tn, cond_mean};
      }
    } catch (const Error& e) {
      throw ReplicateError(task.draw, inner, e.what());
    }
  });

  std::vector<double> within(ry);
  for (auto& summary : run.draws) {
    for (std::size_t j = 0; j < ry; ++j) within[j] = run.values[summary.draw * ry + j].value;
    summary.mean = mean(within);
    summary.variance = sample_variance(within);
  }
  return run;
}

HistogramRun run_histogram(const ExperimentConfig& cfg, const ExecutionOptions& exec) {
  ExperimentRun run = run_replicates(cfg, exec);
  std::vector<double> values;
  values.reserve(run.values.size());
  for (const auto& v : run.values) values.push_back(v.value);
  return {run.truth, std::move(run.values), make_histogram(values, cfg.histogram)};
}

DecompositionEstimate decompose(const ExperimentRun& run, std::size_t ry,
                                const HistogramOptions& histogram) {
  const std::size_t draws = run.draws.size();
  require(ry >= 2, "rho2 requires ry ≥ 2");
  require(run.values.size() == draws * ry, "run size does not match draws * ry");

  DecompositionEstimate est;
  est.truth = run.truth;
  est.rx = draws;
  est.ry = ry;

  std::vector<double> values;
  values.reserve(run.values.size());
  CompensatedSum squared_error;
  for (const auto& v : run.values) {
    values.push_back(v.value);
    squared_error.add((v.value - run.truth) * (v.value - run.truth));
  }
  est.mean = mean(values);
  est.rho1_hat = (est.mean - run.truth) * (est.mean - run.truth);
  est.total_variance = sample_variance(values);
  est.risk = squared_error.value() / static_cast<double>(values.size());

  std::vector<double> draw_means, draw_variances, conditional_means, t_values;
  for (const auto& d : run.draws) {
    draw_means.push_back(d.mean);
    draw_variances.push_back(d.variance);
    conditional_means.push_back(d.conditional_mean);
    t_values.push_back(d.t_nh);
  }
  est.rho2_hat = mean(draw_variances);
  if (draws >= 2) {
    est.rho3_hat =
        std::max(0.0, sample_variance(draw_means) - est.rho2_hat / static_cast<double>(ry));
    est.rho3_exact = sample_variance(conditional_means);
  }
  est.t_bar = mean(t_values);
  for (double t : t_values) est.epsilon_hat.push_back(1.0 / t - 1.0 / est.t_bar);
  est.histogram = make_histogram(values, histogram);
  est.values = run.values;
  est.draws = run.draws;
  return est;
}

DecompositionEstimate run_decomposition(const ExperimentConfig& cfg, const ExecutionOptions& exec) {
  require(cfg.ry >= 2, "rho2 requires ry ≥ 2");
  if (cfg.design.kind == DesignKind::kRandomIID) require(cfg.rx >= 2, "rho3 requires rx ≥ 2");
  return decompose(run_replicates(cfg, exec), cfg.ry, cfg.histogram);
}

void ConventionalConfig::validate() const {
  require(n >= 2, "n must be ≥ 2");
  require(kernel.dim == 1, "the conventional comparison is univariate (d must be 1)");
  require(h > 0.0, "bandwidth h must be > 0");
  require(lambda >= 0.0, "lambda must be ≥ 0");
  require(reps >= 1, "reps must be ≥ 1");
  require(query >= 0.0 && query <= 1.0, "query must lie in [0, 1]");
  model.validate();
}

std::vector<double> run_conventional(const ConventionalConfig& cfg, DesignKind design,
                                     const ExecutionOptions& exec) {
  cfg.validate();
  const DesignSpec spec = design == DesignKind::kFixedLattice ? DesignSpec::fixed(cfg.n)
                                                              : DesignSpec::random(cfg.n);
  const std::vector<double> query{cfg.query};

  std::vector<double> values(cfg.reps);
  parallel_for(cfg.reps, exec.threads, [&](std::size_t r) {
    try {
      const CovariateSet cov =
          generate(spec, stream_seed(cfg.master_seed, StreamTag::kCovariates, r));
      const auto y = sample_node_outcomes(
          cfg.model, cov, stream_seed(cfg.master_seed, StreamTag::kOutcomes, r));
      values[r] = conventional_smooth(cov, y, cfg.kernel, cfg.h, cfg.lambda, query);
    } catch (const Error& e) {
      throw ReplicateError(r, 0, e.what());
    }
  });
  return values;
}

ConventionalComparison run_conventional_comparison(const ConventionalConfig& cfg,
                                                   const ExecutionOptions& exec) {
  ConventionalComparison out;
  const std::vector<double> query{cfg.query};
  out.truth = truth(cfg.model, query);
  out.fixed = run_conventional(cfg, DesignKind::kFixedLattice, exec);
  out.random = run_conventional(cfg, DesignKind::kRandomIID, exec);
  auto [fixed_hist, random_hist] = compare_histograms(out.fixed, out.random, cfg.histogram);
  out.fixed_histogram = std::move(fixed_hist);
  out.random_histogram = std::move(random_hist);
  return out;
}

}  // namespace linksmooth
