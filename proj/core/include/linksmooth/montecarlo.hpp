#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linksmooth/design.hpp"
#include "linksmooth/error.hpp"
#include "linksmooth/estimator.hpp"
#include "linksmooth/histogram.hpp"
#include "linksmooth/model.hpp"
#include "linksmooth/parallel.hpp"

namespace linksmooth {

/// Nested replication plan: `rx` covariate draws, each with `ry` outcome draws.
/// Fixed designs always use a single covariate draw.
struct ExperimentConfig {
  DesignSpec design;
  LinkModel model;
  SmootherConfig smoother;
  std::size_t rx = 1;
  std::size_t ry = 1;
  std::uint64_t master_seed = 0;
  HistogramOptions histogram;

  [[nodiscard]] std::size_t covariate_draws() const noexcept {
    return design.kind == DesignKind::kFixedLattice ? 1 : rx;
  }
  [[nodiscard]] std::size_t replicates() const noexcept { return covariate_draws() * ry; }
  void validate() const;
};

/// Failure inside one replicate; the message carries the replicate indices.
class ReplicateError : public Error {
 public:
  ReplicateError(std::size_t draw, std::size_t inner, const std::string& what);
  std::size_t draw;
  std::size_t inner;
};

struct ReplicateValue {
  std::size_t replicate;  // draw * ry + inner
  std::size_t draw;
  std::size_t inner;
  double value;
  double s_nh;
  double t_nh;
  double conditional_mean;
};

struct DrawSummary {
  std::size_t draw;
  double mean;              // within-draw mean of f_hat
  double variance;          // within-draw unbiased variance (0 when ry = 1)
  double conditional_mean;  // E[f_hat | X] from the S/T identity
  double s_nh;
  double t_nh;
};

struct ExperimentRun {
  double truth;
  std::vector<ReplicateValue> values;  // ordered by replicate index
  std::vector<DrawSummary> draws;
};

/// Runs every replicate. Covariates of draw i come from stream (seed, covariates, i),
/// outcomes of replicate (i, j) from stream (seed, outcomes, i, j), so results do
/// not depend on the thread count.
ExperimentRun run_replicates(const ExperimentConfig& cfg, const ExecutionOptions& exec = {});

struct HistogramRun {
  double truth;
  std::vector<ReplicateValue> values;
  Histogram histogram;
};

HistogramRun run_histogram(const ExperimentConfig& cfg, const ExecutionOptions& exec = {});

/// Monte Carlo proxies of the bias/variance decomposition at the configured f.
struct DecompositionEstimate {
  double truth = 0.0;
  double mean = 0.0;
  double rho1_hat = 0.0;        // (mean f_hat - f)^2
  double rho2_hat = 0.0;        // mean over draws of the within-draw variance
  double rho3_hat = 0.0;        // across-draw variance of within-draw means, minus rho2_hat / ry
  double rho3_exact = 0.0;      // across-draw variance of E[f_hat | X]
  double total_variance = 0.0;  // variance over all replicates
  double risk = 0.0;            // mean (f_hat - f)^2
  double t_bar = 0.0;           // across-draw mean of T_nh
  std::vector<double> epsilon_hat;  // per draw: 1/T_nh - 1/t_bar
  Histogram histogram;
  std::size_t rx = 0;
  std::size_t ry = 0;
  std::vector<ReplicateValue> values;
  std::vector<DrawSummary> draws;
};

/// Requires ry >= 2, and rx >= 2 for random designs.
DecompositionEstimate run_decomposition(const ExperimentConfig& cfg,
                                        const ExecutionOptions& exec = {});

/// Summary statistics of an already computed run.
DecompositionEstimate decompose(const ExperimentRun& run, std::size_t ry,
                                const HistogramOptions& histogram = {});

struct ConventionalConfig {
  std::size_t n = 5000;
  NodeModel model;
  KernelSpec kernel;
  double h = 1.0;
  double lambda = 0.0;
  double query = 0.5;
  std::size_t reps = 10000;
  std::uint64_t master_seed = 0;
  HistogramOptions histogram;

  void validate() const;
};

/// `reps` conventional-smoother estimates at the query under one design (d = 1).
std::vector<double> run_conventional(const ConventionalConfig& cfg, DesignKind design,
                                     const ExecutionOptions& exec = {});

struct ConventionalComparison {
  double truth;
  std::vector<double> fixed;
  std::vector<double> random;
  Histogram fixed_histogram;   // shares edges with random_histogram
  Histogram random_histogram;
};

ConventionalComparison run_conventional_comparison(const ConventionalConfig& cfg,
                                                   const ExecutionOptions& exec = {});

}  // namespace linksmooth
