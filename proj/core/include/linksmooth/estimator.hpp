#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "linksmooth/design.hpp"
#include "linksmooth/kernel.hpp"
#include "linksmooth/model.hpp"

namespace linksmooth {

struct SmootherConfig {
  KernelSpec kernel;
  double h = 1.0;
  double lambda = 0.0;
  std::vector<double> query_x;
  std::vector<double> query_xp;

  void validate(int dim) const;
};

/// Audit of the bandwidth/regularization constraints
///   n^{-1/d} <= h <= 1,   (n h^d)^{-nu} <= lambda <= h^d.
/// A failed audit is a warning; the smoother still runs. The constraint only
/// asks for *some* nu > 0, so the audit also reports the smallest admissible nu.
struct ConditionAudit {
  bool bandwidth_lower = true;
  bool bandwidth_upper = true;
  bool lambda_lower = true;
  bool lambda_upper = true;
  double nu_min = 0.0;  // log(1/lambda) / log(n h^d); infinite when n h^d <= 1 or lambda = 0

  [[nodiscard]] bool satisfied() const noexcept {
    return bandwidth_lower && bandwidth_upper && lambda_lower && lambda_upper;
  }
  /// Empty when satisfied; otherwise a comma-separated list of violated bounds.
  [[nodiscard]] std::string violations() const;
};

/// nu = 2 makes lambda = 1/n admissible for h = n^{-1/(beta+d)} with beta = d = 1.
inline constexpr double kDefaultNu = 2.0;

ConditionAudit audit_conditions(std::size_t n, int dim, double h, double lambda,
                                double nu = kDefaultNu);

struct SmootherDiagnostics {
  double s_nh = 0.0;  // |I_n|^{-1} sum (f(X_i1, X_i2) - f(x, x')) (K_h K_h + lambda)
  double t_nh = 0.0;  // |I_n|^{-1} sum (K_h K_h + lambda)
  double weight_sum = 0.0;
  double max_weight = 0.0;
};

/// Weights W_{i1,i2} over ordered pairs, stored as an n x n matrix with a zero diagonal.
struct PairWeights {
  std::size_t n = 0;
  std::vector<double> values;

  [[nodiscard]] double operator()(std::size_t i1, std::size_t i2) const noexcept {
    return values[i1 * n + i2];
  }
};

/// Regularized product-kernel link smoother bound to one covariate draw and query.
///
/// The estimate is
///   sum_{i1 != i2} Y_{i1 i2} (a_{i1} b_{i2} + lambda) / sum_{i1 != i2} (a_{i1} b_{i2} + lambda)
/// with a_i = K_h(x - X_i) and b_i = K_h(x' - X_i). Because Y is symmetric, each
/// unordered pair {i, j} enters once with the symmetrized weight
/// a_i b_j + a_j b_i + 2 lambda; all pair sums use compensated accumulation in a
/// fixed order. The kernel values are computed once in the constructor so that
/// repeated outcome draws on the same covariates cost one pass over the pairs.
///
/// The covariate set must outlive the smoother.
class LinkSmoother {
 public:
  LinkSmoother(const CovariateSet& cov, const SmootherConfig& cfg);

  /// Throws EmptyNeighborhood if lambda = 0 and every kernel product vanishes.
  [[nodiscard]] double operator()(const LinkOutcomes& outcomes) const;

  [[nodiscard]] PairWeights weights() const;
  [[nodiscard]] SmootherDiagnostics diagnostics(const LinkModel& model) const;

  /// S_nh alone; cheaper than diagnostics() since it skips the weight scan.
  [[nodiscard]] double s_nh(const LinkModel& model) const;

  /// E[f_hat | X] = f(x, x') + S_nh / T_nh.
  [[nodiscard]] double conditional_mean(const LinkModel& model) const;

  /// |I_n|^{-1} times the denominator.
  [[nodiscard]] double t_nh() const noexcept;
  [[nodiscard]] std::size_t size() const noexcept { return n_; }

 private:
  [[nodiscard]] double pair_weight(std::size_t i, std::size_t j) const noexcept {
    return a_[i] * b_[j] + a_[j] * b_[i] + 2.0 * lambda_;
  }
  void require_nonempty() const;

  const CovariateSet* cov_;
  std::size_t n_;
  double lambda_;
  std::vector<double> query_x_;
  std::vector<double> query_xp_;
  std::vector<double> a_;
  std::vector<double> b_;
  double denominator_;  // sum over ordered pairs
};

double link_smooth(const CovariateSet& cov, const LinkOutcomes& outcomes, const SmootherConfig& cfg);
PairWeights link_smooth_weights(const CovariateSet& cov, const SmootherConfig& cfg);
SmootherDiagnostics diagnostics(const CovariateSet& cov, const SmootherConfig& cfg,
                                const LinkModel& model);
double conditional_mean(const CovariateSet& cov, const SmootherConfig& cfg, const LinkModel& model);

/// Regularized Nadaraya-Watson estimate at `query`:
///   sum_i Y_i (K_h(x - X_i) + lambda) / sum_i (K_h(x - X_i) + lambda).
double conventional_smooth(const CovariateSet& cov, std::span<const double> outcomes,
                           const KernelSpec& kernel, double h, double lambda,
                           std::span<const double> query);

}  // namespace linksmooth
