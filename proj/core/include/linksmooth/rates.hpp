#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linksmooth/design.hpp"
#include "linksmooth/estimator.hpp"
#include "linksmooth/montecarlo.hpp"

namespace linksmooth {

enum class LambdaRuleKind { kInverseN, kInverseSqrtN, kFixed };

struct LambdaRule {
  LambdaRuleKind kind = LambdaRuleKind::kInverseN;
  double value = 0.0;  // used by kFixed

  [[nodiscard]] double operator()(std::size_t n) const;
};

LambdaRule parse_lambda_rule(std::string_view name, double fixed_value = 0.0);
std::string_view to_string(LambdaRuleKind kind) noexcept;

/// h = n^{-1/(s + d)}.
double bandwidth(std::size_t n, double s, int dim);

/// Bandwidth/regularization as functions of n. `s` is the assumed smoothness
/// and may differ from the true Hoelder exponent.
struct Schedule {
  double s = 1.0;
  LambdaRule lambda_rule;

  [[nodiscard]] double h(std::size_t n, int dim) const { return bandwidth(n, s, dim); }
  [[nodiscard]] double lambda(std::size_t n) const { return lambda_rule(n); }
  void validate() const;
};

/// Variance decay exponent alpha in Var f_hat = O(n^{-alpha}) for h = n^{-1/(s+d)}:
/// 2s/(s+d) under a fixed design, min(2s, 2 beta + s)/(s+d) under a random design.
double predicted_variance_exponent(double s, double beta, int dim, DesignKind design);

/// Minimax risk exponent 2 beta / (beta + d).
double predicted_risk_exponent(double beta, int dim);

struct RateFit {
  std::vector<double> ns;
  std::vector<double> values;
  double slope = 0.0;  // alpha_hat in value ~ n^{-alpha_hat}; positive means decay
  double intercept = 0.0;
  double r_squared = 0.0;
  std::optional<double> predicted;
};

/// OLS of log(value) on log(n). Needs >= 3 distinct n and positive values.
RateFit fit_slope(std::span<const double> ns, std::span<const double> values);

enum class RateStatistic { kTotalVariance, kRho2, kRho3Exact, kSquaredBias, kRisk };

std::string_view to_string(RateStatistic stat) noexcept;
inline constexpr RateStatistic kRateStatistics[] = {
    RateStatistic::kTotalVariance, RateStatistic::kRho2, RateStatistic::kRho3Exact,
    RateStatistic::kSquaredBias, RateStatistic::kRisk};

/// Theoretical exponent of each statistic's upper bound, if the bound decays.
std::optional<double> predicted_exponent(RateStatistic stat, double s, double beta, int dim,
                                         DesignKind design);

struct RatePoint {
  std::size_t n = 0;
  double h = 0.0;
  double lambda = 0.0;
  ConditionAudit audit;
  DecompositionEstimate estimate;

  [[nodiscard]] double statistic(RateStatistic stat) const;
};

struct StatisticFit {
  RateStatistic statistic;
  std::optional<double> predicted;
  std::optional<RateFit> fit;  // empty when some value is not positive
  std::string note;
};

struct RateStudy {
  DesignKind design;
  Schedule schedule;
  double nu = kDefaultNu;
  std::vector<RatePoint> points;
  std::vector<StatisticFit> fits;

  [[nodiscard]] const StatisticFit& fit_for(RateStatistic stat) const;
};

/// For each n, sets h and lambda from the schedule (query and kernel come from
/// `base`), runs the decomposition and finally fits log-log slopes. `on_point`
/// fires after each n so partial results can be flushed. Per-n master seeds are
/// derived from base.master_seed and n.
RateStudy run_rate_study(const ExperimentConfig& base, const Schedule& schedule,
                         std::span<const std::size_t> ns, const ExecutionOptions& exec = {},
                         double nu = kDefaultNu,
                         const std::function<void(const RatePoint&)>& on_point = {});

}  // namespace linksmooth
