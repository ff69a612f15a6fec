#include "linksmooth/rates.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "linksmooth/error.hpp"
#include "linksmooth/seeding.hpp"

namespace linksmooth {

double LambdaRule::operator()(std::size_t n) const {
  const double nd = static_cast<double>(n);
  switch (kind) {
    case LambdaRuleKind::kInverseN:
      return 1.0 / nd;
    case LambdaRuleKind::kInverseSqrtN:
      return 1.0 / std::sqrt(nd);
    case LambdaRuleKind::kFixed:
      return value;
  }
  return 0.0;
}

LambdaRule parse_lambda_rule(std::string_view name, double fixed_value) {
  if (name == "inverse-n") return {LambdaRuleKind::kInverseN, 0.0};
  if (name == "inverse-sqrt-n") return {LambdaRuleKind::kInverseSqrtN, 0.0};
  if (name == "fixed") return {LambdaRuleKind::kFixed, fixed_value};
  throw InvalidArgument("unknown lambda rule '" + std::string(name) +
                        "' (expected inverse-n, inverse-sqrt-n or fixed)");
}

std::string_view to_string(LambdaRuleKind kind) noexcept {
  switch (kind) {
    case LambdaRuleKind::kInverseN:
      return "inverse-n";
    case LambdaRuleKind::kInverseSqrtN:
      return "inverse-sqrt-n";
    case LambdaRuleKind::kFixed:
      return "fixed";
  }
  return "unknown";
}

double bandwidth(std::size_t n, double s, int dim) {
  require(n >= 1, "n must be ≥ 1");
  require(s > 0.0, "s must be > 0");
  require(dim >= 1, "d must be ≥ 1");
  return std::pow(static_cast<double>(n), -1.0 / (s + dim));
}

void Schedule::validate() const {
  require(s > 0.0, "s must be > 0");
  if (lambda_rule.kind == LambdaRuleKind::kFixed) {
    require(lambda_rule.value >= 0.0, "fixed lambda must be ≥ 0");
  }
}

double predicted_variance_exponent(double s, double beta, int dim, DesignKind design) {
  require(s > 0.0 && beta > 0.0, "s and beta must be > 0");
  require(dim >= 1, "d must be ≥ 1");
  const double denom = s + dim;
  if (design == DesignKind::kFixedLattice) return 2.0 * s / denom;
  return std::min(2.0 * s, 2.0 * beta + s) / denom;
}

double predicted_risk_exponent(double beta, int dim) {
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
  require(dim >= 1, "d must be ≥ 1");
  return 2.0 * beta / (beta + dim);
}

RateFit fit_slope(std::span<const double> ns, std::span<const double> values) {
  require(ns.size() == values.size(), "ns and values must have equal length");
  require(ns.size() >= 3, "need ≥ 3 sample sizes");
  std::set<double> distinct;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    require(ns[k] > 0.0, "sample sizes must be positive");
    require(values[k] > 0.0 && std::isfinite(values[k]),
            "values must be positive and finite (value " + std::to_string(k) + " is not)");
    require(distinct.insert(ns[k]).second, "duplicate sample size " + std::to_string(ns[k]));
  }

  const std::size_t m = ns.size();
  std::vector<double> lx(m), ly(m);
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    lx[k] = std::log(ns[k]);
    ly[k] = std::log(values[k]);
    mx += lx[k];
    my += ly[k];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  const double beta1 = sxy / sxx;

  RateFit fit;
  fit.ns.assign(ns.begin(), ns.end());
  fit.values.assign(values.begin(), values.end());
  fit.slope = -beta1;
  fit.intercept = my - beta1 * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::string_view to_string(RateStatistic stat) noexcept {
  switch (stat) {
    case RateStatistic::kTotalVariance:
      return "total_variance";
    case RateStatistic::kRho2:
      return "rho2_hat";
    case RateStatistic::kRho3Exact:
      return "rho3_exact";
    case RateStatistic::kSquaredBias:
      return "squared_bias";
    case RateStatistic::kRisk:
      return "risk";
  }
  return "unknown";
}

std::optional<double> predicted_exponent(RateStatistic stat, double s, double beta, int dim,
                                         DesignKind design) {
  const double denom = s + dim;
  switch (stat) {
    case RateStatistic::kTotalVariance:
      return predicted_variance_exponent(s, beta, dim, design);
    case RateStatistic::kRho2:
      // (n h^d)^{-2}
      return 2.0 * s / denom;
    case RateStatistic::kRho3Exact:
      // h^{2 beta} (n h^d)^{-1}; identically zero under a fixed design.
      if (design == DesignKind::kFixedLattice) return std::nullopt;
      return (2.0 * beta + s) / denom;
    case RateStatistic::kSquaredBias:
      return 2.0 * beta / denom;
    case RateStatistic::kRisk:
      return std::min(2.0 * beta / denom, predicted_variance_exponent(s, beta, dim, design));
  }
  return std::nullopt;
}

double RatePoint::statistic(RateStatistic stat) const {
  switch (stat) {
    case RateStatistic::kTotalVariance:
      return estimate.total_variance;
    case RateStatistic::kRho2:
      return estimate.rho2_hat;
    case RateStatistic::kRho3Exact:
      return estimate.rho3_exact;
    case RateStatistic::kSquaredBias:
      return estimate.rho1_hat;
    case RateStatistic::kRisk:
      return estimate.risk;
  }
  return 0.0;
}

const StatisticFit& RateStudy::fit_for(RateStatistic stat) const {
  for (const auto& f : fits) {
    if (f.statistic == stat) return f;
  }
  throw InvalidArgument("no fit for statistic " + std::string(to_string(stat)));
}

RateStudy run_rate_study(const ExperimentConfig& base, const Schedule& schedule,
                         std::span<const std::size_t> ns, const ExecutionOptions& exec, double nu,
                         const std::function<void(const RatePoint&)>& on_point) {
  schedule.validate();
  require(ns.size() >= 3, "need ≥ 3 sample sizes");
  for (std::size_t k = 0; k < ns.size(); ++k) {
    require(ns[k] >= 2, "every sample size must be ≥ 2");
    require(k == 0 || ns[k] > ns[k - 1], "sample sizes must be strictly increasing");
  }

  const int dim = base.design.dim;
  RateStudy study{base.design.kind, schedule, nu, {}, {}};
  for (std::size_t n : ns) {
    ExperimentConfig cfg = base;
    cfg.design.n = n;
    cfg.smoother.h = schedule.h(n, dim);
    cfg.smoother.lambda = schedule.lambda(n);
    cfg.master_seed = stream_seed(base.master_seed, StreamTag::kStudyPoint, n);

    RatePoint point;
    point.n = n;
    point.h = cfg.smoother.h;
    point.lambda = cfg.smoother.lambda;
    point.audit = audit_conditions(n, dim, point.h, point.lambda, nu);
    point.estimate = run_decomposition(cfg, exec);
    point.estimate.values.clear();  // keep studies light; summaries suffice
    study.points.push_back(std::move(point));
    if (on_point) on_point(study.points.back());
  }

  std::vector<double> xs;
  for (std::size_t n : ns) xs.push_back(static_cast<double>(n));
  for (RateStatistic stat : kRateStatistics) {
    StatisticFit entry{stat, predicted_exponent(stat, schedule.s, base.model.beta, dim,
                                                base.design.kind),
                       std::nullopt, {}};
    std::vector<double> ys;
    for (const auto& p : study.points) ys.push_back(p.statistic(stat));
    if (std::all_of(ys.begin(), ys.end(), [](double v) { return v > 0.0 && std::isfinite(v); })) {
      entry.fit = fit_slope(xs, ys);
      entry.fit->predicted = entry.predicted;
    } else {
      entry.note = "not fitted: statistic is zero or non-finite at some n";
    }
    study.fits.push_back(std::move(entry));
  }
  return study;
}

}  // namespace linksmooth
