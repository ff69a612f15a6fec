#include "linksmooth/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linksmooth/error.hpp"
#include "linksmooth/summation.hpp"

namespace linksmooth {

namespace {

std::vector<double> kernel_column(const CovariateSet& cov, const KernelSpec& kernel,
                                  std::span<const double> query, double h) {
  std::vector<double> values(cov.size());
  std::vector<double> diff(query.size());
  for (std::size_t i = 0; i < cov.size(); ++i) {
    const auto xi = cov.point(i);
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = query[k] - xi[k];
    values[i] = evaluate_scaled(kernel, diff, h);
  }
  return values;
}

}  // namespace

void SmootherConfig::validate(int dim) const {
  require(h > 0.0 && std::isfinite(h), "bandwidth h must be > 0");
  require(lambda >= 0.0 && std::isfinite(lambda), "lambda must be ≥ 0");
  require(kernel.dim == dim, "kernel dimension does not match the covariate dimension");
  require(static_cast<int>(query_x.size()) == dim && static_cast<int>(query_xp.size()) == dim,
          "query points must have dimension d = " + std::to_string(dim));
  kernel.validate();
}

std::string ConditionAudit::violations() const {
  std::string out;
  auto add = [&out](bool ok, const char* what) {
    if (ok) return;
    if (!out.empty()) out += ", ";
    out += what;
  };
  add(bandwidth_lower, "h < n^{-1/d}");
  add(bandwidth_upper, "h > 1");
  add(lambda_lower, "lambda < (n h^d)^{-nu}");
  add(lambda_upper, "lambda > h^d");
  return out;
}

ConditionAudit audit_conditions(std::size_t n, int dim, double h, double lambda, double nu) {
  const double nd = static_cast<double>(n);
  const double hd = std::pow(h, dim);
  // Relative slack so that schedules hitting a bound exactly (e.g. h = n^{-1/d}) pass.
  constexpr double slack = 1e-12;
  ConditionAudit audit;
  audit.bandwidth_lower = h >= std::pow(nd, -1.0 / dim) * (1 - slack);
  audit.bandwidth_upper = h <= 1.0 * (1 + slack);
  audit.lambda_lower = lambda >= std::pow(nd * hd, -nu) * (1 - slack);
  audit.lambda_upper = lambda <= hd * (1 + slack);
  const double effective = nd * hd;
  audit.nu_min = effective > 1.0 && lambda > 0.0 ? std::max(0.0, -std::log(lambda) / std::log(effective))
                                                 : std::numeric_limits<double>::infinity();
  return audit;
}

LinkSmoother::LinkSmoother(const CovariateSet& cov, const SmootherConfig& cfg)
    : cov_(&cov),
      n_(cov.size()),
      lambda_(cfg.lambda),
      query_x_(cfg.query_x),
      query_xp_(cfg.query_xp) {
  require(n_ >= 2, "n must be ≥ 2");
  cfg.validate(cov.dim());
  a_ = kernel_column(cov, cfg.kernel, cfg.query_x, cfg.h);
  b_ = kernel_column(cov, cfg.kernel, cfg.query_xp, cfg.h);

  CompensatedSum total;
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    CompensatedSum row;
    for (std::size_t j = i + 1; j < n_; ++j) row.add(pair_weight(i, j));
    total.add(row.value());
  }
  denominator_ = total.value();
}

void LinkSmoother::require_nonempty() const {
  if (!(denominator_ > 0.0)) throw EmptyNeighborhood();
}

double LinkSmoother::operator()(const LinkOutcomes& outcomes) const {
  require(outcomes.size() == n_, "outcome array size does not match n");
  require_nonempty();
  CompensatedSum total;
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const auto row = outcomes.upper_row(i);
    CompensatedSum acc;
    for (std::size_t k = 0; k < row.size(); ++k) acc.add(row[k] * pair_weight(i, i + 1 + k));
    total.add(acc.value());
  }
  return total.value() / denominator_;
}

PairWeights LinkSmoother::weights() const {
  require_nonempty();
  PairWeights w{n_, std::vector<double>(n_ * n_, 0.0)};
  for (std::size_t i1 = 0; i1 < n_; ++i1) {
    for (std::size_t i2 = 0; i2 < n_; ++i2) {
      if (i1 != i2) w.values[i1 * n_ + i2] = (a_[i1] * b_[i2] + lambda_) / denominator_;
    }
  }
  return w;
}

double LinkSmoother::t_nh() const noexcept {
  return denominator_ / (static_cast<double>(n_) * static_cast<double>(n_ - 1));
}

double LinkSmoother::s_nh(const LinkModel& model) const {
  const double f0 = truth(model, query_x_, query_xp_);
  CompensatedSum total;
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const auto xi = cov_->point(i);
    CompensatedSum row;
    for (std::size_t j = i + 1; j < n_; ++j) {
      row.add((truth(model, xi, cov_->point(j)) - f0) * pair_weight(i, j));
    }
    total.add(row.value());
  }
  return total.value() / (static_cast<double>(n_) * static_cast<double>(n_ - 1));
}

SmootherDiagnostics LinkSmoother::diagnostics(const LinkModel& model) const {
  SmootherDiagnostics out;
  out.s_nh = s_nh(model);
  out.t_nh = t_nh();
  if (denominator_ > 0.0) {
    CompensatedSum w_total;
    double w_max = 0.0;
    for (std::size_t i1 = 0; i1 < n_; ++i1) {
      CompensatedSum row;
      for (std::size_t i2 = 0; i2 < n_; ++i2) {
        if (i1 == i2) continue;
        const double w = (a_[i1] * b_[i2] + lambda_) / denominator_;
        row.add(w);
        w_max = std::max(w_max, w);
      }
      w_total.add(row.value());
    }
    out.weight_sum = w_total.value();
    out.max_weight = w_max;
  }
  return out;
}

double LinkSmoother::conditional_mean(const LinkModel& model) const {
  require_nonempty();
  return truth(model, query_x_, query_xp_) + s_nh(model) / t_nh();
}

double link_smooth(const CovariateSet& cov, const LinkOutcomes& outcomes, const SmootherConfig& cfg) {
  return LinkSmoother(cov, cfg)(outcomes);
}

PairWeights link_smooth_weights(const CovariateSet& cov, const SmootherConfig& cfg) {
  return LinkSmoother(cov, cfg).weights();
}

SmootherDiagnostics diagnostics(const CovariateSet& cov, const SmootherConfig& cfg,
                                const LinkModel& model) {
  return LinkSmoother(cov, cfg).diagnostics(model);
}

double conditional_mean(const CovariateSet& cov, const SmootherConfig& cfg, const LinkModel& model) {
  return LinkSmoother(cov, cfg).conditional_mean(model);
}

double conventional_smooth(const CovariateSet& cov, std::span<const double> outcomes,
                           const KernelSpec& kernel, double h, double lambda,
                           std::span<const double> query) {
  require(cov.size() >= 1, "n must be ≥ 1");
  require(outcomes.size() == cov.size(), "outcome vector size does not match n");
  require(h > 0.0, "bandwidth h must be > 0");
  require(lambda >= 0.0, "lambda must be ≥ 0");
  require(static_cast<int>(query.size()) == cov.dim(), "query dimension does not match d");
  require(kernel.dim == cov.dim(), "kernel dimension does not match d");

  const auto k = kernel_column(cov, kernel, query, h);
  CompensatedSum num;
  CompensatedSum den;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double w = k[i] + lambda;
    num.add(outcomes[i] * w);
    den.add(w);
  }
  if (!(den.value() > 0.0)) throw EmptyNeighborhood();
  return num.value() / den.value();
}

}  // namespace linksmooth
