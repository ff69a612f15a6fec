#include "linksmooth/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "linksmooth/error.hpp"
#include "linksmooth/seeding.hpp"

namespace linksmooth {

LinkFunction parse_link_function(std::string_view name) {
  if (name == "product") return LinkFunction::kProduct;
  if (name == "constant") return LinkFunction::kConstant;
  throw InvalidArgument("unknown model '" + std::string(name) + "' (expected product or constant)");
}

OutcomeLaw parse_outcome_law(std::string_view name) {
  if (name == "bernoulli") return OutcomeLaw::kBernoulli;
  if (name == "gaussian") return OutcomeLaw::kGaussian;
  if (name == "node-effect") return OutcomeLaw::kNodeEffect;
  throw InvalidArgument("unknown outcome law '" + std::string(name) +
                        "' (expected bernoulli, gaussian or node-effect)");
}

std::string_view to_string(LinkFunction f) noexcept {
  return f == LinkFunction::kProduct ? "product" : "constant";
}

std::string_view to_string(OutcomeLaw law) noexcept {
  switch (law) {
    case OutcomeLaw::kBernoulli:
      return "bernoulli";
    case OutcomeLaw::kGaussian:
      return "gaussian";
    case OutcomeLaw::kNodeEffect:
      return "node-effect";
  }
  return "unknown";
}

double LinkModel::variance_bound() const {
  switch (law) {
    case OutcomeLaw::kBernoulli:
      return 0.26;
    case OutcomeLaw::kGaussian:
      return sigma * sigma * 1.05;
    case OutcomeLaw::kNodeEffect:
      return (2 * sigma_u * sigma_u + sigma_v * sigma_v) * 1.05;
  }
  return 0.0;
}

void LinkModel::validate() const {
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
  require(lipschitz > 0.0, "Hoelder constant L must be > 0");
  require(sigma >= 0.0 && sigma_u >= 0.0 && sigma_v >= 0.0, "noise scales must be ≥ 0");
  if (law == OutcomeLaw::kBernoulli && function == LinkFunction::kConstant) {
    require(constant >= 0.0 && constant <= 1.0,
            "Bernoulli law requires the constant model value in [0, 1]");
  }
}

double truth(const LinkModel& model, std::span<const double> x, std::span<const double> xp) {
  switch (model.function) {
    case LinkFunction::kProduct: {
      double dot = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) dot += x[k] * xp[k];
      return dot;
    }
    case LinkFunction::kConstant:
      return model.constant;
  }
  return 0.0;
}

namespace {

void sample_node_effect_into(const LinkModel& model, const CovariateSet& cov, Engine& engine,
                             LinkOutcomes& out) {
  const std::size_t n = cov.size();
  std::vector<double> node_effect(n, 0.0);
  if (model.sigma_u > 0.0) {
    std::normal_distribution<double> u(0.0, model.sigma_u);
    for (auto& v : node_effect) v = u(engine);
  }
  std::normal_distribution<double> pair_noise(0.0, model.sigma_v > 0.0 ? model.sigma_v : 1.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto row = out.upper_row(i);
    const auto xi = cov.point(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::size_t j = i + 1 + k;
      const double v = model.sigma_v > 0.0 ? pair_noise(engine) : 0.0;
      row[k] = truth(model, xi, cov.point(j)) + node_effect[i] + node_effect[j] + v;
    }
  }
}

[[noreturn]] void bernoulli_range_error(std::size_t i, std::size_t j, double p) {
  std::ostringstream msg;
  msg << "Bernoulli law requires f in [0, 1], but f(X_" << i << ", X_" << j << ") = " << p;
  throw InvalidArgument(msg.str());
}

// Sets out(i, j) = draw(i, j, f(X_i, X_j)) over i < j in row order, with f
// evaluated inline; this loop dominates the Monte Carlo cost.
template <typename Draw>
void fill_pairs(const LinkModel& model, const CovariateSet& cov, LinkOutcomes& out, Draw&& draw) {
  const std::size_t n = cov.size();
  const auto d = static_cast<std::size_t>(cov.dim());
  const double* x = cov.data().data();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto row = out.upper_row(i);
    const double* xi = x + i * d;
    if (model.function == LinkFunction::kConstant) {
      for (std::size_t k = 0; k < row.size(); ++k) row[k] = draw(i, i + 1 + k, model.constant);
    } else if (d == 1) {
      for (std::size_t k = 0; k < row.size(); ++k) row[k] = draw(i, i + 1 + k, xi[0] * x[i + 1 + k]);
    } else {
      for (std::size_t k = 0; k < row.size(); ++k) {
        const double* xj = x + (i + 1 + k) * d;
        double dot = 0.0;
        for (std::size_t c = 0; c < d; ++c) dot += xi[c] * xj[c];
        row[k] = draw(i, i + 1 + k, dot);
      }
    }
  }
}

}  // namespace

void sample_outcomes_into(const LinkModel& model, const CovariateSet& cov, std::uint64_t seed,
                          LinkOutcomes& out) {
  model.validate();
  const std::size_t n = cov.size();
  if (out.size() != n) out = LinkOutcomes(n);
  Engine engine(seed);

  switch (model.law) {
    case OutcomeLaw::kNodeEffect:
      sample_node_effect_into(model, cov, engine, out);
      return;
    case OutcomeLaw::kBernoulli: {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      fill_pairs(model, cov, out, [&](std::size_t i, std::size_t j, double p) {
        if (!(p >= 0.0 && p <= 1.0)) bernoulli_range_error(i, j, p);
        return unit(engine) < p ? 1.0 : 0.0;
      });
      return;
    }
    case OutcomeLaw::kGaussian: {
      if (model.sigma == 0.0) {
        fill_pairs(model, cov, out, [](std::size_t, std::size_t, double mean) { return mean; });
        return;
      }
      std::normal_distribution<double> noise(0.0, model.sigma);
      fill_pairs(model, cov, out,
                 [&](std::size_t, std::size_t, double mean) { return mean + noise(engine); });
      return;
    }
  }
}

LinkOutcomes sample_outcomes(const LinkModel& model, const CovariateSet& cov, std::uint64_t seed) {
  LinkOutcomes out(cov.size());
  sample_outcomes_into(model, cov, seed, out);
  return out;
}

LinkOutcomes sample_outcomes_node_effect(const LinkModel& model, const CovariateSet& cov,
                                         std::uint64_t seed) {
  require(model.law == OutcomeLaw::kNodeEffect, "node-effect sampler requires the node-effect law");
  return sample_outcomes(model, cov, seed);
}

HolderCheck check_holder(const LinkModel& model, int dim, std::size_t trials, std::uint64_t seed) {
  require(trials >= 1, "Hoelder check needs at least one trial");
  require(dim >= 1, "dimension must be ≥ 1");
  Engine engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto d = static_cast<std::size_t>(dim);
  std::vector<double> x(d), xt(d), xp(d);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    double sq = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = unit(engine);
      xt[k] = unit(engine);
      xp[k] = unit(engine);
      sq += (x[k] - xt[k]) * (x[k] - xt[k]);
    }
    if (sq == 0.0) continue;
    const double diff = std::abs(truth(model, x, xp) - truth(model, xt, xp));
    worst = std::max(worst, diff / std::pow(std::sqrt(sq), model.beta));
  }
  return {worst, worst <= model.lipschitz};
}

void NodeModel::validate() const {
  require(law == OutcomeLaw::kBernoulli || law == OutcomeLaw::kGaussian,
          "node regression supports the bernoulli and gaussian laws only");
  require(sigma >= 0.0, "sigma must be ≥ 0");
}

double truth(const NodeModel& model, std::span<const double> x) {
  return model.function == RegressionFunction::kIdentity ? x[0] : model.constant;
}

std::vector<double> sample_node_outcomes(const NodeModel& model, const CovariateSet& cov,
                                         std::uint64_t seed) {
  model.validate();
  Engine engine(seed);
  std::vector<double> y(cov.size());
  if (model.law == OutcomeLaw::kBernoulli) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double p = truth(model, cov.point(i));
      if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("Bernoulli law requires f in [0, 1], but f(X_" + std::to_string(i) +
                              ") = " + std::to_string(p));
      }
      y[i] = unit(engine) < p ? 1.0 : 0.0;
    }
  } else {
    std::normal_distribution<double> noise(0.0, model.sigma > 0.0 ? model.sigma : 1.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double mean = truth(model, cov.point(i));
      y[i] = model.sigma > 0.0 ? mean + noise(engine) : mean;
    }
  }
  return y;
}

}  // namespace linksmooth
