#include "linksmooth/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "linksmooth/error.hpp"
#include "linksmooth/seeding.hpp"

namespace linksmooth {

DesignKind parse_design_kind(std::string_view name) {
  if (name == "fixed") return DesignKind::kFixedLattice;
  if (name == "random") return DesignKind::kRandomIID;
  throw InvalidArgument("unknown design '" + std::string(name) + "' (expected fixed or random)");
}

std::string_view to_string(DesignKind kind) noexcept {
  return kind == DesignKind::kFixedLattice ? "fixed" : "random";
}

Box Box::unit(int dim) {
  return {std::vector<double>(static_cast<std::size_t>(dim), 0.0),
          std::vector<double>(static_cast<std::size_t>(dim), 1.0)};
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t j = 0; j < lower.size(); ++j) v *= upper[j] - lower[j];
  return v;
}

bool Box::contains(std::span<const double> point) const {
  if (point.size() != lower.size()) return false;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (!(point[j] >= lower[j] && point[j] <= upper[j])) return false;
  }
  return true;
}

DesignSpec DesignSpec::fixed(std::size_t n, int dim) {
  return {DesignKind::kFixedLattice, n, dim, Box::unit(dim), 1.0, 1.0};
}

DesignSpec DesignSpec::random(std::size_t n, int dim) {
  return {DesignKind::kRandomIID, n, dim, Box::unit(dim), 1.0, 1.0};
}

void DesignSpec::validate() const {
  require(n >= 2, "n must be ≥ 2");
  require(dim >= 1, "dimension d must be ≥ 1");
  require(domain.dim() == dim && domain.upper.size() == domain.lower.size(),
          "domain dimension does not match d");
  for (int j = 0; j < dim; ++j) {
    require(domain.lower[j] < domain.upper[j], "domain must have positive extent on every axis");
  }
  if (kind == DesignKind::kRandomIID) {
    require(density_lower > 0.0 && density_lower <= density_upper &&
                std::isfinite(density_upper),
            "density bounds must satisfy 0 < l <= u < inf");
    const double m = 1.0 / domain.volume();
    require(density_lower <= m * (1 + 1e-12) && m <= density_upper * (1 + 1e-12),
            "uniform density 1/volume lies outside [l, u]");
  }
}

CovariateSet::CovariateSet(DesignSpec spec, std::vector<double> points)
    : spec_(std::move(spec)), n_(spec_.n), points_(std::move(points)) {
  require(spec_.dim >= 1, "dimension d must be ≥ 1");
  require(points_.size() == n_ * static_cast<std::size_t>(spec_.dim),
          "covariate array has " + std::to_string(points_.size()) + " values, expected n*d = " +
              std::to_string(n_ * static_cast<std::size_t>(spec_.dim)));
  for (std::size_t i = 0; i < n_; ++i) {
    require(spec_.domain.contains(point(i)),
            "covariate " + std::to_string(i) + " lies outside the domain");
  }
}

std::size_t lattice_points_per_axis(std::size_t n, int dim) {
  std::size_t m = 1;
  auto power = [dim](std::size_t base) {
    double p = 1.0;
    for (int j = 0; j < dim; ++j) p *= static_cast<double>(base);
    return p;
  };
  while (power(m) < static_cast<double>(n)) ++m;
  return m;
}

CovariateSet generate_fixed(const DesignSpec& spec) {
  require(spec.kind == DesignKind::kFixedLattice, "generate_fixed requires a fixed design");
  spec.validate();
  const auto d = static_cast<std::size_t>(spec.dim);
  const std::size_t m = d == 1 ? spec.n : lattice_points_per_axis(spec.n, spec.dim);
  const double denom = static_cast<double>(m - 1);

  std::vector<double> points(spec.n * d);
  std::vector<std::size_t> index(d, 0);  // lexicographic counter, last axis fastest
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double t = static_cast<double>(index[j]) / denom;
      const double lo = spec.domain.lower[j];
      const double hi = spec.domain.upper[j];
      points[i * d + j] = lo + t * (hi - lo);
    }
    for (std::size_t j = d; j-- > 0;) {
      if (++index[j] < m) break;
      index[j] = 0;
    }
  }
  return CovariateSet(spec, std::move(points));
}

CovariateSet generate_random(const DesignSpec& spec, std::uint64_t seed) {
  require(spec.kind == DesignKind::kRandomIID, "generate_random requires a random design");
  spec.validate();
  const auto d = static_cast<std::size_t>(spec.dim);
  Engine engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> points(spec.n * d);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double lo = spec.domain.lower[j];
      const double hi = spec.domain.upper[j];
      points[i * d + j] = std::min(hi, lo + unit(engine) * (hi - lo));
    }
  }
  return CovariateSet(spec, std::move(points));
}

CovariateSet generate(const DesignSpec& spec, std::uint64_t seed) {
  return spec.kind == DesignKind::kFixedLattice ? generate_fixed(spec)
                                                : generate_random(spec, seed);
}

SpacingReport verify_spacing(const CovariateSet& cov) {
  const std::size_t n = cov.size();
  require(n >= 2, "spacing requires at least two points");
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = cov.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto xj = cov.point(j);
      double sq = 0.0;
      for (std::size_t k = 0; k < xi.size(); ++k) sq += (xi[k] - xj[k]) * (xi[k] - xj[k]);
      const double dist = std::sqrt(sq);
      nearest[i] = std::min(nearest[i], dist);
      nearest[j] = std::min(nearest[j], dist);
    }
  }
  const auto [lo, hi] = std::minmax_element(nearest.begin(), nearest.end());
  const double scale = std::pow(static_cast<double>(n), 1.0 / cov.dim());
  return {*lo, *hi, *lo * scale, *hi * scale};
}

}  // namespace linksmooth
