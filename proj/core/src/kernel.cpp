#include "linksmooth/kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "linksmooth/error.hpp"

namespace linksmooth {

namespace {

constexpr int kInlineDim = 16;

double boxcar_unnormalized(std::span<const double> z) noexcept {
  double sq = 0.0;
  for (double v : z) sq += v * v;
  return sq <= 1.0 ? 1.0 : 0.0;
}

double epanechnikov(std::span<const double> z) noexcept {
  double value = 1.0;
  for (double v : z) {
    if (std::abs(v) > 1.0) return 0.0;
    value *= 0.75 * (1.0 - v * v);
  }
  return value;
}

}  // namespace

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "boxcar") return KernelKind::kBoxcar;
  if (name == "epanechnikov") return KernelKind::kEpanechnikov;
  throw InvalidArgument("unknown kernel '" + std::string(name) +
                        "' (expected boxcar or epanechnikov)");
}

std::string_view to_string(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::kBoxcar:
      return "boxcar";
    case KernelKind::kEpanechnikov:
      return "epanechnikov";
  }
  return "unknown";
}

double unit_ball_volume(int dim) {
  const double d = static_cast<double>(dim);
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double KernelSpec::support_radius() const {
  return kind == KernelKind::kBoxcar ? 1.0 : std::sqrt(static_cast<double>(dim));
}

double KernelSpec::k_max() const {
  if (kind == KernelKind::kEpanechnikov) return std::pow(0.75, dim);
  return normalized ? 1.0 / unit_ball_volume(dim) : 1.0;
}

void KernelSpec::validate() const {
  require(dim >= 1, "kernel dimension must be ≥ 1");
}

double evaluate(const KernelSpec& kernel, std::span<const double> z) {
  if (static_cast<int>(z.size()) != kernel.dim) {
    throw InvalidArgument("kernel argument has dimension " + std::to_string(z.size()) +
                          ", expected " + std::to_string(kernel.dim));
  }
  switch (kernel.kind) {
    case KernelKind::kBoxcar: {
      const double v = boxcar_unnormalized(z);
      return kernel.normalized ? v / unit_ball_volume(kernel.dim) : v;
    }
    case KernelKind::kEpanechnikov:
      return epanechnikov(z);
  }
  return 0.0;
}

double evaluate_scaled(const KernelSpec& kernel, std::span<const double> u, double h) {
  if (!(h > 0.0)) throw InvalidArgument("bandwidth h must be > 0");
  if (static_cast<int>(u.size()) != kernel.dim) {
    throw InvalidArgument("kernel argument has dimension " + std::to_string(u.size()) +
                          ", expected " + std::to_string(kernel.dim));
  }
  const double scale = std::pow(h, -static_cast<double>(kernel.dim));
  if (u.size() <= kInlineDim) {
    std::array<double, kInlineDim> z{};
    for (std::size_t j = 0; j < u.size(); ++j) z[j] = u[j] / h;
    return scale * evaluate(kernel, std::span<const double>(z.data(), u.size()));
  }
  std::vector<double> z(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) z[j] = u[j] / h;
  return scale * evaluate(kernel, z);
}

LowerBoundWitness check_lower_bound(const KernelSpec& kernel) {
  kernel.validate();
  switch (kernel.kind) {
    case KernelKind::kBoxcar:
      // Constant on the closed unit ball.
      return {1.0, kernel.support_radius()};
    case KernelKind::kEpanechnikov: {
      // On |z| <= r <= 1 the product prod (1 - z_j^2) is minimized by putting
      // all of |z| on one axis, giving 1 - r^2.
      constexpr double r = 0.5;
      return {1.0 - r * r, r};
    }
  }
  return {0.0, 0.0};
}

}  // namespace linksmooth
