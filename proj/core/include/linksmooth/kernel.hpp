#pragma once

#include <span>
#include <string>
#include <string_view>

namespace linksmooth {

enum class KernelKind { kBoxcar, kEpanechnikov };

KernelKind parse_kernel_kind(std::string_view name);
std::string_view to_string(KernelKind kind) noexcept;

/// A compactly supported symmetric kernel on R^dim.
///
/// Boxcar is the indicator of the closed Euclidean unit ball. By default it is
/// left unnormalized (sup = 1); with `normalized` it is divided by the volume
/// of the unit ball and integrates to one. Epanechnikov is the product
/// prod_j (3/4)(1 - z_j^2)_+ and is a density in every dimension, so the
/// `normalized` flag does not affect it.
struct KernelSpec {
  KernelKind kind = KernelKind::kBoxcar;
  int dim = 1;
  bool normalized = false;

  /// Smallest Euclidean radius outside which the kernel vanishes.
  [[nodiscard]] double support_radius() const;
  /// sup_z K(z), attained at z = 0.
  [[nodiscard]] double k_max() const;
  void validate() const;
};

double unit_ball_volume(int dim);

/// K(z). Throws InvalidArgument on a dimension mismatch.
double evaluate(const KernelSpec& kernel, std::span<const double> z);

/// K_h(u) = h^{-d} K(u / h).
double evaluate_scaled(const KernelSpec& kernel, std::span<const double> u, double h);

/// Witness (k, r) with k * sup K <= inf_{|z| <= r} K(z).
struct LowerBoundWitness {
  double k_underbar;
  double radius;
};

LowerBoundWitness check_lower_bound(const KernelSpec& kernel);

}  // namespace linksmooth
