#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace linksmooth {

enum class DesignKind { kFixedLattice, kRandomIID };

DesignKind parse_design_kind(std::string_view name);
std::string_view to_string(DesignKind kind) noexcept;

/// Axis-aligned box [lower_j, upper_j] per axis.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  static Box unit(int dim);
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(lower.size()); }
  [[nodiscard]] double volume() const;
  [[nodiscard]] bool contains(std::span<const double> point) const;
};

/// How node covariates are produced.
///
/// Random designs draw i.i.d. uniform points on `domain`; `density_lower` and
/// `density_upper` are the bounds l <= m(x) <= u of the sampling density and
/// must bracket 1 / volume(domain).
struct DesignSpec {
  DesignKind kind = DesignKind::kFixedLattice;
  std::size_t n = 2;
  int dim = 1;
  Box domain = Box::unit(1);
  double density_lower = 1.0;
  double density_upper = 1.0;

  static DesignSpec fixed(std::size_t n, int dim = 1);
  static DesignSpec random(std::size_t n, int dim = 1);
  void validate() const;
};

/// Realized n x dim covariate array, row-major. Immutable once built.
class CovariateSet {
 public:
  /// Throws if the point count does not match spec.n * spec.dim or a point lies outside the domain.
  CovariateSet(DesignSpec spec, std::vector<double> points);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] int dim() const noexcept { return spec_.dim; }
  [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept {
    return {points_.data() + i * static_cast<std::size_t>(spec_.dim),
            static_cast<std::size_t>(spec_.dim)};
  }
  [[nodiscard]] std::span<const double> data() const noexcept { return points_; }
  [[nodiscard]] const DesignSpec& spec() const noexcept { return spec_; }

 private:
  DesignSpec spec_;
  std::size_t n_;
  std::vector<double> points_;
};

/// Equispaced lattice. d = 1 gives (i - 1) / (n - 1); d > 1 takes the first n
/// points, in lexicographic order, of a lattice with ceil(n^{1/d}) points per axis.
CovariateSet generate_fixed(const DesignSpec& spec);

/// n i.i.d. uniform draws on the domain, deterministic in `seed`.
CovariateSet generate_random(const DesignSpec& spec, std::uint64_t seed);

/// Dispatches on spec.kind; the seed is ignored for fixed designs.
CovariateSet generate(const DesignSpec& spec, std::uint64_t seed);

struct SpacingReport {
  double min_gap;       // min_{i != j} |X_i - X_j|
  double max_min_gap;   // max_i min_{j != i} |X_i - X_j|
  double c_lower;       // min_gap * n^{1/d}
  double c_upper;       // max_min_gap * n^{1/d}
};

/// Exhaustive O(n^2) scan of nearest-neighbour distances.
SpacingReport verify_spacing(const CovariateSet& cov);

/// Smallest m with m^dim >= n.
std::size_t lattice_points_per_axis(std::size_t n, int dim);

}  // namespace linksmooth
