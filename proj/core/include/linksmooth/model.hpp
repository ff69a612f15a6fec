#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "linksmooth/design.hpp"

namespace linksmooth {

enum class LinkFunction { kProduct, kConstant };
enum class OutcomeLaw { kBernoulli, kGaussian, kNodeEffect };

LinkFunction parse_link_function(std::string_view name);
OutcomeLaw parse_outcome_law(std::string_view name);
std::string_view to_string(LinkFunction f) noexcept;
std::string_view to_string(OutcomeLaw law) noexcept;

/// True link regression function f plus the conditional outcome law Q.
///
/// kProduct is f(x, x') = <x, x'> (xx' in one dimension), which lies in the
/// Hoelder class F(1, 1) on [0, 1]: |xx' - x~x'| = |x'| |x - x~| <= |x - x~|.
struct LinkModel {
  LinkFunction function = LinkFunction::kProduct;
  double constant = 0.0;
  double beta = 1.0;
  double lipschitz = 1.0;  // Hoelder constant L
  OutcomeLaw law = OutcomeLaw::kBernoulli;
  double sigma = 1.0;    // Gaussian noise sd
  double sigma_u = 1.0;  // node-effect sd
  double sigma_v = 1.0;  // pair noise sd for the node-effect law

  /// Bound tau on the conditional variance sigma^2(x, x').
  [[nodiscard]] double variance_bound() const;
  void validate() const;
};

double truth(const LinkModel& model, std::span<const double> x, std::span<const double> xp);

/// Symmetric outcome array over unordered pairs; the diagonal does not exist.
class LinkOutcomes {
 public:
  LinkOutcomes() = default;
  explicit LinkOutcomes(std::size_t n) : n_(n), packed_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

  [[nodiscard]] std::size_t size() const noexcept { return n_; }

  /// Y_{ij} = Y_{ji}; requires i != j.
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
    return packed_[index(i, j)];
  }
  void set(std::size_t i, std::size_t j, double value) noexcept { packed_[index(i, j)] = value; }

  /// Row i of the upper triangle: Y_{i,i+1}, ..., Y_{i,n-1}.
  [[nodiscard]] std::span<const double> upper_row(std::size_t i) const noexcept {
    return {packed_.data() + row_offset(i), n_ - i - 1};
  }
  [[nodiscard]] std::span<double> upper_row(std::size_t i) noexcept {
    return {packed_.data() + row_offset(i), n_ - i - 1};
  }
  [[nodiscard]] std::span<const double> packed() const noexcept { return packed_; }

 private:
  [[nodiscard]] std::size_t row_offset(std::size_t i) const noexcept {
    return i * (2 * n_ - i - 1) / 2;
  }
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return row_offset(i) + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> packed_;
};

/// One draw Y_{ij} ~ Q(f(X_i, X_j)) per unordered pair, in row-major order of
/// the upper triangle. Dispatches to the node-effect sampler for that law.
LinkOutcomes sample_outcomes(const LinkModel& model, const CovariateSet& cov, std::uint64_t seed);

/// Reuses `out`'s storage; `out` is resized if needed.
void sample_outcomes_into(const LinkModel& model, const CovariateSet& cov, std::uint64_t seed,
                          LinkOutcomes& out);

/// Y_{ij} = f(X_i, X_j) + U_i + U_j + V_{ij}, U_i ~ N(0, sigma_u^2), V_{ij} ~ N(0, sigma_v^2).
LinkOutcomes sample_outcomes_node_effect(const LinkModel& model, const CovariateSet& cov,
                                         std::uint64_t seed);

struct HolderCheck {
  double max_ratio;
  bool holds;  // max_ratio <= L
};

/// Samples triples (x, x~, x') uniformly on [0,1]^dim and returns
/// max |f(x,x') - f(x~,x')| / |x - x~|^beta.
HolderCheck check_holder(const LinkModel& model, int dim, std::size_t trials, std::uint64_t seed);

// Single-index regression used by the conventional smoother comparison.

enum class RegressionFunction { kIdentity, kConstant };

struct NodeModel {
  RegressionFunction function = RegressionFunction::kIdentity;
  double constant = 0.0;
  OutcomeLaw law = OutcomeLaw::kBernoulli;  // kBernoulli or kGaussian
  double sigma = 1.0;

  void validate() const;
};

/// kIdentity is f(x) = x_1.
double truth(const NodeModel& model, std::span<const double> x);

/// Y_i ~ Q(f(X_i)) independently, in node order.
std::vector<double> sample_node_outcomes(const NodeModel& model, const CovariateSet& cov,
                                         std::uint64_t seed);

}  // namespace linksmooth
