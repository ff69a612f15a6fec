#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace linksmooth {

struct Histogram {
  std::vector<double> edges;        // size = counts.size() + 1, ascending
  std::vector<std::size_t> counts;  // last bin is closed on the right

  [[nodiscard]] std::size_t total() const noexcept;
};

struct HistogramOptions {
  std::optional<std::size_t> bins;  // Freedman-Diaconis when unset
};

/// Equal-width edges spanning [min, max]. All-equal input yields the single
/// zero-width bin [v, v].
std::vector<double> histogram_edges(std::span<const double> values, const HistogramOptions& options);

/// Counts values into fixed edges; values outside [edges.front(), edges.back()] are dropped.
Histogram bin_values(std::span<const double> values, std::vector<double> edges);

Histogram make_histogram(std::span<const double> values, const HistogramOptions& options = {});

/// Both histograms share edges computed from the pooled values.
std::pair<Histogram, Histogram> compare_histograms(std::span<const double> first,
                                                   std::span<const double> second,
                                                   const HistogramOptions& options = {});

}  // namespace linksmooth
