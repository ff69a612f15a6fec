#include "linksmooth/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linksmooth/error.hpp"

namespace linksmooth {

namespace {

constexpr std::size_t kMaxBins = 10000;

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::size_t freedman_diaconis_bins(std::vector<double> sorted) {
  const double range = sorted.back() - sorted.front();
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double n = static_cast<double>(sorted.size());
  if (iqr > 0.0) {
    const double width = 2.0 * iqr / std::cbrt(n);
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(range / width)), 1, kMaxBins);
  }
  // Sturges when the quartiles coincide (e.g. heavily discrete data).
  return static_cast<std::size_t>(std::ceil(std::log2(n))) + 1;
}

}  // namespace

std::size_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

std::vector<double> histogram_edges(std::span<const double> values, const HistogramOptions& options) {
  require(!values.empty(), "histogram needs at least one value");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  if (lo == hi) return {lo, hi};

  const std::size_t bins = options.bins ? *options.bins : freedman_diaconis_bins(sorted);
  require(bins >= 1, "histogram needs at least one bin");
  std::vector<double> edges(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k <= bins; ++k) edges[k] = lo + width * static_cast<double>(k);
  edges.back() = hi;
  return edges;
}

Histogram bin_values(std::span<const double> values, std::vector<double> edges) {
  require(edges.size() >= 2, "histogram needs at least two edges");
  Histogram h{std::move(edges), {}};
  const std::size_t bins = h.edges.size() - 1;
  h.counts.assign(bins, 0);
  const double lo = h.edges.front();
  const double hi = h.edges.back();
  for (double v : values) {
    if (v < lo || v > hi) continue;
    // upper_bound finds the first edge > v; the right end falls in the last bin.
    auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
    std::size_t k = static_cast<std::size_t>(it - h.edges.begin());
    k = k == 0 ? 0 : k - 1;
    h.counts[std::min(k, bins - 1)] += 1;
  }
  return h;
}

Histogram make_histogram(std::span<const double> values, const HistogramOptions& options) {
  return bin_values(values, histogram_edges(values, options));
}

std::pair<Histogram, Histogram> compare_histograms(std::span<const double> first,
                                                   std::span<const double> second,
                                                   const HistogramOptions& options) {
  std::vector<double> pooled(first.begin(), first.end());
  pooled.insert(pooled.end(), second.begin(), second.end());
  const auto edges = histogram_edges(pooled, options);
  return {bin_values(first, edges), bin_values(second, edges)};
}

}  // namespace linksmooth
