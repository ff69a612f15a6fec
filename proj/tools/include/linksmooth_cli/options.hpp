#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <linksmooth/design.hpp>
#include <linksmooth/estimator.hpp>
#include <linksmooth/kernel.hpp>
#include <linksmooth/model.hpp>
#include <linksmooth/rates.hpp>

namespace linksmooth::cli {

/// Fully resolved run settings. Values come from defaults, then the config
/// file, then command-line flags, each layer overriding the previous one.
struct RunOptions {
  std::string command;

  std::string design = "both";  // fixed | random | both
  std::optional<std::size_t> n;  // per-command default when unset
  int d = 1;

  double s = 3.0;
  std::optional<double> h;  // overrides h = n^{-1/(s+d)}
  std::string kernel = "boxcar";
  bool kernel_normalized = false;
  std::optional<std::string> lambda_rule;
  std::optional<double> lambda;
  double nu = kDefaultNu;
  std::optional<std::vector<double>> query;

  std::string model = "product";
  double constant = 0.5;
  double beta = 1.0;
  double lipschitz = 1.0;
  std::string law = "bernoulli";
  double sigma = 1.0;
  double sigma_u = 1.0;
  double sigma_v = 1.0;

  std::size_t reps = 10000;
  std::size_t rx = 200;
  std::size_t ry = 200;
  std::uint64_t seed = 42;
  std::optional<std::size_t> bins;
  std::optional<unsigned> threads;

  std::vector<std::size_t> ns = {100, 200, 400, 800};
  std::filesystem::path out = ".";

  [[nodiscard]] std::vector<DesignKind> designs() const;
  [[nodiscard]] std::size_t sample_size() const;  // n or the command default
  [[nodiscard]] LambdaRule resolved_lambda_rule() const;
  [[nodiscard]] double bandwidth_at(std::size_t n_value) const;
  [[nodiscard]] KernelSpec kernel_spec() const;
  [[nodiscard]] LinkModel link_model() const;
  [[nodiscard]] NodeModel node_model() const;
  /// Query as (x, x') for the link smoother, x alone for the conventional one.
  [[nodiscard]] std::vector<double> query_point() const;
  [[nodiscard]] SmootherConfig smoother_at(std::size_t n_value) const;
  [[nodiscard]] unsigned thread_count() const;
};

/// Applies an INI file with sections [design] [kernel] [model] [smoother]
/// [montecarlo] [rates] [output]. Unknown keys are rejected.
void apply_config_file(const std::filesystem::path& path, RunOptions& options);

std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace linksmooth::cli
