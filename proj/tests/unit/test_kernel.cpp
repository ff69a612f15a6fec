#include "linksmooth/kernel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "linksmooth/error.hpp"

namespace linksmooth {
namespace {

KernelSpec boxcar(int d, bool normalized = false) { return {KernelKind::kBoxcar, d, normalized}; }
KernelSpec epan(int d) { return {KernelKind::kEpanechnikov, d, false}; }

TEST(Kernel, PointValues) {
  const std::vector<double> zero{0.0}, outside{1.5};
  EXPECT_EQ(evaluate(boxcar(1), zero), 1.0);
  EXPECT_EQ(evaluate(boxcar(1), outside), 0.0);
  EXPECT_EQ(evaluate(epan(1), zero), 0.75);
}

TEST(Kernel, ScaledValues) {
  const std::vector<double> a{0.3}, b{0.6}, c{0.0};
  EXPECT_DOUBLE_EQ(evaluate_scaled(boxcar(1), a, 0.5), 2.0);
  EXPECT_EQ(evaluate_scaled(boxcar(1), b, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(evaluate_scaled(epan(1), c, 0.25), 3.0);
}

TEST(Kernel, Errors) {
  const std::vector<double> two{0.0, 0.0};
  EXPECT_THROW(evaluate(boxcar(1), two), InvalidArgument);
  const std::vector<double> one{0.0};
  EXPECT_THROW(evaluate_scaled(boxcar(1), one, 0.0), InvalidArgument);
  EXPECT_THROW(evaluate_scaled(boxcar(1), one, -1.0), InvalidArgument);
  EXPECT_THROW(parse_kernel_kind("gaussian"), InvalidArgument);
  EXPECT_EQ(parse_kernel_kind("epanechnikov"), KernelKind::kEpanechnikov);
}

TEST(Kernel, LowerBoundWitness) {
  auto w = check_lower_bound(boxcar(1));
  EXPECT_EQ(w.k_underbar, 1.0);
  EXPECT_EQ(w.radius, 1.0);
  w = check_lower_bound(epan(1));
  EXPECT_DOUBLE_EQ(w.k_underbar, 0.75);
  EXPECT_DOUBLE_EQ(w.radius, 0.5);
  w = check_lower_bound(boxcar(2));
  EXPECT_EQ(w.k_underbar, 1.0);
  EXPECT_EQ(w.radius, 1.0);
}

class KernelProperties : public ::testing::TestWithParam<KernelSpec> {};

TEST_P(KernelProperties, ScaledIsComposedFormula) {
  const KernelSpec k = GetParam();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0), hs(0.05, 3.0);
  std::vector<double> v(k.dim), z(k.dim);
  for (int t = 0; t < 1000; ++t) {
    const double h = hs(rng);
    for (int j = 0; j < k.dim; ++j) {
      v[j] = u(rng);
      z[j] = v[j] / h;
    }
    EXPECT_EQ(evaluate_scaled(k, v, h), std::pow(h, -static_cast<double>(k.dim)) * evaluate(k, z));
  }
}

TEST_P(KernelProperties, SymmetricBoundedAndCompact) {
  const KernelSpec k = GetParam();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<double> z(k.dim), neg(k.dim);
  int outside = 0;
  while (outside < 1000) {
    double sq = 0.0;
    for (int j = 0; j < k.dim; ++j) {
      z[j] = u(rng);
      neg[j] = -z[j];
      sq += z[j] * z[j];
    }
    const double value = evaluate(k, z);
    EXPECT_EQ(value, evaluate(k, neg));
    EXPECT_GE(value, 0.0);
    EXPECT_LE(value, k.k_max());
    if (std::sqrt(sq) > k.support_radius()) {
      EXPECT_EQ(value, 0.0);
      ++outside;
    }
  }
}

TEST_P(KernelProperties, LowerBoundHoldsOnDenseSample) {
  const KernelSpec k = GetParam();
  const auto w = check_lower_bound(k);
  EXPECT_GT(w.k_underbar, 0.0);
  EXPECT_GT(w.radius, 0.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> unit;
  std::vector<double> z(k.dim);
  for (int t = 0; t < 20000; ++t) {
    double sq = 0.0;
    for (auto& v : z) {
      v = g(rng);
      sq += v * v;
    }
    // Radii concentrated near the boundary, where the infimum is attained.
    const double r = w.radius * std::pow(unit(rng), 0.1) / std::sqrt(sq);
    for (auto& v : z) v *= r;
    EXPECT_GE(evaluate(k, z), w.k_underbar * k.k_max() * (1 - 1e-12));
  }
}

TEST_P(KernelProperties, MonteCarloIntegralIsOne) {
  KernelSpec k = GetParam();
  k.normalized = true;
  std::mt19937_64 rng(2024);
  const double r = k.support_radius();
  std::uniform_real_distribution<double> u(-r, r);
  std::vector<double> z(k.dim);
  const int samples = 1'000'000;
  double acc = 0.0;
  for (int t = 0; t < samples; ++t) {
    for (auto& v : z) v = u(rng);
    acc += evaluate(k, z);
  }
  const double integral = acc / samples * std::pow(2.0 * r, k.dim);
  EXPECT_GE(integral, 0.99);
  EXPECT_LE(integral, 1.01);
}

INSTANTIATE_TEST_SUITE_P(Shipped, KernelProperties,
                         ::testing::Values(boxcar(1), boxcar(2), epan(1), epan(2)),
                         [](const auto& info) {
                           return std::string(to_string(info.param.kind)) + "_d" +
                                  std::to_string(info.param.dim);
                         });

TEST(Kernel, QuadratureIntegralIsOne) {
  // Midpoint rule on [-1, 1]; aligned with the boxcar support so it is exact there.
  const int m = 4000;
  const double dz = 2.0 / m;
  double box = 0.0, ep1 = 0.0;
  for (int i = 0; i < m; ++i) {
    const std::vector<double> z{-1.0 + (i + 0.5) * dz};
    box += evaluate(boxcar(1, true), z) * dz;
    ep1 += evaluate(epan(1), z) * dz;
  }
  EXPECT_NEAR(box, 1.0, 1e-6);
  EXPECT_NEAR(ep1, 1.0, 1e-6);

  const int m2 = 1500;
  const double d2 = 2.0 / m2;
  double ep2 = 0.0;
  for (int i = 0; i < m2; ++i) {
    for (int j = 0; j < m2; ++j) {
      const std::vector<double> z{-1.0 + (i + 0.5) * d2, -1.0 + (j + 0.5) * d2};
      ep2 += evaluate(epan(2), z) * d2 * d2;
    }
  }
  EXPECT_NEAR(ep2, 1.0, 1e-6);
}

}  // namespace
}  // namespace linksmooth
