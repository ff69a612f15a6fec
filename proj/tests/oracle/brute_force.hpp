#pragma once

// Literal ordered-pair reference implementations used only by tests. They do
// not share code with the library: kernels, pair loops and accumulation are
// written out directly from the defining formulas, in long double.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

enum class Kernel { kBoxcar, kEpanechnikov };

inline long double kernel(Kernel k, const std::vector<long double>& z) {
  if (k == Kernel::kBoxcar) {
    double norm_sq = 0.0;  // same double rounding as a plain sum of squares
    for (long double v : z) norm_sq += static_cast<double>(v) * static_cast<double>(v);
    return norm_sq <= 1.0 ? 1.0L : 0.0L;
  }
  long double prod = 1.0L;
  for (long double v : z) {
    if (std::fabs(static_cast<double>(v)) > 1.0) return 0.0L;
    const double vd = static_cast<double>(v);
    prod *= 0.75L * (1.0L - static_cast<long double>(vd * vd));
  }
  return prod;
}

// K_h(q - X) with q - X and (q - X)/h rounded in double, matching how a caller
// would form the argument.
inline long double kernel_h(Kernel k, const std::vector<double>& q, const std::vector<double>& x,
                            double h) {
  std::vector<long double> z(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) z[j] = static_cast<double>((q[j] - x[j]) / h);
  return kernel(k, z) / std::pow(static_cast<long double>(h), static_cast<long double>(q.size()));
}

struct LinkInstance {
  Kernel kernel = Kernel::kBoxcar;
  double h = 1.0;
  double lambda = 0.0;
  std::vector<std::vector<double>> X;   // n points
  std::vector<std::vector<double>> Y;   // full n x n, symmetric, diagonal ignored
  std::vector<double> x, xp;
};

inline long double pair_term(const LinkInstance& in, std::size_t i1, std::size_t i2) {
  return kernel_h(in.kernel, in.x, in.X[i1], in.h) * kernel_h(in.kernel, in.xp, in.X[i2], in.h) +
         in.lambda;
}

inline double smooth(const LinkInstance& in) {
  long double num = 0.0L, den = 0.0L;
  const std::size_t n = in.X.size();
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      if (i1 == i2) continue;
      const long double w = pair_term(in, i1, i2);
      num += in.Y[i1][i2] * w;
      den += w;
    }
  }
  return static_cast<double>(num / den);
}

inline std::vector<std::vector<double>> weights(const LinkInstance& in) {
  const std::size_t n = in.X.size();
  long double den = 0.0L;
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      if (i1 != i2) den += pair_term(in, i1, i2);
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      if (i1 != i2) w[i1][i2] = static_cast<double>(pair_term(in, i1, i2) / den);
  return w;
}

using LinkFn = std::function<long double(const std::vector<double>&, const std::vector<double>&)>;

struct Diagnostics {
  double s_nh, t_nh, conditional_mean;
};

inline Diagnostics diagnostics(const LinkInstance& in, const LinkFn& f) {
  const std::size_t n = in.X.size();
  const long double pairs = static_cast<long double>(n) * (n - 1);
  const long double f0 = f(in.x, in.xp);
  long double s = 0.0L, t = 0.0L, swf = 0.0L;
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      if (i1 == i2) continue;
      const long double w = pair_term(in, i1, i2);
      s += (f(in.X[i1], in.X[i2]) - f0) * w;
      t += w;
      swf += f(in.X[i1], in.X[i2]) * w;
    }
  }
  return {static_cast<double>(s / pairs), static_cast<double>(t / pairs),
          static_cast<double>(swf / t)};
}

inline double conventional(Kernel k, double h, double lambda,
                           const std::vector<std::vector<double>>& X, const std::vector<double>& Y,
                           const std::vector<double>& q) {
  long double num = 0.0L, den = 0.0L;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const long double w = kernel_h(k, q, X[i], h) + lambda;
    num += Y[i] * w;
    den += w;
  }
  return static_cast<double>(num / den);
}

}  // namespace oracle
