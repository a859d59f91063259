#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace stralg {

// Gauss-Legendre nodes/weights on [0,1].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre01(
    int order) {
  std::vector<double> x(order), w(order);
  int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = 0.5 * (1.0 - z);
    x[order - 1 - i] = 0.5 * (1.0 + z);
    w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
    w[order - 1 - i] = w[i];
  }
  return {x, w};
}

}  // namespace stralg
