#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "ptscatter/errors.hpp"

namespace ptscatter::ode {

struct StepControls {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = 1'000'000;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

namespace rkf78 {

// Fehlberg 7(8) embedded pair, 13 stages (NASA TR R-287). The eighth-order
// solution is propagated; the error estimate reduces to
// (41/840) h (k0 + k10 - k11 - k12).
inline constexpr std::size_t kStages = 13;

inline constexpr std::array<double, kStages> kC = {
    0.0,       2.0 / 27.0, 1.0 / 9.0, 1.0 / 6.0, 5.0 / 12.0, 0.5, 5.0 / 6.0,
    1.0 / 6.0, 2.0 / 3.0,  1.0 / 3.0, 1.0,       0.0,        1.0};

inline constexpr std::array<std::array<double, kStages - 1>, kStages> kA = {{
    {},
    {2.0 / 27.0},
    {1.0 / 36.0, 1.0 / 12.0},
    {1.0 / 24.0, 0.0, 1.0 / 8.0},
    {5.0 / 12.0, 0.0, -25.0 / 16.0, 25.0 / 16.0},
    {1.0 / 20.0, 0.0, 0.0, 1.0 / 4.0, 1.0 / 5.0},
    {-25.0 / 108.0, 0.0, 0.0, 125.0 / 108.0, -65.0 / 27.0, 125.0 / 54.0},
    {31.0 / 300.0, 0.0, 0.0, 0.0, 61.0 / 225.0, -2.0 / 9.0, 13.0 / 900.0},
    {2.0, 0.0, 0.0, -53.0 / 6.0, 704.0 / 45.0, -107.0 / 9.0, 67.0 / 90.0, 3.0},
    {-91.0 / 108.0, 0.0, 0.0, 23.0 / 108.0, -976.0 / 135.0, 311.0 / 54.0,
     -19.0 / 60.0, 17.0 / 6.0, -1.0 / 12.0},
    {2383.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0, -301.0 / 82.0,
     2133.0 / 4100.0, 45.0 / 82.0, 45.0 / 164.0, 18.0 / 41.0},
    {3.0 / 205.0, 0.0, 0.0, 0.0, 0.0, -6.0 / 41.0, -3.0 / 205.0, -3.0 / 41.0,
     3.0 / 41.0, 6.0 / 41.0, 0.0},
    {-1777.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0,
     -289.0 / 82.0, 2193.0 / 4100.0, 51.0 / 82.0, 33.0 / 164.0, 12.0 / 41.0,
     0.0, 1.0},
}};

inline constexpr std::array<double, kStages> kB8 = {
    0.0,         0.0,         0.0, 0.0,          0.0,
    34.0 / 105.0, 9.0 / 35.0,  9.0 / 35.0, 9.0 / 280.0, 9.0 / 280.0,
    0.0,         41.0 / 840.0, 41.0 / 840.0};

inline constexpr double kErrWeight = 41.0 / 840.0;

}  // namespace rkf78

/// Integrate y' = rhs(x, y) from x0 to x1 (either direction) with adaptive
/// step control on the embedded 7(8) pair. Throws NonConvergenceError when
/// the step budget runs out or the step size underflows.
template <std::size_t N, class F>
std::array<std::complex<double>, N> integrate(
    F&& rhs, std::array<std::complex<double>, N> y, double x0, double x1,
    const StepControls& ctl, IntegrationStats* stats = nullptr) {
  using State = std::array<std::complex<double>, N>;
  namespace tb = rkf78;

  if (x1 == x0) return y;
  const double dir = (x1 > x0) ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);

  double x = x0;
  double h = dir * std::min(span, std::max(span / 64.0, 1e-6));
  std::size_t steps = 0;
  std::array<State, tb::kStages> k;

  while (dir * (x1 - x) > 0.0) {
    if (++steps > ctl.max_steps) {
      throw NonConvergenceError("ode::integrate: step budget exhausted");
    }
    if (dir * (x + h) > dir * x1) h = x1 - x;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x))) {
      throw NonConvergenceError("ode::integrate: step size underflow");
    }

    k[0] = rhs(x, y);
    for (std::size_t s = 1; s < tb::kStages; ++s) {
      State ys = y;
      for (std::size_t j = 0; j < s; ++j) {
        if (tb::kA[s][j] == 0.0) continue;
        const double w = h * tb::kA[s][j];
        for (std::size_t c = 0; c < N; ++c) ys[c] += w * k[j][c];
      }
      k[s] = rhs(x + tb::kC[s] * h, ys);
    }

    State y8 = y;
    for (std::size_t s = 0; s < tb::kStages; ++s) {
      if (tb::kB8[s] == 0.0) continue;
      const double w = h * tb::kB8[s];
      for (std::size_t c = 0; c < N; ++c) y8[c] += w * k[s][c];
    }

    double err_norm = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
      const std::complex<double> e =
          tb::kErrWeight * h * (k[0][c] + k[10][c] - k[11][c] - k[12][c]);
      const double scale =
          ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[c]), std::abs(y8[c]));
      err_norm = std::max(err_norm, std::abs(e) / scale);
    }

    if (err_norm <= 1.0) {
      x += h;
      y = y8;
      if (stats) ++stats->accepted;
    } else if (stats) {
      ++stats->rejected;
    }

    const double factor =
        (err_norm > 0.0) ? 0.9 * std::pow(err_norm, -1.0 / 8.0) : 4.0;
    h *= std::clamp(factor, 0.1, 4.0);
  }
  return y;
}

}  // namespace ptscatter::ode
