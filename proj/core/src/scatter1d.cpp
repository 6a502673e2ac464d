#include "ptscatter/scatter1d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "parallel_for.hpp"
#include "ptscatter/ode.hpp"

namespace ptscatter::scatter1d {

namespace {

constexpr Complex kI{0.0, 1.0};

using State = std::array<Complex, 2>;  // (psi, psi')

std::function<Complex(double)> oriented_potential(const PotentialFn& potential,
                                                  Side side) {
  if (side == Side::LeftIncidence) return potential.v;
  // Right incidence is the left solve of the mirrored potential; this is the
  // whole implementation of the incidence-direction flip.
  return [f = potential.v](double x) { return f(-x); };
}

struct Decomposition {
  Complex incident;   // A
  Complex reflected;  // B
};

// Plane-wave split at x = -L from (psi, psi'); exact for V = 0 tails.
Decomposition decompose(const State& y, double k, double L) {
  const Complex ik = kI * k;
  const Complex a = (ik * y[0] + y[1]) * std::exp(ik * L) / (2.0 * ik);
  const Complex b = (ik * y[0] - y[1]) * std::exp(-ik * L) / (2.0 * ik);
  return {a, b};
}

State integrate_segment(const std::function<Complex(double)>& pot, double k,
                        State y, double from, double to,
                        const DomainConfig& cfg) {
  auto rhs = [&pot, k](double x, const State& s) -> State {
    return {s[1], (pot(x) - k * k) * s[0]};
  };
  ode::StepControls ctl{cfg.rel_tol, cfg.abs_tol, cfg.max_steps};
  return ode::integrate<2>(rhs, y, from, to, ctl);
}

}  // namespace

void DomainConfig::validate(const PotentialFn& potential) const {
  if (!(half_width > 0.0)) {
    throw ValidationError("DomainConfig: half_width must be positive");
  }
  const auto tol_ok = [](double t) { return t > 0.0 && t <= 1e-3; };
  if (!tol_ok(rel_tol) || !tol_ok(abs_tol)) {
    throw ValidationError("DomainConfig: tolerances must lie in (0, 1e-3]");
  }
  if (!(tail_tol > 0.0)) {
    throw ValidationError("DomainConfig: tail_tol must be positive");
  }
  if (max_steps == 0) {
    throw ValidationError("DomainConfig: max_steps must be positive");
  }
  if (!potential.v) {
    throw ValidationError("DomainConfig: potential callable is empty");
  }
  if (half_width < potential.decay_bound) {
    std::ostringstream msg;
    msg << "domain too small: half_width " << half_width
        << " is below the potential decay bound " << potential.decay_bound;
    throw DomainTooSmallError(msg.str());
  }
  for (double x : {-half_width, half_width}) {
    const double tail = std::abs(potential.v(x));
    if (tail > tail_tol) {
      std::ostringstream msg;
      msg << "domain too small: |V(" << x << ")| = " << tail
          << " exceeds tail tolerance " << tail_tol;
      throw DomainTooSmallError(msg.str());
    }
  }
}

ScatterResult solve_scattering(const PotentialFn& potential, double k,
                               Side side, const DomainConfig& cfg) {
  if (!(k > 0.0)) {
    throw ValidationError("solve_scattering: k must be positive");
  }
  cfg.validate(potential);
  const auto pot = oriented_potential(potential, side);
  const double L = cfg.half_width;

  // Unit transmitted wave at +L, integrated backward to -L.
  const Complex out = std::exp(kI * k * L);
  State y{out, kI * k * out};
  y = integrate_segment(pot, k, y, L, -L, cfg);

  const auto [A, B] = decompose(y, k, L);
  ScatterResult res;
  res.k = k;
  res.side = side;
  res.t_amp = 1.0 / A;
  res.r_amp = B / A;
  res.T = std::norm(res.t_amp);
  res.R = std::norm(res.r_amp);
  res.flux_defect = res.R + res.T - 1.0;
  return res;
}

std::vector<SweepPoint> sweep(const PotentialFn& potential,
                              const std::vector<double>& k_grid, Side side,
                              const DomainConfig& cfg, unsigned jobs) {
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (!(k_grid[i] > 0.0)) {
      throw ValidationError("sweep: grid wavenumbers must be positive");
    }
    if (i > 0 && !(k_grid[i] > k_grid[i - 1])) {
      throw ValidationError("sweep: grid must be strictly increasing");
    }
  }
  std::vector<SweepPoint> points(k_grid.size());
  detail::parallel_for(k_grid.size(), jobs, [&](std::size_t i) {
    points[i].k = k_grid[i];
    try {
      points[i].result = solve_scattering(potential, k_grid[i], side, cfg);
    } catch (const std::exception& e) {
      points[i].error = e.what();
    }
  });
  return points;
}

std::vector<std::pair<double, Complex>> wavefunction_export(
    const PotentialFn& potential, double k, Side side, const DomainConfig& cfg,
    const std::vector<double>& x_grid) {
  if (!(k > 0.0)) {
    throw ValidationError("wavefunction_export: k must be positive");
  }
  cfg.validate(potential);
  const double L = cfg.half_width;
  for (double x : x_grid) {
    if (!(std::abs(x) <= L)) {
      throw ValidationError("wavefunction_export: grid point outside domain");
    }
  }
  const auto pot = oriented_potential(potential, side);

  std::vector<std::size_t> order(x_grid.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x_grid[a] > x_grid[b];
  });

  const Complex out = std::exp(kI * k * L);
  State y{out, kI * k * out};
  double x_cur = L;
  std::vector<Complex> psi(x_grid.size());
  for (std::size_t idx : order) {
    y = integrate_segment(pot, k, y, x_cur, x_grid[idx], cfg);
    x_cur = x_grid[idx];
    psi[idx] = y[0];
  }
  y = integrate_segment(pot, k, y, x_cur, -L, cfg);
  const Complex A = decompose(y, k, L).incident;

  std::vector<std::pair<double, Complex>> samples(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    samples[i] = {x_grid[i], psi[i] / A};
  }
  return samples;
}

const char* to_string(Side side) {
  return side == Side::LeftIncidence ? "LEFT-INCIDENCE" : "RIGHT-INCIDENCE";
}

}  // namespace ptscatter::scatter1d
