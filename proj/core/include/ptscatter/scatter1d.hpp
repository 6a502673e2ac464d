#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptscatter/errors.hpp"

namespace ptscatter {

/// Numerical 1D Schrodinger scattering engine for arbitrary complex-valued
/// potentials (units 2m = hbar = 1). Transmission and reflection amplitudes
/// come from backward integration of a purely outgoing wave over a truncated
/// domain, decomposed into incident + reflected plane waves at the entry side.
namespace scatter1d {

using Complex = std::complex<double>;

/// Complex potential with compact numerical support.
struct PotentialFn {
  std::function<Complex(double)> v;
  /// |V(x)| stays below the configured tail tolerance for |x| > decay_bound.
  double decay_bound = 0.0;
};

enum class Side { LeftIncidence, RightIncidence };

struct DomainConfig {
  double half_width = 18.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Ceiling on |V(+-half_width)| before the solve refuses the domain.
  double tail_tol = 1e-6;
  std::size_t max_steps = 1'000'000;

  /// Throws ValidationError / DomainTooSmallError when the configuration
  /// cannot support an accurate solve for the given potential.
  void validate(const PotentialFn& potential) const;
};

struct ScatterResult {
  double k = 0.0;
  Side side = Side::LeftIncidence;
  Complex t_amp;
  Complex r_amp;
  double T = 0.0;            ///< |t_amp|^2
  double R = 0.0;            ///< |r_amp|^2
  double flux_defect = 0.0;  ///< R + T - 1; zero only for real potentials
};

/// Solve -psi'' + V psi = k^2 psi with unit transmitted amplitude and return
/// t = 1/A, r = B/A from the incident-side decomposition. Right incidence is
/// the left solve of the spatially reflected potential.
ScatterResult solve_scattering(const PotentialFn& potential, double k,
                               Side side, const DomainConfig& cfg = {});

struct SweepPoint {
  double k = 0.0;
  std::optional<ScatterResult> result;  ///< empty on per-point failure
  std::string error;                    ///< failure reason when empty
};

/// Element-wise solve over a strictly increasing grid of k > 0. Per-point
/// failures are collected, not fatal. Points may be solved concurrently;
/// output order always follows the grid.
std::vector<SweepPoint> sweep(const PotentialFn& potential,
                              const std::vector<double>& k_grid, Side side,
                              const DomainConfig& cfg = {}, unsigned jobs = 1);

/// psi sampled on x_grid, normalized to unit incident amplitude.
std::vector<std::pair<double, Complex>> wavefunction_export(
    const PotentialFn& potential, double k, Side side, const DomainConfig& cfg,
    const std::vector<double>& x_grid);

const char* to_string(Side side);

}  // namespace scatter1d
}  // namespace ptscatter
