#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "ptscatter/scarf2.hpp"

namespace ptscatter {

/// Locates and classifies zeros of 1/t(k) in the complex k-plane for the
/// analytic transmission amplitude, and tracks the resonance pole as the
/// potential detunes from the zero-width-resonance condition.
namespace pole_hunt {

enum class PoleKind { Bound, Antibound, Resonance, SpectralSingularity };

struct PoleRecord {
  Complex k_pole;
  Complex energy;  ///< k_pole^2
  PoleKind kind = PoleKind::Bound;
  double residual = 0.0;  ///< |1/t| at k_pole
  int iterations = 0;
};

/// 1/t(k): entire above the threshold axis, with zeros at the amplitude
/// poles. Throws ThresholdError at k = 0.
Complex inverse_transmission(const scarf2::PotentialParams& p, Complex k);

struct NewtonOptions {
  int max_iterations = 80;
  double step_tol = 1e-12;
  double residual_tol = 1e-10;
  /// Margin separating bound / resonance / real-axis classifications.
  double classify_margin = 1e-8;
  /// Iterates inside |k| < threshold_radius count as trapped at threshold.
  double threshold_radius = 1e-3;
};

/// Damped Newton iteration on 1/t with central-difference derivative.
/// Throws NonConvergenceError / StagnationError.
PoleRecord find_pole(const scarf2::PotentialParams& p, Complex k_seed,
                     const NewtonOptions& opt = {});

struct Region {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
};

struct ScanOutcome {
  std::vector<PoleRecord> poles;  ///< deduplicated, sorted by (Re k, Im k)
  int seeds_total = 0;
  int seeds_failed = 0;  ///< non-converging seeds (dropped)
};

/// Newton from a lattice of seeds (seed_density per unit length, at least
/// two per axis). Poles closer than 1e-8 are merged; roots escaping the
/// region are dropped. The region must stay clear of |k| < 1e-3.
ScanOutcome scan_poles(const scarf2::PotentialParams& p, const Region& region,
                       int seed_density, unsigned jobs = 1);

struct DetuningTrace {
  /// (detuning delta applied to v2, pole position); final entry is the
  /// continuation endpoint at delta = 0.
  std::vector<std::pair<double, Complex>> points;
};

/// Starting from the exact zero-width point of singularity_solve_v2(v1, n),
/// track the amplitude pole while v2 detunes by each delta (nonzero, ordered
/// by non-increasing magnitude), bisecting continuation steps that lose the
/// pole. The trace ends with the delta -> 0 endpoint.
DetuningTrace width_vs_detuning(double v1, int n,
                                const std::vector<double>& deltas);

const char* to_string(PoleKind kind);

}  // namespace pole_hunt
}  // namespace ptscatter
