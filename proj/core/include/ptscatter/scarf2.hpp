#pragma once

#include <complex>
#include <vector>

#include "ptscatter/cgamma.hpp"
#include "ptscatter/scatter1d.hpp"

namespace ptscatter {

/// Closed-form physics of the complex PT-symmetric Scarf II potential
///   V(x) = -v1 sech^2(x) + i v2 sech(x) tanh(x),
/// units 2m = hbar = 1: transmission amplitude, bound spectra, PT-phase
/// classification, and the zero-width-resonance (spectral singularity)
/// condition with its resonant energy.
namespace scarf2 {

struct PotentialParams {
  double v1 = 0.0;
  double v2 = 0.0;
};

/// Principal-branch parameters with r^2 = (v2+v1+1/4)/4,
/// s^2 = (v2-v1-1/4)/4 and t^2 = -s^2. Each root carries Re >= 0, and
/// Im >= 0 where the real part vanishes.
struct DerivedParams {
  Complex r;
  Complex s;
  Complex t;
};

/// Pointwise potential value. PT symmetry V(-x) = conj(V(x)) is exact.
Complex potential_value(const PotentialParams& p, double x);

DerivedParams derive_params(const PotentialParams& p);

/// Transmission amplitude as a quotient of Gamma factors, evaluated in log
/// space. Returns a pole marker when an uncancelled numerator factor sits on
/// a Gamma pole; throws ThresholdError at k = 0.
cgamma::EvalOutcome transmission_amplitude(const PotentialParams& p,
                                           Complex k);

/// |t|^2 for real k > 0; +infinity exactly on pole markers.
double transmission_coefficient(const PotentialParams& p, double k);

enum class PtPhase { Unbroken, Broken, SingularBoundary };

/// Unbroken iff |v2| < v1 + 1/4 (sign of v2 only flips the incidence
/// direction); boundary when equal within 1e-12.
PtPhase pt_phase(const PotentialParams& p);

enum class Branch { Plus, Minus, ConjugatePair };

struct Level {
  Branch branch = Branch::Plus;
  int n = 0;
  Complex energy;
};

struct SpectrumReport {
  PtPhase phase = PtPhase::Unbroken;
  std::vector<Level> levels;  ///< sorted by (Re E, Im E)
};

/// Level enumeration rule for the real branches E = -(n+1/2-(r+-t))^2.
/// StrictBinding keeps n+1/2 < r+-t only; IntegerPart reproduces the literal
/// n = 0..floor(r+-t) counting, which admits threshold and spurious edge
/// levels (kept for diagnostic comparison).
enum class LevelCounting { StrictBinding, IntegerPart };

SpectrumReport bound_spectrum(
    const PotentialParams& p,
    LevelCounting counting = LevelCounting::StrictBinding);

inline constexpr double kDefaultSingularityTol = 1e-9;

struct SingularityReport {
  bool satisfied = false;
  int n = 1;               ///< nearest level index >= 1
  double e_star = 0.0;     ///< resonant energy (|v2| - 1/4 - v1)/4, any sign
  double detuning = 0.0;   ///< v1 + |v2| - (4n^2 + 4n + 3/4) at the nearest n
  bool positivity_ok = false;  ///< e_star > 0
};

/// Zero-width-resonance condition check: satisfied iff the nearest-n residual
/// of v1 + |v2| = 4n^2 + 4n + 3/4 is within tol and e_star > 0.
SingularityReport singularity_check(const PotentialParams& p,
                                    double tol = kDefaultSingularityTol);

struct SingularitySolution {
  double v2 = 0.0;
  double e_star = 0.0;
};

/// Solve the singularity condition for v2 at fixed v1 and level index n >= 1
/// (positive-sign convention). Throws PositivityError when the resulting
/// resonant energy is not positive.
SingularitySolution singularity_solve_v2(double v1, int n);

/// Potential callback for the numeric engine, with decay_bound solved from
/// the given tail tolerance.
scatter1d::PotentialFn as_potential_fn(const PotentialParams& p,
                                       double tail_tol = 1e-6);

const char* to_string(PtPhase phase);
const char* to_string(Branch branch);

}  // namespace scarf2
}  // namespace ptscatter
