#pragma once

#include <complex>
#include <optional>

namespace ptscatter {

using Complex = std::complex<double>;

/// Complex Gamma-function kernel.
///
/// Evaluation uses a Lanczos rational approximation (g = 7, 9 coefficients)
/// for Re z >= 1/2 and the reflection formula elsewhere, with range-reduced
/// sin(pi z) so that accuracy survives far down the negative real axis.
/// Poles at non-positive integers are data, not failures: gamma() reports
/// them as markers, recip_gamma() maps them to exact zeros, and log_gamma()
/// refuses them.
namespace cgamma {

/// Absolute distance below which an argument counts as sitting on a pole.
inline constexpr double kPoleTol = 1e-12;

/// Either a finite value or a marker for the Gamma pole at z = -N.
class EvalOutcome {
 public:
  static EvalOutcome finite(Complex v) {
    EvalOutcome o;
    o.value_ = v;
    return o;
  }
  static EvalOutcome pole(int n) {
    EvalOutcome o;
    o.pole_n_ = n;
    return o;
  }

  bool is_pole() const { return pole_n_ >= 0; }
  /// Finite value; meaningful only when !is_pole().
  Complex value() const { return value_; }
  /// The pole sits at z = -pole_index(); meaningful only when is_pole().
  int pole_index() const { return pole_n_; }

 private:
  Complex value_{0.0, 0.0};
  int pole_n_ = -1;
};

/// N >= 0 when z lies within tol of the non-positive integer -N.
std::optional<int> pole_index(Complex z, double tol = kPoleTol);

/// Gamma(z); pole marker within kPoleTol of a non-positive integer.
EvalOutcome gamma(Complex z);

/// Principal-branch log Gamma(z). Throws GammaPoleError on the pole set.
Complex log_gamma(Complex z);

/// 1/Gamma(z), entire; exactly zero at non-positive integers.
Complex recip_gamma(Complex z);

namespace detail {

/// sin(pi z) with range reduction on Re z (no precision loss for large |Re z|).
Complex sin_pi(Complex z);

/// Lanczos evaluation of Gamma(z), valid for Re z >= 1/2.
Complex lanczos_gamma(Complex z);

/// Principal log Gamma for Re z >= 1/2.
Complex log_gamma_right(Complex z);

/// log Gamma without the pole-set check; real part -> -inf at exact poles.
Complex log_gamma_unchecked(Complex z);

}  // namespace detail

}  // namespace cgamma
}  // namespace ptscatter
