#include "ptscatter/scarf2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "ptscatter/errors.hpp"

namespace ptscatter::scarf2 {

namespace {

using cgamma::EvalOutcome;

constexpr Complex kI{0.0, 1.0};

struct ZeroFactor {
  Complex eps;  // vanishing linear factor (a + N)
  int n = 0;    // pole location index
};

struct FactorSplit {
  Complex log_regular{0.0, 0.0};  // log of the pole-free part
  std::vector<ZeroFactor> zeros;
};

// Accumulate log Gamma(a) into `out`, factoring out the vanishing linear
// term when a sits on a pole: Gamma(a) = Gamma(a+N+1) / prod_{j=0..N} (a+j).
void accumulate(FactorSplit& out, Complex a) {
  if (auto n = cgamma::pole_index(a)) {
    const int N = *n;
    out.log_regular += cgamma::detail::log_gamma_unchecked(a + (N + 1.0));
    for (int j = 0; j < N; ++j) out.log_regular -= std::log(a + double(j));
    out.zeros.push_back({a + double(N), N});
  } else {
    out.log_regular += cgamma::detail::log_gamma_unchecked(a);
  }
}

void sort_by_abs(std::vector<ZeroFactor>& v) {
  std::sort(v.begin(), v.end(), [](const ZeroFactor& a, const ZeroFactor& b) {
    return std::abs(a.eps) < std::abs(b.eps);
  });
}

}  // namespace

Complex potential_value(const PotentialParams& p, double x) {
  if (!std::isfinite(x)) {
    throw ValidationError("potential_value: x must be finite");
  }
  const double sech = 1.0 / std::cosh(x);
  return {-p.v1 * sech * sech, p.v2 * sech * std::tanh(x)};
}

DerivedParams derive_params(const PotentialParams& p) {
  return {0.5 * std::sqrt(Complex(p.v2 + p.v1 + 0.25, 0.0)),
          0.5 * std::sqrt(Complex(p.v2 - (p.v1 + 0.25), 0.0)),
          0.5 * std::sqrt(Complex(0.25 + p.v1 - p.v2, 0.0))};
}

EvalOutcome transmission_amplitude(const PotentialParams& p, Complex k) {
  if (std::abs(k) <= cgamma::kPoleTol) {
    throw ThresholdError(
        "transmission_amplitude: k = 0 threshold (kinematic Gamma pole)");
  }
  const DerivedParams d = derive_params(p);
  const std::array<Complex, 4> num = {
      0.5 - d.r - kI * (d.s + k),
      0.5 + d.r + kI * (d.s - k),
      0.5 + d.r - kI * (d.s + k),
      0.5 - d.r + kI * (d.s - k),
  };
  const std::array<Complex, 4> den = {
      -kI * k,
      1.0 - kI * k,
      0.5 - kI * k,
      0.5 - kI * k,
  };

  FactorSplit top, bottom;
  for (Complex a : num) accumulate(top, a);
  for (Complex b : den) accumulate(bottom, b);

  // Net pole order decides between a genuine amplitude pole and a finite
  // limit where numerator and denominator poles coincide. Every factor's
  // argument moves with slope -i in k, so exactly matched zeros cancel to 1.
  if (top.zeros.size() > bottom.zeros.size()) {
    return EvalOutcome::pole(top.zeros.front().n);
  }

  Complex value = std::exp(top.log_regular - bottom.log_regular);
  sort_by_abs(top.zeros);
  sort_by_abs(bottom.zeros);
  std::size_t i = 0;
  for (; i < top.zeros.size(); ++i) {
    const Complex zn = top.zeros[i].eps;
    const Complex zd = bottom.zeros[i].eps;
    if (zn == Complex(0.0, 0.0) && zd == Complex(0.0, 0.0)) continue;
    if (zn == Complex(0.0, 0.0)) return EvalOutcome::pole(top.zeros[i].n);
    value *= zd / zn;
  }
  for (; i < bottom.zeros.size(); ++i) value *= bottom.zeros[i].eps;
  return EvalOutcome::finite(value);
}

double transmission_coefficient(const PotentialParams& p, double k) {
  if (!(k > 0.0)) {
    if (k == 0.0) {
      throw ThresholdError(
          "transmission_coefficient: k = 0 threshold (kinematic Gamma pole)");
    }
    throw ValidationError("transmission_coefficient: k must be positive");
  }
  const EvalOutcome t = transmission_amplitude(p, Complex(k, 0.0));
  if (t.is_pole()) return std::numeric_limits<double>::infinity();
  return std::norm(t.value());
}

PtPhase pt_phase(const PotentialParams& p) {
  const double gap = std::abs(p.v2) - (p.v1 + 0.25);
  if (std::abs(gap) <= 1e-12) return PtPhase::SingularBoundary;
  return gap < 0.0 ? PtPhase::Unbroken : PtPhase::Broken;
}

SpectrumReport bound_spectrum(const PotentialParams& p,
                              LevelCounting counting) {
  // Spectra are invariant under v2 -> -v2 (a parity transform), so work with
  // |v2|, which keeps r real whenever levels exist.
  const PotentialParams cp{p.v1, std::abs(p.v2)};
  SpectrumReport rep;
  rep.phase = pt_phase(p);
  const DerivedParams d = derive_params(cp);

  if (rep.phase == PtPhase::Broken) {
    const double re_r = d.r.real();
    const double s = d.s.real();
    for (int n = 0; n + 0.5 < re_r; ++n) {
      const double c = n + 0.5 - re_r;
      const double re_e = s * s - c * c;
      const double im_e = 2.0 * c * s;
      rep.levels.push_back({Branch::ConjugatePair, n, Complex(re_e, im_e)});
      rep.levels.push_back({Branch::ConjugatePair, n, Complex(re_e, -im_e)});
    }
  } else {
    const double r = d.r.real();
    const double t = d.t.real();
    const auto enumerate = [&](Branch branch, double rt) {
      if (counting == LevelCounting::StrictBinding) {
        for (int n = 0; n + 0.5 < rt; ++n) {
          const double c = n + 0.5 - rt;
          rep.levels.push_back({branch, n, Complex(-c * c, 0.0)});
        }
      } else {
        const int m = static_cast<int>(std::floor(rt));
        for (int n = 0; n <= m; ++n) {
          const double c = n + 0.5 - rt;
          rep.levels.push_back({branch, n, Complex(-c * c, 0.0)});
        }
      }
    };
    enumerate(Branch::Plus, r + t);
    enumerate(Branch::Minus, r - t);
  }

  std::stable_sort(rep.levels.begin(), rep.levels.end(),
                   [](const Level& a, const Level& b) {
                     if (a.energy.real() != b.energy.real()) {
                       return a.energy.real() < b.energy.real();
                     }
                     return a.energy.imag() < b.energy.imag();
                   });
  return rep;
}

namespace {

double condition_target(int n) { return 4.0 * n * n + 4.0 * n + 0.75; }

}  // namespace

SingularityReport singularity_check(const PotentialParams& p, double tol) {
  if (!(tol > 0.0)) {
    throw ValidationError("singularity_check: tolerance must be positive");
  }
  const double sum = p.v1 + std::abs(p.v2);

  int best = 1;
  if (sum + 0.25 > 0.0) {
    const double n_real = 0.5 * (std::sqrt(sum + 0.25) - 1.0);
    const int lo = std::max(1, static_cast<int>(std::floor(n_real)));
    for (int n : {lo, lo + 1}) {
      if (std::abs(sum - condition_target(n)) <
          std::abs(sum - condition_target(best))) {
        best = n;
      }
    }
  }

  SingularityReport rep;
  rep.n = best;
  rep.detuning = sum - condition_target(best);
  rep.e_star = 0.25 * (std::abs(p.v2) - (0.25 + p.v1));
  rep.positivity_ok = rep.e_star > 0.0;
  rep.satisfied = std::abs(rep.detuning) <= tol && rep.positivity_ok;
  return rep;
}

SingularitySolution singularity_solve_v2(double v1, int n) {
  if (n < 1) {
    throw ValidationError("singularity_solve_v2: level index n must be >= 1");
  }
  const double v2 = condition_target(n) - v1;
  const double e_star = 0.25 * (std::abs(v2) - (0.25 + v1));
  if (!(e_star > 0.0)) {
    const double sgn = (v1 > 0.0) ? 1.0 : (v1 < 0.0 ? -1.0 : 0.0);
    const bool strength_ok = std::abs(v2) > std::abs(v1) + 0.25 * sgn;
    std::ostringstream msg;
    msg << "singularity_solve_v2: resonant energy E* = " << e_star
        << " is not positive for v1 = " << v1 << ", n = " << n
        << " (v2 = " << v2 << "); imaginary-strength condition |v2| > |v1| + "
           "sgn(v1)/4 is "
        << (strength_ok ? "met" : "violated")
        << ", direct condition E* > 0 is violated";
    throw PositivityError(msg.str());
  }
  return {v2, e_star};
}

scatter1d::PotentialFn as_potential_fn(const PotentialParams& p,
                                       double tail_tol) {
  if (!(tail_tol > 0.0)) {
    throw ValidationError("as_potential_fn: tail tolerance must be positive");
  }
  // |V(x)| <= 4|v1| e^(-2|x|) + 2|v2| e^(-|x|) for |x| >= 1; bisect the bound
  // against the tail tolerance.
  const auto bound = [&](double x) {
    return 4.0 * std::abs(p.v1) * std::exp(-2.0 * x) +
           2.0 * std::abs(p.v2) * std::exp(-x);
  };
  double decay = 0.0;
  if (bound(0.0) > tail_tol) {
    double lo = 0.0, hi = 800.0;
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      (bound(mid) > tail_tol ? lo : hi) = mid;
    }
    decay = hi;
  }
  return {[p](double x) { return potential_value(p, x); }, decay};
}

const char* to_string(PtPhase phase) {
  switch (phase) {
    case PtPhase::Unbroken: return "UNBROKEN";
    case PtPhase::Broken: return "BROKEN";
    case PtPhase::SingularBoundary: return "SINGULAR-BOUNDARY";
  }
  return "?";
}

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::Plus: return "PLUS";
    case Branch::Minus: return "MINUS";
    case Branch::ConjugatePair: return "CONJUGATE-PAIR";
  }
  return "?";
}

}  // namespace ptscatter::scarf2
