#include "ptscatter/pole_hunt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel_for.hpp"
#include "ptscatter/errors.hpp"

namespace ptscatter::pole_hunt {

namespace {

constexpr Complex kI{0.0, 1.0};

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

PoleKind classify(Complex k, double margin) {
  if (k.imag() > margin) return PoleKind::Bound;
  if (k.imag() < -margin) {
    return std::abs(k.real()) <= margin ? PoleKind::Antibound
                                        : PoleKind::Resonance;
  }
  return PoleKind::SpectralSingularity;
}

}  // namespace

Complex inverse_transmission(const scarf2::PotentialParams& p, Complex k) {
  if (std::abs(k) <= cgamma::kPoleTol) {
    throw ThresholdError("inverse_transmission: k = 0 threshold");
  }
  const scarf2::DerivedParams d = scarf2::derive_params(p);
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
  // Interleave reciprocal-numerator and denominator factors so partial
  // products stay bounded; recip_gamma is entire, so zeros come out exact.
  Complex g{1.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    g *= cgamma::recip_gamma(num[i]);
    const auto dg = cgamma::gamma(den[i]);
    if (dg.is_pole()) {
      return Complex(std::numeric_limits<double>::infinity(), 0.0);
    }
    g *= dg.value();
  }
  return g;
}

PoleRecord find_pole(const scarf2::PotentialParams& p, Complex k_seed,
                     const NewtonOptions& opt) {
  Complex k = k_seed;
  const auto g_of = [&](Complex z) { return inverse_transmission(p, z); };

  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    if (std::abs(k) < opt.threshold_radius) {
      throw StagnationError("find_pole: iterate trapped at the k = 0 threshold");
    }
    const Complex g = g_of(k);
    if (!finite(g)) {
      throw NonConvergenceError("find_pole: iterate hit a threshold-axis pole");
    }
    if (g == Complex(0.0, 0.0)) {
      return {k, k * k, classify(k, opt.classify_margin), 0.0, iter};
    }

    const double h = 1e-7 * std::max(1.0, std::abs(k));
    const Complex gp = (g_of(k + h) - g_of(k - h)) / (2.0 * h);
    if (!finite(gp) || gp == Complex(0.0, 0.0)) {
      throw NonConvergenceError("find_pole: derivative unusable");
    }
    const Complex full_step = -g / gp;

    // Damped update: halve until the residual stops growing.
    double lambda = 1.0;
    Complex k_next = k + full_step;
    for (int back = 0; back < 50; ++back) {
      const Complex g_next = g_of(k_next);
      if (finite(g_next) && std::abs(g_next) <= std::abs(g)) break;
      lambda *= 0.5;
      k_next = k + lambda * full_step;
    }
    const double dk = std::abs(k_next - k);
    k = k_next;

    if (dk < opt.step_tol) {
      const double residual = std::abs(g_of(k));
      if (residual <= opt.residual_tol) {
        return {k, k * k, classify(k, opt.classify_margin), residual, iter};
      }
      throw NonConvergenceError(
          "find_pole: stalled with residual above tolerance");
    }
  }
  throw NonConvergenceError("find_pole: iteration budget exhausted");
}

ScanOutcome scan_poles(const scarf2::PotentialParams& p, const Region& region,
                       int seed_density, unsigned jobs) {
  if (!(region.re_min < region.re_max) || !(region.im_min < region.im_max)) {
    throw ValidationError("scan_poles: empty region");
  }
  if (seed_density < 1) {
    throw ValidationError("scan_poles: seed density must be positive");
  }
  const double near_re = std::clamp(0.0, region.re_min, region.re_max);
  const double near_im = std::clamp(0.0, region.im_min, region.im_max);
  if (std::hypot(near_re, near_im) < 1e-3) {
    throw ValidationError("scan_poles: region must exclude |k| < 1e-3");
  }

  const auto cells = [&](double lo, double hi) {
    return std::max(2, static_cast<int>(std::ceil((hi - lo) * seed_density)));
  };
  const int nx = cells(region.re_min, region.re_max);
  const int ny = cells(region.im_min, region.im_max);
  const double dx = (region.re_max - region.re_min) / nx;
  const double dy = (region.im_max - region.im_min) / ny;

  struct SeedResult {
    bool converged = false;
    PoleRecord record;
  };
  std::vector<SeedResult> results(static_cast<std::size_t>(nx) * ny);
  detail::parallel_for(results.size(), jobs, [&](std::size_t idx) {
    const int ix = static_cast<int>(idx) % nx;
    const int iy = static_cast<int>(idx) / nx;
    const Complex seed(region.re_min + (ix + 0.5) * dx,
                       region.im_min + (iy + 0.5) * dy);
    try {
      results[idx] = {true, find_pole(p, seed)};
    } catch (const NonConvergenceError&) {
    } catch (const StagnationError&) {
    }
  });

  ScanOutcome out;
  out.seeds_total = static_cast<int>(results.size());
  std::vector<PoleRecord> found;
  for (const auto& r : results) {
    if (!r.converged) {
      ++out.seeds_failed;
      continue;
    }
    const Complex k = r.record.k_pole;
    const bool inside = k.real() >= region.re_min - 1e-9 &&
                        k.real() <= region.re_max + 1e-9 &&
                        k.imag() >= region.im_min - 1e-9 &&
                        k.imag() <= region.im_max + 1e-9;
    if (inside) found.push_back(r.record);
  }

  // Greedy clustering: roots closer than 1e-8 are the same pole.
  for (const auto& rec : found) {
    bool merged = false;
    for (auto& kept : out.poles) {
      if (std::abs(rec.k_pole - kept.k_pole) < 1e-8) {
        if (rec.residual < kept.residual) kept = rec;
        merged = true;
        break;
      }
    }
    if (!merged) out.poles.push_back(rec);
  }
  std::sort(out.poles.begin(), out.poles.end(),
            [](const PoleRecord& a, const PoleRecord& b) {
              if (a.k_pole.real() != b.k_pole.real()) {
                return a.k_pole.real() < b.k_pole.real();
              }
              return a.k_pole.imag() < b.k_pole.imag();
            });
  return out;
}

DetuningTrace width_vs_detuning(double v1, int n,
                                const std::vector<double>& deltas) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] == 0.0) {
      throw ValidationError("width_vs_detuning: deltas must be nonzero");
    }
    if (i > 0 && std::abs(deltas[i]) > std::abs(deltas[i - 1])) {
      throw ValidationError(
          "width_vs_detuning: deltas must have non-increasing magnitude");
    }
  }
  const auto base = scarf2::singularity_solve_v2(v1, n);

  double delta_cur = 0.0;
  Complex k_cur = std::sqrt(Complex(base.e_star, 0.0));

  // Continue the pole from (delta_cur, k_cur) to delta_target, bisecting the
  // detuning step whenever the pole is lost or jumps.
  const auto continue_to = [&](double delta_target) {
    while (delta_cur != delta_target) {
      double step = delta_target - delta_cur;
      for (;;) {
        const double trial = (std::abs(step) < 1e-12)
                                 ? delta_target
                                 : delta_cur + step;
        const scarf2::PotentialParams pp{v1, base.v2 + trial};
        bool ok = false;
        PoleRecord rec;
        try {
          rec = find_pole(pp, k_cur);
          ok = std::abs(rec.k_pole - k_cur) <= 0.5;
        } catch (const NonConvergenceError&) {
        } catch (const StagnationError&) {
        }
        if (ok) {
          delta_cur = trial;
          k_cur = rec.k_pole;
          break;
        }
        if (std::abs(step) < 1e-12) {
          throw NonConvergenceError(
              "width_vs_detuning: continuation lost the pole");
        }
        step *= 0.5;
      }
    }
  };

  DetuningTrace trace;
  for (double d : deltas) {
    continue_to(d);
    trace.points.emplace_back(d, k_cur);
  }
  continue_to(0.0);
  trace.points.emplace_back(0.0, k_cur);
  return trace;
}

const char* to_string(PoleKind kind) {
  switch (kind) {
    case PoleKind::Bound: return "BOUND";
    case PoleKind::Antibound: return "ANTIBOUND";
    case PoleKind::Resonance: return "RESONANCE";
    case PoleKind::SpectralSingularity: return "SPECTRAL-SINGULARITY";
  }
  return "?";
}

}  // namespace ptscatter::pole_hunt
