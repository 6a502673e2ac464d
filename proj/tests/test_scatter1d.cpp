#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ptscatter/errors.hpp"
#include "ptscatter/ode.hpp"
#include "ptscatter/scarf2.hpp"
#include "ptscatter/scatter1d.hpp"

using namespace ptscatter;
using scatter1d::DomainConfig;
using scatter1d::Side;

namespace {

scatter1d::PotentialFn free_particle() {
  return {[](double) { return Complex(0.0, 0.0); }, 0.0};
}

}  // namespace

TEST_CASE("integrator tableau is internally consistent") {
  namespace tb = ode::rkf78;
  double bsum = 0.0;
  for (double b : tb::kB8) bsum += b;
  CHECK(std::abs(bsum - 1.0) < 1e-15);
  for (std::size_t s = 0; s < tb::kStages; ++s) {
    double row = 0.0;
    for (std::size_t j = 0; j < s; ++j) row += tb::kA[s][j];
    CHECK(std::abs(row - tb::kC[s]) < 1e-14);
  }
}

TEST_CASE("integrator reproduces a complex oscillator over a long span") {
  const Complex ik(0.0, 1.3);
  auto rhs = [&](double, const std::array<Complex, 1>& y) {
    return std::array<Complex, 1>{ik * y[0]};
  };
  ode::StepControls ctl{1e-12, 1e-14, 100'000};
  ode::IntegrationStats stats;
  const auto y = ode::integrate<1>(rhs, {Complex(1.0, 0.0)}, 0.0, 20.0, ctl,
                                   &stats);
  CHECK(std::abs(y[0] - std::exp(ik * 20.0)) < 1e-10);
  CHECK(stats.accepted > 10);

  // Backward direction.
  const auto yb = ode::integrate<1>(rhs, {Complex(1.0, 0.0)}, 0.0, -20.0, ctl);
  CHECK(std::abs(yb[0] - std::exp(ik * -20.0)) < 1e-10);
}

TEST_CASE("integrator enforces its step budget") {
  auto rhs = [](double, const std::array<Complex, 1>& y) {
    return std::array<Complex, 1>{y[0]};
  };
  ode::StepControls ctl{1e-12, 1e-14, 5};
  CHECK_THROWS_AS(
      (void)ode::integrate<1>(rhs, {Complex(1.0, 0.0)}, 0.0, 50.0, ctl),
      NonConvergenceError);
}

TEST_CASE("free particle scatters trivially") {
  const auto res =
      scatter1d::solve_scattering(free_particle(), 1.0, Side::LeftIncidence);
  CHECK(std::abs(res.T - 1.0) < 1e-9);
  CHECK(res.R < 1e-20);
  CHECK(std::abs(res.flux_defect) < 1e-9);
  CHECK(std::abs(res.t_amp - Complex(1.0, 0.0)) < 1e-9);
}

TEST_CASE("reflectionless well at unit wavenumber") {
  const auto pot = scarf2::as_potential_fn({6.0, 0.0});
  const auto res = scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence);
  CHECK(std::abs(res.T - 1.0) < 1e-8);
  CHECK(res.R < 1e-8);
}

TEST_CASE("non-integer sech well matches the closed form") {
  const auto pot = scarf2::as_potential_fn({1.0, 0.0});
  for (double k : {0.5, 1.0}) {
    const auto res = scatter1d::solve_scattering(pot, k, Side::LeftIncidence);
    CHECK(std::abs(res.T - oracles::sech_well_transmission(1.0, k)) < 1e-8);
    CHECK(std::abs(res.flux_defect) < 1e-8);
  }
}

TEST_CASE("numeric transmission agrees with the analytic amplitude") {
  DomainConfig cfg;
  cfg.half_width = 24.0;
  for (const auto& s : oracles::kAmplitudes) {
    const auto pot = scarf2::as_potential_fn({s.v1, s.v2});
    const auto res =
        scatter1d::solve_scattering(pot, s.k, Side::LeftIncidence, cfg);
    const double T_ana = std::norm(s.value);
    CHECK(std::abs(res.T - T_ana) < 1e-6 * T_ana);
  }
}

TEST_CASE("transmission explodes at the zero-width resonance") {
  const auto pot = scarf2::as_potential_fn({1.0, 7.75});
  const auto res = scatter1d::solve_scattering(pot, std::sqrt(1.625),
                                               Side::LeftIncidence);
  CHECK(res.T > 1e4);
}

TEST_CASE("transmission is side-independent, reflection is not") {
  DomainConfig cfg;
  const auto pot = scarf2::as_potential_fn({1.0, 2.0});
  const auto left =
      scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence, cfg);
  const auto right =
      scatter1d::solve_scattering(pot, 1.0, Side::RightIncidence, cfg);
  CHECK(std::abs(left.t_amp - right.t_amp) < 1e-8);
  CHECK(std::abs(left.R - right.R) > 1e-3);

  // Flipping the sign of v2 is the same solve as flipping the incidence.
  const auto pot_flip = scarf2::as_potential_fn({1.0, -2.0});
  const auto right_flip =
      scatter1d::solve_scattering(pot_flip, 1.0, Side::RightIncidence, cfg);
  CHECK(left.R == right_flip.R);
  CHECK(left.t_amp == right_flip.t_amp);
}

TEST_CASE("transmission reciprocity holds for random complex potentials") {
  std::mt19937_64 rng(75u);
  std::uniform_real_distribution<double> vs(-8.0, 8.0);
  for (int i = 0; i < 10; ++i) {
    const scarf2::PotentialParams p{vs(rng), vs(rng)};
    const auto pot = scarf2::as_potential_fn(p);
    for (double k : {0.7, 1.9}) {
      const auto l = scatter1d::solve_scattering(pot, k, Side::LeftIncidence);
      const auto r = scatter1d::solve_scattering(pot, k, Side::RightIncidence);
      CHECK(std::abs(l.t_amp - r.t_amp) <=
            1e-8 * std::max(1.0, std::abs(l.t_amp)));
    }
  }
}

TEST_CASE("real potentials conserve flux") {
  std::mt19937_64 rng(76u);
  std::uniform_real_distribution<double> vs(0.5, 14.0);
  std::uniform_real_distribution<double> ks(0.3, 4.0);
  for (int i = 0; i < 10; ++i) {
    const auto pot = scarf2::as_potential_fn({vs(rng), 0.0});
    const auto res =
        scatter1d::solve_scattering(pot, ks(rng), Side::LeftIncidence);
    CHECK(std::abs(res.flux_defect) < 1e-8);
  }
}

TEST_CASE("transmission converges in the domain half-width") {
  // Real potential: tail is sech^2, truncation error far below 1e-8.
  for (double v1 : {6.0, 2.0}) {
    const auto pot = scarf2::as_potential_fn({v1, 0.0});
    DomainConfig narrow, wide;
    narrow.half_width = 15.0;
    wide.half_width = 30.0;
    const double T15 =
        scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence, narrow).T;
    const double T30 =
        scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence, wide).T;
    CHECK(std::abs(T30 - T15) < 1e-8 * T30);
  }
  // Complex potential: the sech tail of Im V dominates and decays like
  // exp(-L), so successive widenings shrink the change geometrically.
  const auto pot = scarf2::as_potential_fn({6.0, 7.75}, 1e-4);
  const auto T_at = [&](double L) {
    DomainConfig cfg;
    cfg.half_width = L;
    cfg.tail_tol = 1e-4;
    return scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence, cfg).T;
  };
  const double d_narrow = std::abs(T_at(18.0) - T_at(15.0));
  const double d_wide = std::abs(T_at(30.0) - T_at(24.0));
  CHECK(d_wide < 1e-3 * d_narrow);
  CHECK(d_wide < 1e-9);
}

TEST_CASE("sweep preserves order and collects per-point failures") {
  const auto pot = scarf2::as_potential_fn({6.0, 2.0});
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const auto points = scatter1d::sweep(pot, grid, Side::LeftIncidence);
  REQUIRE(points.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(points[i].k == grid[i]);
    REQUIRE(points[i].result.has_value());
    const double T_ana =
        scarf2::transmission_coefficient({6.0, 2.0}, grid[i]);
    CHECK(std::abs(points[i].result->T - T_ana) < 1e-6 * T_ana);
  }

  // Starved step budget: every point fails, nothing throws.
  DomainConfig starved;
  starved.max_steps = 40;
  const auto failed = scatter1d::sweep(pot, grid, Side::LeftIncidence, starved);
  for (const auto& pt : failed) {
    CHECK_FALSE(pt.result.has_value());
    CHECK_FALSE(pt.error.empty());
  }

  CHECK_THROWS_AS(
      (void)scatter1d::sweep(pot, {1.0, 0.5}, Side::LeftIncidence),
      ValidationError);
  CHECK_THROWS_AS(
      (void)scatter1d::sweep(pot, {-1.0, 0.5}, Side::LeftIncidence),
      ValidationError);
}

TEST_CASE("sweep is independent of the worker count") {
  const auto pot = scarf2::as_potential_fn({1.0, 5.0});
  const auto grid = oracles::linspace(0.4, 3.0, 9);
  const auto serial = scatter1d::sweep(pot, grid, Side::LeftIncidence, {}, 1);
  const auto parallel = scatter1d::sweep(pot, grid, Side::LeftIncidence, {}, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].result->t_amp == parallel[i].result->t_amp);
    CHECK(serial[i].result->r_amp == parallel[i].result->r_amp);
  }
}

TEST_CASE("interior maximum of a sweep sits at the resonance") {
  const auto pot = scarf2::as_potential_fn({1.0, 7.75});
  const auto grid = oracles::linspace(1.0, 1.4833, 30);  // E in [1.0, 2.2]
  const auto points = scatter1d::sweep(pot, grid, Side::LeftIncidence);
  std::size_t argmax = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  std::size_t nearest = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].result->T > points[argmax].result->T) argmax = i;
    const double gap = std::abs(grid[i] - std::sqrt(1.625));
    if (gap < best_gap) {
      best_gap = gap;
      nearest = i;
    }
  }
  CHECK(argmax == nearest);
  CHECK(argmax > 0);
  CHECK(argmax + 1 < points.size());
}

TEST_CASE("wavefunction export carries the scattering normalization") {
  DomainConfig cfg;
  const auto grid = oracles::linspace(-10.0, 10.0, 41);

  // Free particle: |psi| = 1 everywhere.
  const auto flat =
      scatter1d::wavefunction_export(free_particle(), 1.0, Side::LeftIncidence,
                                     cfg, grid);
  REQUIRE(flat.size() == grid.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    CHECK(flat[i].first == grid[i]);
    CHECK(std::abs(std::abs(flat[i].second) - 1.0) < 1e-10);
  }

  // Reflectionless well: |psi(+L)| = |t|.
  const auto pot = scarf2::as_potential_fn({6.0, 0.0});
  const auto res = scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence,
                                               cfg);
  const auto tail = scatter1d::wavefunction_export(
      pot, 1.0, Side::LeftIncidence, cfg, {cfg.half_width});
  CHECK(std::abs(std::abs(tail[0].second) - std::abs(res.t_amp)) < 1e-9);

  // At the zero-width resonance the interior amplitude dwarfs the value at
  // the incident-side boundary (the transmitted-side boundary carries the
  // diverging outgoing wave itself) and the off-resonance profile.
  const auto sing = scarf2::as_potential_fn({1.0, 7.75});
  const auto grid_full =
      oracles::linspace(-cfg.half_width, cfg.half_width, 181);
  const auto on_res = scatter1d::wavefunction_export(
      sing, std::sqrt(1.625), Side::LeftIncidence, cfg, grid_full);
  const auto off_res = scatter1d::wavefunction_export(
      sing, std::sqrt(1.625) + 0.05, Side::LeftIncidence, cfg, grid_full);
  double peak_on = 0.0, peak_off = 0.0;
  for (const auto& [x, psi] : on_res) peak_on = std::max(peak_on, std::abs(psi));
  for (const auto& [x, psi] : off_res)
    peak_off = std::max(peak_off, std::abs(psi));
  CHECK(peak_on > 10.0 * std::abs(on_res.front().second));
  CHECK(peak_on > 1e4 * peak_off);

  CHECK_THROWS_AS((void)scatter1d::wavefunction_export(
                      pot, 1.0, Side::LeftIncidence, cfg, {cfg.half_width + 1}),
                  ValidationError);
}

TEST_CASE("domain validation rejects unusable configurations") {
  const auto pot = scarf2::as_potential_fn({1.0, 7.75});
  DomainConfig cfg;

  cfg.half_width = 10.0;  // below the decay bound of this potential
  CHECK_THROWS_AS(
      (void)scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence, cfg),
      DomainTooSmallError);

  cfg = DomainConfig{};
  cfg.rel_tol = 1e-2;  // outside (0, 1e-3]
  CHECK_THROWS_AS(
      (void)scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence, cfg),
      ValidationError);

  cfg = DomainConfig{};
  cfg.abs_tol = 0.0;
  CHECK_THROWS_AS(
      (void)scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence, cfg),
      ValidationError);

  cfg = DomainConfig{};
  cfg.max_steps = 30;
  CHECK_THROWS_AS(
      (void)scatter1d::solve_scattering(pot, 1.0, Side::LeftIncidence, cfg),
      NonConvergenceError);

  CHECK_THROWS_AS(
      (void)scatter1d::solve_scattering(pot, 0.0, Side::LeftIncidence),
      ValidationError);
}
