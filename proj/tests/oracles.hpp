#pragma once

// Reference data for the test suites: values frozen from 40-digit arithmetic,
// plus closed-form sech-well oracles that are independent of the production
// evaluation path.

#include <cmath>
#include <vector>

#include "ptscatter/cgamma.hpp"

namespace oracles {

using ptscatter::Complex;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrtPi = 1.7724538509055160;

// --- Gamma kernel -----------------------------------------------------------

inline constexpr Complex kGammaI{-0.15494982830181069, -0.49801566811835604};
inline constexpr double kGammaIModulus = 0.52156404686493984;
inline constexpr Complex kGamma2p5_0p5{1.1723958284848563, 0.43650708518475609};
inline constexpr Complex kLogGamma1_5i{-6.1303241445527488, 3.8158985746149245};
inline constexpr Complex kLogGammaM2p5_3i{-7.478236042050315,
                                          -5.7261042719103868};
inline constexpr double kLogGamma4 = 1.7917594692280550;
inline constexpr double kGammaM2p5 = -0.94530872048294188;

struct GammaSample {
  Complex z;
  Complex value;
};

// Spread over |z| <= 50, both half-planes.
inline constexpr GammaSample kGammaFarField[] = {
    {{50.0, 0.0}, {6.0828186403426756e+62, 0.0}},
    {{0.5, 49.5}, {2.7726468318164454e-34, -3.2518478232756682e-34}},
    {{-30.25, 20.0}, {-2.8385030807235098e-58, -2.3185550927306171e-57}},
    {{35.0, -35.0}, {-5.2440474769634861e+31, -7.5502471744782691e+30}},
    {{-49.5, -2.5}, {-5.6713358755326757e-67, 2.111183609281979e-67}},
    {{12.3, -45.6}, {3.7950012169931859e-12, -7.4678468322406186e-12}},
    {{-20.5, 0.5}, {-5.5029252810245593e-21, -1.1351245475413627e-19}},
};

// --- Scarf II closed-form values --------------------------------------------

inline constexpr double kS_1_7p75 = 1.2747548783981962;  // = sqrt(1.625)
inline constexpr double kR_6_2 = 1.4361406616345072;
inline constexpr double kT_6_2 = 1.0307764064044151;
inline constexpr double kEnergy0_6_2 = -3.8687627525428305;
inline constexpr double kEnergy1_6_2 = -0.93492861646498590;
inline constexpr double kRMinusT_6_2 = 0.40536425523009203;
inline constexpr double kS_1_5 = 0.96824583655185422;
inline constexpr Complex kPairEnergy_1_5{0.375, -1.4523687548277813};
inline constexpr Complex kPairPole_1_5{0.96824583655185422, 0.75};

struct AmplitudeSample {
  double v1, v2, k;
  Complex value;
};

inline constexpr AmplitudeSample kAmplitudes[] = {
    {6.0, 2.0, 1.0, {-0.74023591442374557, -0.67736212364911444}},
    {1.0, 5.0, 0.8, {0.15868070551627851, 0.28728323405443864}},
    {1.0, 7.75, 1.2, {0.81495786781171343, -1.4553839227547802}},
    {6.0, 0.0, 0.35, {0.52350145394185043, -0.85202478116588173}},
    {2.0, 22.75, 3.0, {-0.23624613858648824, 0.98187542177200668}},
};

// --- Textbook sech-well oracles ---------------------------------------------

// Transmission through V = -depth sech^2 x (valid for 1 + 4 depth >= 0).
inline double sech_well_transmission(double depth, double k) {
  const double sh = std::sinh(kPi * k);
  const double c = std::cos(0.5 * kPi * std::sqrt(1.0 + 4.0 * depth));
  return sh * sh / (sh * sh + c * c);
}

// Bound levels of V = -depth sech^2 x: E_n = -(lambda - n)^2, n < lambda,
// with lambda (lambda + 1) = depth.
inline std::vector<double> sech_well_levels(double depth) {
  const double lambda = 0.5 * (std::sqrt(1.0 + 4.0 * depth) - 1.0);
  std::vector<double> levels;
  for (int n = 0; n < lambda; ++n) {
    const double b = lambda - n;
    levels.push_back(-b * b);
  }
  return levels;
}

inline double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::abs(want);
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace oracles
