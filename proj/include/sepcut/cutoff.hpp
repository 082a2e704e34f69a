#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sepcut/measure.hpp"
#include "sepcut/separation.hpp"

namespace sepcut {

// Principal branch of w * e^w = x for x >= 0, to ~1e-15 relative.
// Throws std::domain_error for x < 0.
double lambert_w(double x);

struct CutoffReport {
  std::int64_t n = 0;
  double tau = 0.0;          // cutoff time
  double lambda_star = 0.0;  // smallest maximizer of log(n mu(0,l]) / l
  double kappa = 0.0;        // smallest rate (spectral gap)
  double beta = 0.0;         // n * mu(0, lambda_star] = exp(tau * lambda_star)
  double tau_kappa = 0.0;
  double b_left = 0.0;                 // 1 / lambda_star
  std::optional<double> b_right;       // W(tau*kappa) / kappa, absent if tau*kappa <= 0
  bool kappa_mass_below_one = false;   // n * mu(0, kappa] < 1: maximand negative at kappa
};

// tau = max over atoms of log(n mu(0,lambda]) / lambda. Checking atoms only
// is exact: on [lambda_j, lambda_{j+1}) the numerator A_j is constant, so the
// value A_j/lambda either decreases in lambda (A_j >= 0: maximum at the left
// atom) or is negative and strictly below A_{j+1}/lambda_{j+1} (A_j < 0:
// dominated by the next atom); past the last atom A = log n >= 0 decreases.
// Ties are broken toward the smallest lambda, first bitwise then within 1e-9
// relative of the maximum.
CutoffReport cutoff_time(const RateMeasure& measure);

// JSON object with fields n, tau, lambda_star, kappa, beta, tau_kappa,
// b_left, b_right (null when absent); a "flags" array is appended only when a
// flag is set. Floats carry 10 significant digits.
std::string to_json(const CutoffReport& report);

enum class WindowChoice { left, right, unit, custom };

struct ProfileRow {
  double c = 0.0;
  double t = 0.0;
  double sep = 0.0;
  std::optional<double> lower;  // sandwich bounds where t >= log(2)/kappa
  std::optional<double> upper;
};

struct SeparationProfile {
  CutoffReport report;
  double window = 0.0;  // the b actually used
  std::vector<ProfileRow> rows;
  int dropped_rows = 0;  // grid points with t < 0
};

// Evaluates sep at t = tau + c*b over the c grid. custom_b is only read for
// WindowChoice::custom.
SeparationProfile profile(const RateMeasure& measure, WindowChoice window,
                          std::span<const double> c_grid, double custom_b = 0.0);

// CSV with header c,t,sep,lower,upper; empty cells where bounds are absent.
std::string to_csv(const SeparationProfile& profile);

}  // namespace sepcut
