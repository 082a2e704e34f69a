#pragma once

#include <span>

#include "sepcut/measure.hpp"

namespace sepcut {

// Uniform envelope for the deviation of per-coordinate convergence from pure
// exponential decay. Either identically zero or a/(1+t); both are bounded,
// continuous and O(1/t), so any instance is admissible.
class PerturbationEnvelope {
 public:
  static PerturbationEnvelope zero() { return PerturbationEnvelope(0.0); }
  static PerturbationEnvelope rational_decay(double amplitude);

  double operator()(double t) const {
    return amplitude_ == 0.0 ? 0.0 : amplitude_ / (1.0 + t);
  }
  bool is_zero() const { return amplitude_ == 0.0; }
  double amplitude() const { return amplitude_; }

 private:
  explicit PerturbationEnvelope(double a) : amplitude_(a) {}
  double amplitude_;
};

// Separation of one pure-exponential coordinate: exp(-lambda * t).
double sep_single(double rate, double t);

// Separation of a tuple from its per-coordinate separations:
// 1 - prod(1 - s_i), accumulated in log space.
double sep_product(std::span<const double> seps);

// Exact tuple separation for a rate measure (pure exponential coordinates):
// 1 - exp(n * sum_j m_j * log(1 - exp(-t * lambda_j))). Returns 1 at t = 0.
double sep_tuple(const RateMeasure& measure, double t);

// theta_n(t) = n * sum_j m_j * exp(-lambda_j * t); theta(0) = n. Equals the
// mean number of level-t exceedances among n mixture-exponential variables.
double theta(const RateMeasure& measure, double t);

struct SandwichBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// For t >= log(2)/kappa:
//   1 - exp(-exp(-t g(t)) theta(t)) <= sep(t) <= 1 - exp(-2 exp(2 t g(t)) theta(t)).
// Throws std::domain_error below the threshold.
SandwichBounds sandwich_bounds(const RateMeasure& measure, double t,
                               const PerturbationEnvelope& g = PerturbationEnvelope::zero());

}  // namespace sepcut
