#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sepcut/measure.hpp"
#include "sepcut/rng.hpp"

namespace sepcut {

// Coordinate rates drawn i.i.d.: P(rho = p[k]) = q[k]. p_star is the smallest
// rate value and q_star the total probability sitting on it.
class RandomRateModel {
 public:
  RandomRateModel(std::vector<double> p, std::vector<double> q);

  std::span<const double> p() const { return p_; }
  std::span<const double> q() const { return q_; }
  double p_star() const { return p_star_; }
  double q_star() const { return q_star_; }

  double draw(SplitMix64& rng) const;

 private:
  std::vector<double> p_;
  std::vector<double> q_;
  std::vector<double> cum_q_;
  double p_star_ = 0.0;
  double q_star_ = 0.0;
};

// Limiting separation profile at t = (log n + c)/(2 p_star):
// 1 - exp(-q_star * e^{-c}).
double gumbel_limit(const RandomRateModel& model, double c);

struct AnnealedSep {
  double value = 0.0;
  bool clamped = false;  // inner sum reached 1 (very negative c, small n)
};

// Finite-n separation averaged over the rate draws, evaluated at
// t = (log n + c)/(2 p_star):
// 1 - (1 - sum_k q_k (e^{-c}/n)^{p_k/p_star})^n, in log space.
AnnealedSep annealed_sep(const RandomRateModel& model, std::int64_t n, double c);

struct ExceedanceEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo mean of #{i : V_i > t} where the V_i are n i.i.d. exponentials
// with rates drawn from the measure; targets theta(measure, t).
ExceedanceEstimate exceedance_mean_mc(const RateMeasure& measure, double t,
                                      std::int64_t replicas, std::uint64_t seed);

}  // namespace sepcut
