#include "sepcut/evt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sepcut/parallel.hpp"

namespace sepcut {

RandomRateModel::RandomRateModel(std::vector<double> p, std::vector<double> q)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.empty() || p_.size() != q_.size())
    throw std::invalid_argument("rate model: p and q must be equal-length, nonempty");
  double qsum = 0.0;
  for (std::size_t k = 0; k < p_.size(); ++k) {
    if (!(p_[k] > 0.0) || !std::isfinite(p_[k]))
      throw std::invalid_argument("rate model: p[" + std::to_string(k) + "] must be positive and finite");
    if (!(q_[k] > 0.0) || !std::isfinite(q_[k]))
      throw std::invalid_argument("rate model: q[" + std::to_string(k) + "] must be positive and finite");
    qsum += q_[k];
  }
  if (std::abs(qsum - 1.0) > 1e-12)
    throw std::invalid_argument("rate model: q sums to " + std::to_string(qsum) +
                                ", expected 1 within 1e-12");

  p_star_ = *std::min_element(p_.begin(), p_.end());
  for (std::size_t k = 0; k < p_.size(); ++k)
    if (p_[k] <= p_star_ * (1.0 + 1e-12)) q_star_ += q_[k];

  cum_q_.resize(q_.size());
  double run = 0.0;
  for (std::size_t k = 0; k < q_.size(); ++k) {
    run += q_[k];
    cum_q_[k] = run;
  }
  cum_q_.back() = 1.0;
}

double RandomRateModel::draw(SplitMix64& rng) const {
  const double u = rng.next_unit_open();
  const auto it = std::lower_bound(cum_q_.begin(), cum_q_.end(), u);
  const auto k = static_cast<std::size_t>(it - cum_q_.begin());
  return p_[std::min(k, p_.size() - 1)];
}

double gumbel_limit(const RandomRateModel& model, double c) {
  return -std::expm1(-model.q_star() * std::exp(-c));
}

AnnealedSep annealed_sep(const RandomRateModel& model, std::int64_t n, double c) {
  if (n < 1) throw std::invalid_argument("annealed_sep: n must be >= 1");
  const double log_base = -c - std::log(static_cast<double>(n));  // log(e^{-c}/n)
  double inner = 0.0;
  for (std::size_t k = 0; k < model.p().size(); ++k)
    inner += model.q()[k] * std::exp(model.p()[k] / model.p_star() * log_base);

  AnnealedSep out;
  if (inner >= 1.0) {
    out.value = 1.0;
    out.clamped = true;
    return out;
  }
  const double v = -std::expm1(static_cast<double>(n) * std::log1p(-inner));
  out.value = std::min(1.0, std::max(0.0, v));
  return out;
}

ExceedanceEstimate exceedance_mean_mc(const RateMeasure& measure, double t,
                                      std::int64_t replicas, std::uint64_t seed) {
  if (t < 0.0) throw std::invalid_argument("exceedance_mean_mc: t must be >= 0");
  if (replicas < 1) throw std::invalid_argument("exceedance_mean_mc: replicas must be >= 1");

  // inverse-CDF table for the rate mixture
  const auto atoms = measure.atoms();
  std::vector<double> cum(measure.size());
  for (std::size_t i = 0; i < measure.size(); ++i) cum[i] = measure.cumulative_at(i);
  cum.back() = std::max(cum.back(), 1.0);

  const std::int64_t n = measure.n();
  std::vector<double> counts(static_cast<std::size_t>(replicas));
  for_replicas(replicas, 0, [&](std::int64_t r) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(r));
    std::int64_t exceed = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double u = rng.next_unit_open();
      const auto it = std::lower_bound(cum.begin(), cum.end(), u);
      const auto k = std::min(static_cast<std::size_t>(it - cum.begin()),
                              measure.size() - 1);
      if (rng.next_exponential(atoms[k].rate) > t) ++exceed;
    }
    counts[static_cast<std::size_t>(r)] = static_cast<double>(exceed);
  });

  ExceedanceEstimate e;
  double sum = 0.0;
  for (double c : counts) sum += c;
  e.estimate = sum / static_cast<double>(replicas);
  if (replicas > 1) {
    double ss = 0.0;
    for (double c : counts) ss += (c - e.estimate) * (c - e.estimate);
    e.std_error = std::sqrt(ss / (static_cast<double>(replicas) *
                                  static_cast<double>(replicas - 1)));
  }
  return e;
}

}  // namespace sepcut
