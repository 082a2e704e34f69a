#include "sepcut/separation.hpp"

#include <cmath>
#include <stdexcept>

namespace sepcut {

namespace {

double clamp01(double x) {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

}  // namespace

PerturbationEnvelope PerturbationEnvelope::rational_decay(double amplitude) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw std::invalid_argument("envelope amplitude must be finite and >= 0");
  return PerturbationEnvelope(amplitude);
}

double sep_single(double rate, double t) {
  return std::exp(-rate * t);
}

double sep_product(std::span<const double> seps) {
  double acc = 0.0;  // sum of log(1 - s_i)
  for (double s : seps) {
    if (s >= 1.0) return 1.0;
    acc += std::log1p(-s);
  }
  return clamp01(-std::expm1(acc));
}

double sep_tuple(const RateMeasure& measure, double t) {
  if (t <= 0.0) return 1.0;
  double acc = 0.0;  // integral of log(1 - e^{-t lambda}) against mu
  for (const RateAtom& a : measure.atoms()) {
    const double x = std::exp(-t * a.rate);
    if (x >= 1.0) return 1.0;
    acc += a.mass * std::log1p(-x);
  }
  return clamp01(-std::expm1(static_cast<double>(measure.n()) * acc));
}

double theta(const RateMeasure& measure, double t) {
  double acc = 0.0;
  for (const RateAtom& a : measure.atoms()) acc += a.mass * std::exp(-t * a.rate);
  return static_cast<double>(measure.n()) * acc;
}

SandwichBounds sandwich_bounds(const RateMeasure& measure, double t,
                               const PerturbationEnvelope& g) {
  const double threshold = std::log(2.0) / measure.kappa();
  if (t < threshold)
    throw std::domain_error("sandwich_bounds: t below log(2)/kappa");
  const double th = theta(measure, t);
  const double gt = g(t);
  SandwichBounds b;
  b.lower = clamp01(-std::expm1(-std::exp(-t * gt) * th));
  b.upper = clamp01(-std::expm1(-2.0 * std::exp(2.0 * t * gt) * th));
  return b;
}

}  // namespace sepcut
