#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepcut {

// Thrown when a measure file cannot be parsed; the message carries
// "<name>:<line>:" where a line number is known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RateAtom {
  double rate = 0.0;
  double mass = 0.0;
};

enum class RateQuantize { none, digits12 };

// Discrete probability measure on (0,inf) describing the exponential rates of
// an n-tuple of chains: finitely many atoms (rate, mass), rates strictly
// increasing, masses summing to 1. The tuple dimension n is carried
// separately so masses need not be multiples of 1/n.
//
// Immutable after construction; safe to share across threads.
class RateMeasure {
 public:
  // Validates and canonicalizes: atoms with bitwise-equal rates are merged,
  // then rates must be strictly increasing, positive and finite, and masses
  // positive with sum 1 within 1e-12.
  RateMeasure(std::int64_t n, std::vector<RateAtom> atoms);

  std::int64_t n() const { return n_; }
  std::span<const RateAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  // Smallest and largest rate in the support.
  double kappa() const { return atoms_.front().rate; }
  double max_rate() const { return atoms_.back().rate; }

  // mu(0, lambda]: right-continuous non-decreasing step function.
  double cumulative(double lambda) const;

  // Prefix mass through atom i. Count-built measures store these as exact
  // single divisions prefix_count/n rather than running sums.
  double cumulative_at(std::size_t i) const { return cum_[i]; }

  double total_mass() const { return cum_.back(); }

 private:
  RateMeasure() = default;

  std::int64_t n_ = 0;
  std::vector<RateAtom> atoms_;
  std::vector<double> cum_;

  friend RateMeasure build_measure(std::span<const double>, RateQuantize);
};

// Aggregates a raw list of n coordinate rates into a measure with masses
// count/n. Rates are compared for exact binary equality; pass
// RateQuantize::digits12 to round each rate to 12 significant digits first
// (useful when rates come out of floating-point formulas and near-duplicates
// should merge).
RateMeasure build_measure(std::span<const double> rates,
                          RateQuantize quantize = RateQuantize::none);

// Measure with explicitly given atom masses (not necessarily multiples of
// 1/n). Equal rates are merged.
RateMeasure make_measure(std::int64_t n, std::vector<RateAtom> atoms);

struct ScaledAtom {
  double x = 0.0;    // rate / lambda_star
  double mass = 0.0;  // nu({x})
};

// Rescaling nu of a rate measure by a pivot rate lambda_star:
// nu({x}) = mu({lambda_star * x}) / mu(0, lambda_star]. Satisfies
// nu(0,1] = 1 and has total mass 1/mu(0,lambda_star] in [1, n].
class ScaledMeasure {
 public:
  const RateMeasure& base() const { return base_; }
  double lambda_star() const { return lambda_star_; }
  double beta() const { return beta_; }  // n * mu(0, lambda_star]
  std::span<const ScaledAtom> atoms() const { return atoms_; }

  // nu(0, x]
  double cumulative(double x) const;
  double total_mass() const { return cum_.back(); }

  // Exact round trip: the base measure is stored, not reconstructed.
  const RateMeasure& unscale() const { return base_; }

 private:
  friend ScaledMeasure scale(const RateMeasure&, double);
  explicit ScaledMeasure(RateMeasure base) : base_(std::move(base)) {}

  RateMeasure base_;
  double lambda_star_ = 0.0;
  double beta_ = 0.0;
  std::vector<ScaledAtom> atoms_;
  std::vector<double> cum_;
};

// lambda_star must satisfy mu(0, lambda_star] > 0, i.e. lambda_star >= kappa.
ScaledMeasure scale(const RateMeasure& measure, double lambda_star);

// Measure file ingestion. CSV with header "rate,mass" or "rate,count";
// count files fix n = sum of counts, mass files need n passed in (n_hint).
// JSON: { "n": int, "atoms": [ { "rate": r, "mass": m }, ... ] }.
// Dispatch is by extension (".json" vs anything else = CSV).
RateMeasure read_measure_file(const std::string& path, std::int64_t n_hint = 0);
RateMeasure read_measure_csv(std::istream& in, std::int64_t n_hint,
                             const std::string& name);
RateMeasure read_measure_json(std::istream& in, const std::string& name);

}  // namespace sepcut
