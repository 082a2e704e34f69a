#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sepcut/measure.hpp"

namespace sepcut {

// Continuous-time walk on {0,1}^n: coordinate i carries a Poisson clock of
// rate 2*rho[i]; on each incident the coordinate is refreshed to a fair coin.
struct WalkSpec {
  std::int64_t n = 0;
  std::vector<double> rho;
};

WalkSpec make_walk(std::vector<double> rho);

// Measure of the per-coordinate separation rates, lambda_i = 2*rho_i.
RateMeasure walk_measure(const WalkSpec& spec);

// P(max_i T_i > t) with T_i ~ Exp(2 rho_i): exact tuple separation at time t.
double exact_sep_tail(const WalkSpec& spec, double t);

// Tail of the coupling time for the coordinate-wise independent-then-
// synchronous coupling, stationary second copy: each coordinate disagrees
// with probability 1/2 and then couples at rate 2 rho_i:
// 1 - prod_i (1 - 0.5 exp(-2 rho_i t)).
double exact_coupling_tail(const WalkSpec& spec, double t);

// Independent oracle: builds the time-t product kernel row for the start
// state over all 2^n states and maximizes 1 - 2^n P^t(start, y).
// Refuses n > 20.
double brute_force_sep(const WalkSpec& spec, double t,
                       std::span<const std::uint8_t> start);

enum class SimKind { sst, coupling };

// Monte-Carlo sample of strong-stationary or coupling times. Samples are
// indexed by replica and fully determined by (spec, kind, seed, replicas),
// independent of thread count.
class SimResult {
 public:
  SimResult(WalkSpec spec, SimKind kind, std::uint64_t seed,
            std::vector<double> samples);

  const WalkSpec& spec() const { return spec_; }
  SimKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t replicas() const { return static_cast<std::int64_t>(samples_.size()); }
  std::span<const double> samples() const { return samples_; }

  // Fraction of samples strictly above t; non-increasing, right-continuous.
  double survival(double t) const;
  double quantile(double q) const;

 private:
  WalkSpec spec_;
  SimKind kind_;
  std::uint64_t seed_;
  std::vector<double> samples_;
  std::vector<double> sorted_;
};

// threads = 0 picks hardware concurrency. Replica r always consumes its own
// substream, so results do not depend on the partition.
SimResult simulate_sst(const WalkSpec& spec, std::int64_t replicas,
                       std::uint64_t seed, int threads = 0);
SimResult simulate_coupling(const WalkSpec& spec, std::int64_t replicas,
                            std::uint64_t seed, int threads = 0);

// Fixed-start variant: coordinate i starts in disagreement iff disagree[i].
SimResult simulate_coupling_masked(const WalkSpec& spec,
                                   std::span<const std::uint8_t> disagree,
                                   std::int64_t replicas, std::uint64_t seed,
                                   int threads = 0);

// CSV with header replica,time.
void write_samples_csv(const SimResult& result, std::ostream& out);

// JSON with seed, replicas, kind and the 0.5/0.9/0.99 quantiles.
std::string summary_json(const SimResult& result);

}  // namespace sepcut
