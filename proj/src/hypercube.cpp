#include "sepcut/hypercube.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "sepcut/format.hpp"
#include "sepcut/parallel.hpp"
#include "sepcut/rng.hpp"

namespace sepcut {

WalkSpec make_walk(std::vector<double> rho) {
  if (rho.empty()) throw std::invalid_argument("walk: empty rate list");
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (!(rho[i] > 0.0) || !std::isfinite(rho[i]))
      throw std::invalid_argument("walk: rho at index " + std::to_string(i) +
                                  " must be positive and finite");
  WalkSpec s;
  s.n = static_cast<std::int64_t>(rho.size());
  s.rho = std::move(rho);
  return s;
}

RateMeasure walk_measure(const WalkSpec& spec) {
  std::vector<double> rates(spec.rho.size());
  for (std::size_t i = 0; i < spec.rho.size(); ++i) rates[i] = 2.0 * spec.rho[i];
  return build_measure(rates);
}

namespace {

double clamp01(double x) {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

double one_minus_product(const std::vector<double>& rho, double t, double weight) {
  // 1 - prod_i (1 - weight * e^{-2 rho_i t})
  double acc = 0.0;
  for (double r : rho) {
    const double x = weight * std::exp(-2.0 * r * t);
    if (x >= 1.0) return 1.0;
    acc += std::log1p(-x);
  }
  return clamp01(-std::expm1(acc));
}

void check_replicas(std::int64_t replicas) {
  if (replicas < 1) throw std::invalid_argument("simulate: replicas must be >= 1");
}

}  // namespace

double exact_sep_tail(const WalkSpec& spec, double t) {
  return one_minus_product(spec.rho, t, 1.0);
}

double exact_coupling_tail(const WalkSpec& spec, double t) {
  return one_minus_product(spec.rho, t, 0.5);
}

double brute_force_sep(const WalkSpec& spec, double t,
                       std::span<const std::uint8_t> start) {
  if (spec.n > 20)
    throw std::invalid_argument("brute_force_sep: refusing n > 20");
  if (static_cast<std::int64_t>(start.size()) != spec.n)
    throw std::invalid_argument("brute_force_sep: start length != n");
  const int n = static_cast<int>(spec.n);

  // Per-coordinate 2x2 kernel: stay probability (1 + e^{-2 rho t}) / 2.
  std::vector<double> stay(spec.rho.size());
  for (std::size_t i = 0; i < spec.rho.size(); ++i)
    stay[i] = 0.5 * (1.0 + std::exp(-2.0 * spec.rho[i] * t));

  const double states = std::ldexp(1.0, n);  // 2^n
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint32_t y = 0; y < (1u << n); ++y) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      const bool same = ((y >> i) & 1u) == (start[static_cast<std::size_t>(i)] != 0);
      p *= same ? stay[static_cast<std::size_t>(i)] : 1.0 - stay[static_cast<std::size_t>(i)];
    }
    worst = std::max(worst, 1.0 - states * p);
  }
  return clamp01(worst);
}

SimResult::SimResult(WalkSpec spec, SimKind kind, std::uint64_t seed,
                     std::vector<double> samples)
    : spec_(std::move(spec)), kind_(kind), seed_(seed),
      samples_(std::move(samples)), sorted_(samples_) {
  std::sort(sorted_.begin(), sorted_.end());
}

double SimResult::survival(double t) const {
  const auto above = sorted_.end() -
                     std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(above) / static_cast<double>(sorted_.size());
}

double SimResult::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q outside [0,1]");
  const double pos = q * static_cast<double>(sorted_.size());
  auto idx = static_cast<std::size_t>(std::ceil(pos));
  if (idx > 0) --idx;
  if (idx >= sorted_.size()) idx = sorted_.size() - 1;
  return sorted_[idx];
}

SimResult simulate_sst(const WalkSpec& spec, std::int64_t replicas,
                       std::uint64_t seed, int threads) {
  check_replicas(replicas);
  std::vector<double> samples(static_cast<std::size_t>(replicas));
  for_replicas(replicas, threads, [&](std::int64_t r) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(r));
    double worst = 0.0;
    for (double rho : spec.rho)
      worst = std::max(worst, rng.next_exponential(2.0 * rho));
    samples[static_cast<std::size_t>(r)] = worst;
  });
  return SimResult(spec, SimKind::sst, seed, std::move(samples));
}

SimResult simulate_coupling(const WalkSpec& spec, std::int64_t replicas,
                            std::uint64_t seed, int threads) {
  check_replicas(replicas);
  std::vector<double> samples(static_cast<std::size_t>(replicas));
  for_replicas(replicas, threads, [&](std::int64_t r) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(r));
    double worst = 0.0;
    for (double rho : spec.rho)
      if (rng.next_coin())  // stationary start: disagree with probability 1/2
        worst = std::max(worst, rng.next_exponential(2.0 * rho));
    samples[static_cast<std::size_t>(r)] = worst;
  });
  return SimResult(spec, SimKind::coupling, seed, std::move(samples));
}

SimResult simulate_coupling_masked(const WalkSpec& spec,
                                   std::span<const std::uint8_t> disagree,
                                   std::int64_t replicas, std::uint64_t seed,
                                   int threads) {
  check_replicas(replicas);
  if (static_cast<std::int64_t>(disagree.size()) != spec.n)
    throw std::invalid_argument("simulate_coupling_masked: mask length != n");
  std::vector<double> samples(static_cast<std::size_t>(replicas));
  for_replicas(replicas, threads, [&](std::int64_t r) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(r));
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.rho.size(); ++i)
      if (disagree[i])
        worst = std::max(worst, rng.next_exponential(2.0 * spec.rho[i]));
    samples[static_cast<std::size_t>(r)] = worst;
  });
  return SimResult(spec, SimKind::coupling, seed, std::move(samples));
}

void write_samples_csv(const SimResult& result, std::ostream& out) {
  out << "replica,time\n";
  const auto samples = result.samples();
  for (std::size_t r = 0; r < samples.size(); ++r)
    out << r << ',' << g10(samples[r]) << '\n';
}

std::string summary_json(const SimResult& result) {
  nlohmann::ordered_json j;
  j["kind"] = result.kind() == SimKind::sst ? "sst" : "coupling";
  j["seed"] = result.seed();
  j["replicas"] = result.replicas();
  j["quantiles"]["0.5"] = round10(result.quantile(0.5));
  j["quantiles"]["0.9"] = round10(result.quantile(0.9));
  j["quantiles"]["0.99"] = round10(result.quantile(0.99));
  return j.dump();
}

}  // namespace sepcut
