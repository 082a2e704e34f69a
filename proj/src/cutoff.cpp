#include "sepcut/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sepcut/format.hpp"

namespace sepcut {

double lambert_w(double x) {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("lambert_w: argument must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < 0.5) {
    // series around 0
    w = x * (1.0 + x * (-1.0 + x * (1.5 - 8.0 / 3.0 * x)));
  } else if (x < 4.0) {
    w = 0.5 + 0.25 * (x - 1.0);
  } else {
    const double l = std::log(x);
    const double ll = std::log(l);
    w = l - ll + ll / l;
  }

  // Halley iteration; cubic convergence from any of the guesses above.
  for (int i = 0; i < 50; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double step = f / denom;
    const double next = w - step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w)) || next == w) {
      w = next;
      break;
    }
    w = next;
  }
  return w;
}

CutoffReport cutoff_time(const RateMeasure& measure) {
  const auto atoms = measure.atoms();
  const double n = static_cast<double>(measure.n());

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> value(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    value[i] = std::log(n * measure.cumulative_at(i)) / atoms[i].rate;
    if (value[i] > best) best = value[i];
  }

  // smallest atom within the tie tolerance of the maximum
  const double tol = 1e-9 * std::max(1.0, std::abs(best));
  std::size_t star = 0;
  while (star < atoms.size() && value[star] < best - tol) ++star;

  CutoffReport r;
  r.n = measure.n();
  r.lambda_star = atoms[star].rate;
  r.tau = value[star];
  r.kappa = measure.kappa();
  r.beta = n * measure.cumulative_at(star);
  r.tau_kappa = r.tau * r.kappa;
  r.b_left = 1.0 / r.lambda_star;
  if (r.tau_kappa > 0.0) r.b_right = lambert_w(r.tau_kappa) / r.kappa;
  r.kappa_mass_below_one = n * measure.cumulative_at(0) < 1.0;
  return r;
}

std::string to_json(const CutoffReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["tau"] = round10(report.tau);
  j["lambda_star"] = round10(report.lambda_star);
  j["kappa"] = round10(report.kappa);
  j["beta"] = round10(report.beta);
  j["tau_kappa"] = round10(report.tau_kappa);
  j["b_left"] = round10(report.b_left);
  if (report.b_right)
    j["b_right"] = round10(*report.b_right);
  else
    j["b_right"] = nullptr;
  if (report.kappa_mass_below_one)
    j["flags"] = nlohmann::ordered_json::array({"kappa_mass_below_one"});
  return j.dump();
}

SeparationProfile profile(const RateMeasure& measure, WindowChoice window,
                          std::span<const double> c_grid, double custom_b) {
  if (c_grid.empty()) throw std::invalid_argument("profile: empty c grid");

  SeparationProfile p;
  p.report = cutoff_time(measure);
  switch (window) {
    case WindowChoice::left:
      p.window = p.report.b_left;
      break;
    case WindowChoice::right:
      if (!p.report.b_right)
        throw std::domain_error("profile: right window undefined (tau*kappa <= 0)");
      p.window = *p.report.b_right;
      break;
    case WindowChoice::unit:
      p.window = 1.0;
      break;
    case WindowChoice::custom:
      if (!(custom_b > 0.0)) throw std::invalid_argument("profile: custom window must be > 0");
      p.window = custom_b;
      break;
  }

  std::vector<double> grid(c_grid.begin(), c_grid.end());
  std::sort(grid.begin(), grid.end());
  const double bound_threshold = std::log(2.0) / measure.kappa();
  for (double c : grid) {
    const double t = p.report.tau + c * p.window;
    if (t < 0.0) {
      ++p.dropped_rows;
      continue;
    }
    ProfileRow row;
    row.c = c;
    row.t = t;
    row.sep = sep_tuple(measure, t);
    if (t >= bound_threshold) {
      const SandwichBounds b = sandwich_bounds(measure, t);
      row.lower = b.lower;
      row.upper = b.upper;
    }
    p.rows.push_back(row);
  }
  return p;
}

std::string to_csv(const SeparationProfile& profile) {
  std::ostringstream out;
  out << "c,t,sep,lower,upper\n";
  for (const ProfileRow& r : profile.rows) {
    out << g10(r.c) << ',' << g10(r.t) << ',' << g10(r.sep) << ',';
    if (r.lower) out << g10(*r.lower);
    out << ',';
    if (r.upper) out << g10(*r.upper);
    out << '\n';
  }
  return out.str();
}

}  // namespace sepcut
