#include "sepcut/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sepcut/rng.hpp"

namespace sepcut {

FamilyDescriptor FamilyDescriptor::symmetric() {
  return FamilyDescriptor{};
}

FamilyDescriptor FamilyDescriptor::odd_windows() {
  FamilyDescriptor f;
  f.kind = FamilyKind::odd_windows;
  return f;
}

FamilyDescriptor FamilyDescriptor::random_rates(RandomRateModel model,
                                                std::uint64_t seed) {
  FamilyDescriptor f;
  f.kind = FamilyKind::random_rates;
  f.model = std::move(model);
  f.seed = seed;
  return f;
}

FamilyDescriptor FamilyDescriptor::from_file(std::string path) {
  FamilyDescriptor f;
  f.kind = FamilyKind::from_file;
  f.path = std::move(path);
  return f;
}

std::string FamilyDescriptor::name() const {
  switch (kind) {
    case FamilyKind::symmetric: return "symmetric";
    case FamilyKind::odd_windows: return "odd_windows";
    case FamilyKind::random_rates: return "random_rates";
    case FamilyKind::from_file: return "from_file";
  }
  return "?";
}

FamilyInstance generate(const FamilyDescriptor& family, std::int64_t n) {
  switch (family.kind) {
    case FamilyKind::symmetric: {
      if (n < 1) throw std::domain_error("symmetric family: n must be >= 1");
      WalkSpec walk = make_walk(std::vector<double>(static_cast<std::size_t>(n), 1.0));
      return FamilyInstance{walk_measure(walk), std::move(walk)};
    }
    case FamilyKind::odd_windows: {
      // rho_i = max{1, 2 log_n i}  =>  rates max{2, 4 ln i / ln n} in [2,4].
      // log_n i stays unquantized double precision; cumulative() then
      // reproduces the floor(n^{lambda/4})/n counts atom-exactly.
      if (n < 2) throw std::domain_error("odd_windows family: n must be >= 2");
      const double log_n = std::log(static_cast<double>(n));
      std::vector<double> rho(static_cast<std::size_t>(n));
      for (std::int64_t i = 1; i <= n; ++i)
        rho[static_cast<std::size_t>(i - 1)] =
            std::max(1.0, 2.0 * std::log(static_cast<double>(i)) / log_n);
      WalkSpec walk = make_walk(std::move(rho));
      return FamilyInstance{walk_measure(walk), std::move(walk)};
    }
    case FamilyKind::random_rates: {
      if (n < 1) throw std::domain_error("random_rates family: n must be >= 1");
      if (!family.model) throw std::invalid_argument("random_rates family: no model");
      SplitMix64 rng = SplitMix64::substream(family.seed, 0);
      std::vector<double> rho(static_cast<std::size_t>(n));
      for (auto& r : rho) r = family.model->draw(rng);
      WalkSpec walk = make_walk(std::move(rho));
      return FamilyInstance{walk_measure(walk), std::move(walk)};
    }
    case FamilyKind::from_file:
      return FamilyInstance{read_measure_file(family.path, n), std::nullopt};
  }
  throw std::logic_error("generate: unknown family kind");
}

namespace {

std::string classify_trend(const std::vector<double>& v) {
  if (v.size() < 2) return "bounded";
  bool constant = true, increasing = true, decreasing = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double tol = 1e-9 * std::max(1.0, std::abs(v[0]));
    if (std::abs(v[i] - v[0]) > tol) constant = false;
    if (!(v[i] > v[i - 1])) increasing = false;
    if (!(v[i] < v[i - 1])) decreasing = false;
  }
  if (constant) return "bounded";
  if (increasing) return "increasing";
  if (decreasing) return "decreasing";
  return "mixed";
}

}  // namespace

FamilyDiagnostics family_diagnostics(const FamilyDescriptor& family,
                                     std::span<const std::int64_t> n_list,
                                     std::span<const double> c_grid,
                                     WindowChoice window, double custom_b) {
  if (n_list.empty()) throw std::invalid_argument("family_diagnostics: empty n list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1)
      throw std::invalid_argument("family_diagnostics: n must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("family_diagnostics: n list must be strictly increasing");
  }

  FamilyDiagnostics d;
  d.n_list.assign(n_list.begin(), n_list.end());
  d.c_grid.assign(c_grid.begin(), c_grid.end());
  std::sort(d.c_grid.begin(), d.c_grid.end());
  d.window = window;
  d.custom_b = custom_b;
  for (std::int64_t n : n_list) {
    FamilyInstance inst = [&] {
      try {
        return generate(family, n);
      } catch (const std::exception& e) {
        throw std::runtime_error("family_diagnostics: n=" + std::to_string(n) +
                                 ": " + e.what());
      }
    }();
    CutoffReport report = cutoff_time(inst.measure);
    d.tau_kappa.push_back(report.tau_kappa);

    std::vector<double> row;
    if (!d.c_grid.empty()) {
      const SeparationProfile p = profile(inst.measure, window, d.c_grid, custom_b);
      // rows with t < 0 were dropped from the low end of the ascending grid;
      // mark them NaN so columns stay aligned
      row.assign(d.c_grid.size(), std::numeric_limits<double>::quiet_NaN());
      const std::size_t offset = d.c_grid.size() - p.rows.size();
      for (std::size_t j = 0; j < p.rows.size(); ++j)
        row[offset + j] = p.rows[j].sep;
    }
    d.sep.push_back(std::move(row));
    d.reports.push_back(std::move(report));
  }
  d.trend = classify_trend(d.tau_kappa);
  return d;
}

}  // namespace sepcut
