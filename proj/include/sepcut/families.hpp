#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepcut/cutoff.hpp"
#include "sepcut/evt.hpp"
#include "sepcut/hypercube.hpp"
#include "sepcut/measure.hpp"

namespace sepcut {

enum class FamilyKind { symmetric, odd_windows, random_rates, from_file };

// Preset measure/walk families:
//   symmetric     all coordinates at rho = 1, measure = delta_2
//   odd_windows   rho_i = max{1, 2 log_n i}, rates in [2,4] with kappa = 2
//   random_rates  n i.i.d. coordinate rates from a RandomRateModel
//   from_file     measure read from a rate,mass / rate,count CSV or JSON file
struct FamilyDescriptor {
  FamilyKind kind = FamilyKind::symmetric;
  std::optional<RandomRateModel> model;  // random_rates only
  std::uint64_t seed = 0;                // random_rates only
  std::string path;                      // from_file only

  static FamilyDescriptor symmetric();
  static FamilyDescriptor odd_windows();
  static FamilyDescriptor random_rates(RandomRateModel model, std::uint64_t seed);
  static FamilyDescriptor from_file(std::string path);

  std::string name() const;
};

struct FamilyInstance {
  RateMeasure measure;
  // Present when the family defines per-coordinate walk rates (everything
  // except from_file).
  std::optional<WalkSpec> walk;
};

// Deterministic per (family, n, seed). For from_file the file's own n wins
// when the format pins it; the n argument is then ignored.
FamilyInstance generate(const FamilyDescriptor& family, std::int64_t n);

struct FamilyDiagnostics {
  std::vector<std::int64_t> n_list;
  std::vector<CutoffReport> reports;
  std::vector<double> tau_kappa;
  // Trend of tau_n * kappa_n over n_list, reported as data:
  // "increasing", "decreasing", "bounded" (constant within 1e-9 relative) or
  // "mixed". Never a claim about the n -> infinity limit.
  std::string trend;
  std::vector<double> c_grid;
  double custom_b = 0.0;
  WindowChoice window = WindowChoice::unit;
  // sep(tau_n + c * b_n) with b_n from the window choice; [n index][c index].
  std::vector<std::vector<double>> sep;
};

FamilyDiagnostics family_diagnostics(const FamilyDescriptor& family,
                                     std::span<const std::int64_t> n_list,
                                     std::span<const double> c_grid,
                                     WindowChoice window = WindowChoice::unit,
                                     double custom_b = 0.0);

}  // namespace sepcut
