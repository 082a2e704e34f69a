// sepcut: command-line front end. Emits CSV/JSON for offline plotting.
// Exit codes: 0 ok, 2 bad configuration / unreadable input, 1 computation error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sepcut/cutoff.hpp"
#include "sepcut/evt.hpp"
#include "sepcut/families.hpp"
#include "sepcut/format.hpp"
#include "sepcut/hypercube.hpp"
#include "sepcut/measure.hpp"
#include "sepcut/separation.hpp"

namespace {

using namespace sepcut;

struct Options {
  std::string family;
  std::string measure_file;
  std::int64_t n = 0;
  std::vector<std::int64_t> n_list;
  std::vector<double> model_p;
  std::vector<double> model_q;
  std::uint64_t model_seed = 0;
  std::string c_spec;
  std::string t_spec;
  std::string window = "unit";
  double window_size = 0.0;
  double g_amplitude = 0.0;
  std::string kind = "sst";
  std::int64_t replicas = 10000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string survival_out;
  std::string format;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string default_out(const std::string& name) {
  const char* dir = std::getenv("SEPCUT_OUT_DIR");
  if (dir != nullptr && *dir != '\0') return std::string(dir) + "/" + name;
  return name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

// Measure files pin their own n (count/JSON formats), so --n may be omitted
// for them; 0 is passed through and ignored by generate().
std::vector<std::int64_t> resolve_n_list(const Options& opt,
                                         bool file_defaults = false) {
  if (!opt.n_list.empty()) return opt.n_list;
  if (opt.n >= 1) return {opt.n};
  if (file_defaults && !opt.measure_file.empty()) return {0};
  throw ConfigError("need --n or --n-list");
}

FamilyDescriptor resolve_family(const Options& opt, bool allow_file = true) {
  const bool have_family = !opt.family.empty();
  const bool have_file = !opt.measure_file.empty();
  if (have_family == have_file)
    throw ConfigError("need exactly one measure source (--family or --measure-file)");
  if (have_file) {
    if (!allow_file)
      throw ConfigError("this subcommand needs per-coordinate rates; use --family");
    return FamilyDescriptor::from_file(opt.measure_file);
  }
  if (opt.family == "symmetric") return FamilyDescriptor::symmetric();
  if (opt.family == "odd_windows") return FamilyDescriptor::odd_windows();
  if (opt.family == "random_rates") {
    if (opt.model_p.empty() || opt.model_q.empty())
      throw ConfigError("random_rates needs --p and --q");
    return FamilyDescriptor::random_rates(RandomRateModel(opt.model_p, opt.model_q),
                                          opt.model_seed);
  }
  throw ConfigError("unknown family '" + opt.family + "'");
}

WindowChoice resolve_window(const Options& opt) {
  if (opt.window == "left") return WindowChoice::left;
  if (opt.window == "right") return WindowChoice::right;
  if (opt.window == "unit") return WindowChoice::unit;
  if (opt.window == "custom") {
    if (!(opt.window_size > 0.0))
      throw ConfigError("--window custom needs --window-size > 0");
    return WindowChoice::custom;
  }
  throw ConfigError("unknown window '" + opt.window + "'");
}

std::vector<double> resolve_grid(const std::string& spec, const char* flag) {
  if (spec.empty()) throw ConfigError(std::string("need ") + flag + " min:max:step");
  try {
    return parse_grid(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void check_format(const Options& opt, std::initializer_list<const char*> allowed) {
  if (opt.format.empty()) return;
  for (const char* a : allowed)
    if (opt.format == a) return;
  throw ConfigError("unsupported --format '" + opt.format + "' for this subcommand");
}

// --- subcommands ------------------------------------------------------------

int run_cutoff(const Options& opt) {
  check_format(opt, {"json"});
  const FamilyDescriptor family = resolve_family(opt);
  const std::vector<std::int64_t> ns = resolve_n_list(opt, true);

  std::string json;
  if (ns.size() == 1) {
    json = to_json(cutoff_time(generate(family, ns[0]).measure));
  } else {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (i > 0) out << ',';
      out << to_json(cutoff_time(generate(family, ns[i]).measure));
    }
    out << ']';
    json = out.str();
  }
  json += '\n';

  const std::string path = opt.out.empty() ? default_out("cutoff.json") : opt.out;
  write_file(path, json);
  std::cout << json;
  return 0;
}

int run_profile(const Options& opt) {
  check_format(opt, {"csv"});
  const FamilyDescriptor family = resolve_family(opt);
  const std::vector<std::int64_t> ns = resolve_n_list(opt, true);
  if (ns.size() != 1) throw ConfigError("profile takes a single --n");
  const std::vector<double> grid = resolve_grid(opt.c_spec, "--c");

  const FamilyInstance inst = generate(family, ns[0]);
  const SeparationProfile p =
      profile(inst.measure, resolve_window(opt), grid, opt.window_size);

  const std::string path = opt.out.empty() ? default_out("profile.csv") : opt.out;
  write_file(path, to_csv(p));
  std::cout << "wrote " << path << " (" << p.rows.size() << " rows, "
            << p.dropped_rows << " dropped; tau=" << g10(p.report.tau)
            << " b=" << g10(p.window) << ")\n";
  return 0;
}

int run_bounds(const Options& opt) {
  check_format(opt, {"csv"});
  const FamilyDescriptor family = resolve_family(opt);
  const std::vector<std::int64_t> ns = resolve_n_list(opt, true);
  if (ns.size() != 1) throw ConfigError("bounds takes a single --n");
  const std::vector<double> grid = resolve_grid(opt.t_spec, "--t");

  const RateMeasure measure = generate(family, ns[0]).measure;
  const PerturbationEnvelope g = opt.g_amplitude == 0.0
                                     ? PerturbationEnvelope::zero()
                                     : PerturbationEnvelope::rational_decay(opt.g_amplitude);
  const double threshold = std::log(2.0) / measure.kappa();

  std::ostringstream csv;
  csv << "t,sep,lower,upper\n";
  for (double t : grid) {
    if (t < 0.0) continue;
    csv << g10(t) << ',';
    if (g.is_zero()) csv << g10(sep_tuple(measure, t));  // exact only when g == 0
    csv << ',';
    if (t >= threshold) {
      const SandwichBounds b = sandwich_bounds(measure, t, g);
      csv << g10(b.lower) << ',' << g10(b.upper);
    } else {
      csv << ',';
    }
    csv << '\n';
  }

  const std::string path = opt.out.empty() ? default_out("bounds.csv") : opt.out;
  write_file(path, csv.str());
  std::cout << "wrote " << path << " (" << grid.size() << " grid points)\n";
  return 0;
}

// Smallest t with tail(t) <= level, by bisection on a monotone tail.
template <typename Tail>
double crossing_time(const Tail& tail, double level, double hi_start) {
  double lo = 0.0, hi = hi_start;
  while (tail(hi) > level) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int run_simulate(const Options& opt) {
  check_format(opt, {"csv", "json"});
  const FamilyDescriptor family = resolve_family(opt, /*allow_file=*/false);
  const std::vector<std::int64_t> ns = resolve_n_list(opt);
  if (ns.size() != 1) throw ConfigError("simulate takes a single --n");
  if (opt.replicas < 1) throw ConfigError("--replicas must be >= 1");
  if (opt.kind != "sst" && opt.kind != "coupling")
    throw ConfigError("--kind must be sst or coupling");

  const FamilyInstance inst = generate(family, ns[0]);
  const WalkSpec& walk = *inst.walk;
  const bool sst = opt.kind == "sst";
  const SimResult result = sst
      ? simulate_sst(walk, opt.replicas, opt.seed, opt.threads)
      : simulate_coupling(walk, opt.replicas, opt.seed, opt.threads);

  const auto exact = [&](double t) {
    return sst ? exact_sep_tail(walk, t) : exact_coupling_tail(walk, t);
  };

  // survival comparison grid: 200 points up to the 1e-3 tail crossing
  std::vector<double> grid;
  if (!opt.t_spec.empty()) {
    grid = resolve_grid(opt.t_spec, "--t");
  } else {
    const double hi = crossing_time(exact, 1e-3, 1.0);
    for (int i = 0; i < 200; ++i) grid.push_back(hi * i / 199.0);
  }
  double sup_dist = 0.0;
  for (double t : grid)
    sup_dist = std::max(sup_dist, std::abs(result.survival(t) - exact(t)));
  const double dkw99 =
      std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(opt.replicas)));

  std::string path = opt.out;
  if (opt.format == "json") {
    if (path.empty()) path = default_out("simulate.json");
    write_file(path, summary_json(result) + "\n");
  } else {
    if (path.empty()) path = default_out("simulate.csv");
    std::ostringstream csv;
    write_samples_csv(result, csv);
    write_file(path, csv.str());
  }
  if (!opt.survival_out.empty()) {
    std::ostringstream csv;
    csv << "t,empirical,exact\n";
    for (double t : grid)
      csv << g10(t) << ',' << g10(result.survival(t)) << ',' << g10(exact(t)) << '\n';
    write_file(opt.survival_out, csv.str());
  }

  std::cout << "kind=" << opt.kind << " n=" << walk.n << " replicas=" << opt.replicas
            << " seed=" << opt.seed << " sup_dist=" << g10(sup_dist)
            << " dkw99=" << g10(dkw99) << " wrote " << path << "\n";
  return 0;
}

int run_evt(const Options& opt) {
  check_format(opt, {"csv"});
  if (opt.model_p.empty() || opt.model_q.empty())
    throw ConfigError("evt needs --p and --q");
  const RandomRateModel model(opt.model_p, opt.model_q);
  const std::vector<std::int64_t> ns = resolve_n_list(opt);
  const std::vector<double> grid = resolve_grid(opt.c_spec, "--c");

  std::ostringstream csv;
  csv << "n,c,annealed,limit\n";
  int clamped = 0;
  for (std::int64_t n : ns) {
    for (double c : grid) {
      const AnnealedSep a = annealed_sep(model, n, c);
      if (a.clamped) ++clamped;
      csv << n << ',' << g10(c) << ',' << g10(a.value) << ','
          << g10(gumbel_limit(model, c)) << '\n';
    }
  }
  const std::string path = opt.out.empty() ? default_out("evt.csv") : opt.out;
  write_file(path, csv.str());
  if (clamped > 0)
    std::cerr << "warning: " << clamped << " grid points clamped to 1 (inner sum >= 1)\n";
  std::cout << "wrote " << path << " (" << ns.size() * grid.size() << " rows)\n";
  return 0;
}

int run_diagnose(const Options& opt) {
  check_format(opt, {"csv"});
  const FamilyDescriptor family = resolve_family(opt);
  const std::vector<std::int64_t> ns = resolve_n_list(opt);
  std::vector<double> grid;
  if (!opt.c_spec.empty()) grid = resolve_grid(opt.c_spec, "--c");

  const FamilyDiagnostics d =
      family_diagnostics(family, ns, grid, resolve_window(opt), opt.window_size);

  std::ostringstream csv;
  csv << "n,tau,lambda_star,kappa,beta,tau_kappa,b_left,b_right";
  for (double c : d.c_grid) csv << ",sep[c=" << g10(c) << ']';
  csv << '\n';
  for (std::size_t i = 0; i < d.reports.size(); ++i) {
    const CutoffReport& r = d.reports[i];
    csv << r.n << ',' << g10(r.tau) << ',' << g10(r.lambda_star) << ','
        << g10(r.kappa) << ',' << g10(r.beta) << ',' << g10(r.tau_kappa) << ','
        << g10(r.b_left) << ',';
    if (r.b_right) csv << g10(*r.b_right);
    for (double s : d.sep[i]) {
      csv << ',';
      if (!std::isnan(s)) csv << g10(s);
    }
    csv << '\n';
  }

  const std::string path = opt.out.empty() ? default_out("diagnose.csv") : opt.out;
  write_file(path, csv.str());
  std::cout << "tau_kappa trend: " << d.trend << " [";
  for (std::size_t i = 0; i < d.tau_kappa.size(); ++i)
    std::cout << (i ? ", " : "") << g10(d.tau_kappa[i]);
  std::cout << "]\nwrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"separation / coupling cutoff toolkit for tuples of independent chains"};
  app.require_subcommand(1);

  Options opt;
  int (*runner)(const Options&) = nullptr;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--family", opt.family, "symmetric | odd_windows | random_rates");
    cmd->add_option("--measure-file", opt.measure_file, "measure CSV/JSON file");
    cmd->add_option("--n", opt.n, "tuple dimension");
    cmd->add_option("--n-list", opt.n_list, "comma-separated dimensions")->delimiter(',');
    cmd->add_option("--p", opt.model_p, "model rate values")->delimiter(',');
    cmd->add_option("--q", opt.model_q, "model rate probabilities")->delimiter(',');
    cmd->add_option("--model-seed", opt.model_seed, "seed for random_rates draws");
    cmd->add_option("--out", opt.out, "output path (default $SEPCUT_OUT_DIR/<cmd>.<ext>)");
    cmd->add_option("--format", opt.format, "csv | json");
  };

  CLI::App* cutoff = app.add_subcommand("cutoff", "cutoff report as JSON");
  add_common(cutoff);
  cutoff->callback([&] { runner = run_cutoff; });

  CLI::App* prof = app.add_subcommand("profile", "separation profile around tau as CSV");
  add_common(prof);
  prof->add_option("--c", opt.c_spec, "c grid min:max:step");
  prof->add_option("--window", opt.window, "left | right | unit | custom");
  prof->add_option("--window-size", opt.window_size, "b for --window custom");
  prof->callback([&] { runner = run_profile; });

  CLI::App* bounds = app.add_subcommand("bounds", "sep and sandwich bounds on a t grid");
  add_common(bounds);
  bounds->add_option("--t", opt.t_spec, "t grid min:max:step");
  bounds->add_option("--g-amplitude", opt.g_amplitude, "envelope g(t) = a/(1+t)");
  bounds->callback([&] { runner = run_bounds; });

  CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo SST / coupling times");
  add_common(sim);
  sim->add_option("--kind", opt.kind, "sst | coupling");
  sim->add_option("--replicas", opt.replicas, "number of replicas");
  sim->add_option("--seed", opt.seed, "RNG seed");
  sim->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  sim->add_option("--t", opt.t_spec, "survival comparison grid min:max:step");
  sim->add_option("--survival-out", opt.survival_out, "write t,empirical,exact CSV here");
  sim->callback([&] { runner = run_simulate; });

  CLI::App* evt = app.add_subcommand("evt", "annealed separation vs Gumbel limit");
  add_common(evt);
  evt->add_option("--c", opt.c_spec, "c grid min:max:step");
  evt->callback([&] { runner = run_evt; });

  CLI::App* diag = app.add_subcommand("diagnose", "per-n cutoff reports and tau*kappa trend");
  add_common(diag);
  diag->add_option("--c", opt.c_spec, "c grid min:max:step (optional sep columns)");
  diag->add_option("--window", opt.window, "left | right | unit | custom");
  diag->add_option("--window-size", opt.window_size, "b for --window custom");
  diag->callback([&] { runner = run_diagnose; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    return runner(opt);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sepcut::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
