#include "sepcut/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace sepcut {

namespace {

void validate_atoms(std::int64_t n, const std::vector<RateAtom>& atoms) {
  if (n < 1) throw std::invalid_argument("measure: n must be >= 1");
  if (atoms.empty()) throw std::invalid_argument("measure: no atoms");
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const RateAtom& a = atoms[i];
    if (!(a.rate > 0.0) || !std::isfinite(a.rate))
      throw std::invalid_argument("measure: atom " + std::to_string(i) +
                                  " has non-positive or non-finite rate");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass))
      throw std::invalid_argument("measure: atom " + std::to_string(i) +
                                  " has non-positive or non-finite mass");
    if (i > 0 && !(atoms[i - 1].rate < a.rate))
      throw std::invalid_argument("measure: rates not strictly increasing at atom " +
                                  std::to_string(i));
    sum += a.mass;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("measure: masses sum to " + std::to_string(sum) +
                                ", expected 1 within 1e-12");
}

std::vector<RateAtom> merge_equal_rates(std::vector<RateAtom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const RateAtom& a, const RateAtom& b) { return a.rate < b.rate; });
  std::vector<RateAtom> merged;
  merged.reserve(atoms.size());
  for (const RateAtom& a : atoms) {
    if (!merged.empty() && merged.back().rate == a.rate)
      merged.back().mass += a.mass;
    else
      merged.push_back(a);
  }
  return merged;
}

double quantize12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace

RateMeasure::RateMeasure(std::int64_t n, std::vector<RateAtom> atoms)
    : n_(n), atoms_(merge_equal_rates(std::move(atoms))) {
  validate_atoms(n_, atoms_);
  cum_.resize(atoms_.size());
  double run = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    run += atoms_[i].mass;
    cum_[i] = run;
  }
}

double RateMeasure::cumulative(double lambda) const {
  // last atom with rate <= lambda
  auto it = std::upper_bound(
      atoms_.begin(), atoms_.end(), lambda,
      [](double l, const RateAtom& a) { return l < a.rate; });
  if (it == atoms_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

RateMeasure build_measure(std::span<const double> rates, RateQuantize quantize) {
  if (rates.empty()) throw std::invalid_argument("build_measure: empty rate list");
  std::map<double, std::int64_t> counts;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    double r = rates[i];
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::invalid_argument("build_measure: rate at index " + std::to_string(i) +
                                  " must be positive and finite");
    if (quantize == RateQuantize::digits12) r = quantize12(r);
    ++counts[r];
  }
  const auto n = static_cast<std::int64_t>(rates.size());
  const double dn = static_cast<double>(n);

  RateMeasure m;
  m.n_ = n;
  m.atoms_.reserve(counts.size());
  m.cum_.reserve(counts.size());
  std::int64_t prefix = 0;
  for (const auto& [rate, count] : counts) {
    prefix += count;
    m.atoms_.push_back({rate, static_cast<double>(count) / dn});
    // one division per prefix count: cumulative stays exact for count data
    m.cum_.push_back(static_cast<double>(prefix) / dn);
  }
  return m;
}

RateMeasure make_measure(std::int64_t n, std::vector<RateAtom> atoms) {
  return RateMeasure(n, std::move(atoms));
}

ScaledMeasure scale(const RateMeasure& measure, double lambda_star) {
  if (!(lambda_star > 0.0) || !std::isfinite(lambda_star))
    throw std::invalid_argument("scale: lambda_star must be positive and finite");
  const double pivot_mass = measure.cumulative(lambda_star);
  if (pivot_mass <= 0.0)
    throw std::domain_error("scale: mu(0, lambda_star] = 0 (lambda_star below kappa)");

  ScaledMeasure s(measure);
  s.lambda_star_ = lambda_star;
  s.beta_ = static_cast<double>(measure.n()) * pivot_mass;
  s.atoms_.reserve(measure.size());
  s.cum_.reserve(measure.size());
  for (std::size_t i = 0; i < measure.size(); ++i) {
    const RateAtom& a = measure.atoms()[i];
    s.atoms_.push_back({a.rate / lambda_star, a.mass / pivot_mass});
    s.cum_.push_back(measure.cumulative_at(i) / pivot_mass);
  }
  return s;
}

double ScaledMeasure::cumulative(double x) const {
  auto it = std::upper_bound(
      atoms_.begin(), atoms_.end(), x,
      [](double v, const ScaledAtom& a) { return v < a.x; });
  if (it == atoms_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  return end != begin && end && *end == '\0';
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  const auto last = s.find_last_not_of(" \t\r");
  if (first == std::string::npos) return "";
  return s.substr(first, last - first + 1);
}

}  // namespace

RateMeasure read_measure_csv(std::istream& in, std::int64_t n_hint,
                             const std::string& name) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) fail(name, 1, "empty file");
  ++lineno;
  const std::string header = trim(line);
  bool count_mode;
  if (header == "rate,mass")
    count_mode = false;
  else if (header == "rate,count")
    count_mode = true;
  else
    fail(name, lineno, "expected header 'rate,mass' or 'rate,count', got '" + header + "'");

  std::vector<RateAtom> raw;
  std::vector<std::pair<double, std::int64_t>> counted;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos) fail(name, lineno, "expected two comma-separated fields");
    double rate = 0.0, second = 0.0;
    if (!parse_double(trim(row.substr(0, comma)), rate))
      fail(name, lineno, "bad rate field");
    if (!parse_double(trim(row.substr(comma + 1)), second))
      fail(name, lineno, "bad " + std::string(count_mode ? "count" : "mass") + " field");
    if (!(rate > 0.0) || !std::isfinite(rate)) fail(name, lineno, "rate must be positive and finite");
    if (count_mode) {
      if (!(second >= 1.0) || second != std::floor(second) || second > 9e15)
        fail(name, lineno, "count must be a positive integer");
      counted.emplace_back(rate, static_cast<std::int64_t>(second));
    } else {
      if (!(second > 0.0) || !std::isfinite(second)) fail(name, lineno, "mass must be positive and finite");
      raw.push_back({rate, second});
    }
  }

  try {
    if (count_mode) {
      if (counted.empty()) fail(name, lineno, "no data rows");
      std::int64_t n = 0;
      for (const auto& [rate, count] : counted) n += count;
      std::vector<RateAtom> atoms;
      atoms.reserve(counted.size());
      for (const auto& [rate, count] : counted)
        atoms.push_back({rate, static_cast<double>(count) / static_cast<double>(n)});
      return make_measure(n, std::move(atoms));
    }
    if (raw.empty()) fail(name, lineno, "no data rows");
    if (n_hint < 1)
      throw ParseError(name + ": 'rate,mass' format needs the tuple dimension n supplied");
    return make_measure(n_hint, std::move(raw));
  } catch (const std::invalid_argument& e) {
    throw ParseError(name + ": " + e.what());
  }
}

RateMeasure read_measure_json(std::istream& in, const std::string& name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(name + ": " + e.what());
  }
  try {
    const std::int64_t n = doc.at("n").get<std::int64_t>();
    std::vector<RateAtom> atoms;
    for (const auto& a : doc.at("atoms"))
      atoms.push_back({a.at("rate").get<double>(), a.at("mass").get<double>()});
    return make_measure(n, std::move(atoms));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(name + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(name + ": " + e.what());
  }
}

RateMeasure read_measure_file(const std::string& path, std::int64_t n_hint) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return read_measure_json(in, path);
  return read_measure_csv(in, n_hint, path);
}

}  // namespace sepcut
