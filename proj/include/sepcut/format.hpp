#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepcut {

// All floating-point output goes through %.10g so deterministic runs produce
// byte-identical files.
inline std::string g10(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

// Double rounded to 10 significant digits (round trip through %.10g); used
// before handing numbers to the JSON writer.
inline double round10(double x) {
  return std::strtod(g10(x).c_str(), nullptr);
}

// Grid spec "min:max:step", endpoints inclusive within half a step.
inline std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0, s = 0.0;
  char tail = '\0';
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &a, &b, &s, &tail) != 3)
    throw std::invalid_argument("grid spec must be min:max:step, got '" + spec + "'");
  if (!(s > 0.0)) throw std::invalid_argument("grid step must be > 0");
  if (b < a) throw std::invalid_argument("grid max must be >= min");
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double v = a + k * s;
    if (v > b + s / 2.0) break;
    grid.push_back(v);
  }
  return grid;
}

}  // namespace sepcut
