#include "meanscope/convex.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace meanscope {

namespace {

constexpr double kNoLowerEnd = -std::numeric_limits<double>::infinity();

const std::array<ConvexFunction, 5>& table() {
  static const std::array<ConvexFunction, 5> functions = {{
      {"exp", [](double x) { return std::exp(x); }, kNoLowerEnd, 1e-2, 1e2, 1e-2},
      {"square", [](double x) { return x * x; }, kNoLowerEnd, 1e-2, 1e2, 1e-2},
      {"quartic", [](double x) { return (x * x) * (x * x); }, kNoLowerEnd, 1e-2, 1e2, 1e-2},
      // x log x is negative on (0, 1).
      {"xlogx", [](double x) { return x * std::log(x); }, 0.0, 1e-2, 1e2, 1.0},
      {"reciprocal", [](double x) { return 1.0 / x; }, 0.0, 1e-2, 1e2, 1e-2},
  }};
  return functions;
}

}  // namespace

std::span<const ConvexFunction> convex_catalog() { return table(); }

const ConvexFunction& convex_function(std::string_view name) {
  for (const auto& fn : table()) {
    if (fn.name == name) return fn;
  }
  throw std::invalid_argument("unknown convex function: " + std::string(name));
}

}  // namespace meanscope
