#include "types.hpp"

#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace dra {

Ratio Ratio::from_decimal(double value) {
  if (!std::isfinite(value)) {
    throw ConfigError("ratio literal must be finite");
  }
  constexpr std::int64_t den = 1'000'000'000;
  const double scaled = value * static_cast<double>(den);
  if (scaled < -9.0e18 || scaled > 9.0e18) {
    throw ConfigError("ratio literal out of range");
  }
  const std::int64_t num = std::llround(scaled);
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return Ratio{num / (g ? g : 1), den / (g ? g : 1)};
}

}  // namespace dra
