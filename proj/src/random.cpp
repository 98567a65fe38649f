#include "qrate/random.hpp"

#include <cmath>
#include <numbers>

namespace qrate {

double NormalStream::uniform_open() {
  // (0, 1): 53 random mantissa bits, offset by half an ulp so 0 is excluded.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform_open();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace qrate
