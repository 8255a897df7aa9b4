#pragma once

#include <string>

#include "tadpole/errors.hpp"
#include "tadpole/tadpole_field.hpp"

namespace tadpole::detail {

// Slack for roundoff at the analytic bounds.
inline constexpr double kBoundSlack = 1e-9;

inline double checked_tadpole_power(double value, std::size_t plaquette) {
  if (!(value >= kTadpoleLower - kBoundSlack && value <= kTadpoleUpper + kBoundSlack)) {
    throw ConsistencyError("tadpole factor " + std::to_string(value) + " at plaquette " +
                           std::to_string(plaquette) + " outside [1/2, 3/2]");
  }
  return value;
}

}  // namespace tadpole::detail
