#pragma once

#include <stdexcept>
#include <string>

namespace setpoint {

// Raised for malformed inputs: invalid metrics, out-of-range indices,
// parameter constraint violations, unparseable problem files.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kDefaultTolerance = 1e-9;

}  // namespace setpoint
