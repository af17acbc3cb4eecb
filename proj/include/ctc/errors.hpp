#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctc {

/// Invalid or inconsistent configuration input. Carries the 1-based line
/// number of the offending entry when known (0 otherwise).
struct ConfigError : std::runtime_error {
    int line = 0;
    explicit ConfigError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

/// Numerical failure during time integration (divergence, non-finite state).
struct IntegrationError : std::runtime_error {
    std::size_t step = 0;
    explicit IntegrationError(const std::string& msg, std::size_t step_index = 0)
        : std::runtime_error(msg + " (step " + std::to_string(step_index) + ")"),
          step(step_index) {}
};

}  // namespace ctc
