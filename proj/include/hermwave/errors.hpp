// SPDX-License-Identifier: Apache-2.0

#ifndef HERMWAVE_ERRORS_HPP
#define HERMWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hermwave {

/// Invalid parameters or malformed configuration. CLI exit code 2.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A requested computation exceeds its configured budget. CLI exit code 3.
class budget_error : public std::runtime_error {
  public:
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A table cannot be built at the requested resolution.
class resolution_error : public std::runtime_error {
  public:
    explicit resolution_error(const std::string& msg)
        : std::runtime_error(msg) {}
};

}  // namespace hermwave

#endif
