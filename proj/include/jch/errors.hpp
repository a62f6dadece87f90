#pragma once

#include <stdexcept>
#include <string>

namespace jch {

// Bad user-supplied values: parameters, axis specs, malformed states.
// CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine could not reach its accuracy target within its
// budget (series cap, quadrature panel budget, unconverged tail).
// CLI maps this to exit code 2.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace jch
