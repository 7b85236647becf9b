#pragma once

#include <cstdint>
#include <stdexcept>

namespace opspace {

// Shared numerical policy. structural_tol decides pass/fail of structural
// identities; iterative_tol drives convergence of iterative solvers.
struct ToleranceConfig {
    double structural_tol = 1e-9;
    double iterative_tol = 1e-12;
    int max_iterations = 10000;
    std::uint64_t seed = 42;

    void validate() const {
        if (!(structural_tol > 0.0))
            throw std::invalid_argument("ToleranceConfig: structural_tol must be positive");
        if (!(iterative_tol > 0.0))
            throw std::invalid_argument("ToleranceConfig: iterative_tol must be positive");
        if (max_iterations < 1)
            throw std::invalid_argument("ToleranceConfig: max_iterations must be >= 1");
    }
};

} // namespace opspace
