#pragma once

#include <stdexcept>
#include <string>

namespace cpexp {

// Evaluation outside a transform's domain of analyticity, or at a pole.
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// An iterative scheme exhausted its budget without meeting its target.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two independent representations of the same quantity disagree beyond
// tolerance; indicates a numerical breakdown upstream, never ignored.
struct consistency_error : std::runtime_error {
    explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A simulated path exceeded its jump budget.
struct path_budget_error : std::runtime_error {
    explicit path_budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

}
