#ifndef FLOQ_ERRORS_HPP
#define FLOQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace floq {

// Exit-code taxonomy of the CLI: invalid_input -> 2, numerical_error (and
// subtypes) -> 3, invariant_violation -> 4.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mode-wise inversion hit a vanishing symbol (the Lemma-4 failure set).
struct resonance_error : numerical_error {
    int m = 0, n = 0;
    resonance_error(const std::string& msg, int m_, int n_)
        : numerical_error(msg), m(m_), n(n_) {}
};

// Floquet normalization obstructed: trivial multiplier ratio with nonzero periods.
struct obstruction_error : numerical_error {
    explicit obstruction_error(const std::string& msg) : numerical_error(msg) {}
};

struct singular_system_error : numerical_error {
    double where = 0.0;
    singular_system_error(const std::string& msg, double y) : numerical_error(msg), where(y) {}
};

struct spurious_mode_error : numerical_error {
    explicit spurious_mode_error(const std::string& msg) : numerical_error(msg) {}
};

struct accuracy_error : numerical_error {
    explicit accuracy_error(const std::string& msg) : numerical_error(msg) {}
};

struct aborted_trajectory_error : numerical_error {
    int last_valid_step = 0;
    aborted_trajectory_error(const std::string& msg, int step)
        : numerical_error(msg), last_valid_step(step) {}
};

struct invariant_violation : std::runtime_error {
    explicit invariant_violation(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace floq

#endif
