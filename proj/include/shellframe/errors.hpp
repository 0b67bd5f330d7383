#pragma once

#include <stdexcept>
#include <string>

namespace shellframe {

/// Invalid parameters, invalid geometry, failed schema checks. CLI exit code 1.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Point outside the patch domain.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// |z * kappa| >= 1: the shell frame collapses through the thickness.
struct degenerate_frame_error : std::runtime_error {
    explicit degenerate_frame_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Form-degree misuse (wedge overflow, d of a top form, dual of a non-one-form).
struct degree_error : std::logic_error {
    explicit degree_error(const std::string& msg) : std::logic_error(msg) {}
};

/// NaN/Inf detected during time integration. CLI exit code 2.
struct divergence_error : std::runtime_error {
    divergence_error(const std::string& msg, long step_index)
        : std::runtime_error(msg), step(step_index) {}
    long step;
};

/// Unreadable or malformed input file. CLI exit code 3.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace shellframe
