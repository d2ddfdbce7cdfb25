#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ehs {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed call: negative Pochhammer length, mismatched vector sizes,
// unknown identity name, and the like.
struct argument_error : error {
    using error::error;
};

// Value outside the mathematical domain: theta at x = 0, |p| >= 1,
// division by zero, coincident base points.
struct domain_error : error {
    using error::error;
};

// A denominator factor of a series term vanished. Carries the location
// of the offending factor so callers can report or skip the instance.
struct singular_instance_error : error {
    std::string role;    // which denominator family, e.g. "(w_j z_k)_{y_k}"
    int k = -1;          // term coordinate (1-based, -1 if n/a)
    int j = -1;          // parameter index (1-based, -1 if n/a)
    std::vector<int> y;  // summation index at which it happened

    singular_instance_error(std::string role_, int k_, int j_, std::vector<int> y_)
        : error(format(role_, k_, j_, y_)),
          role(std::move(role_)), k(k_), j(j_), y(std::move(y_)) {}

    static std::string format(const std::string& role, int k, int j,
                              const std::vector<int>& y) {
        std::string s = "singular instance: vanishing factor " + role;
        if (k >= 0) s += " at k=" + std::to_string(k);
        if (j >= 0) s += ", j=" + std::to_string(j);
        if (!y.empty()) {
            s += ", y=(";
            for (size_t i = 0; i < y.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(y[i]);
            }
            s += ")";
        }
        return s;
    }
};

// The sampler ran out of resample attempts without clearing the
// singularity guard.
struct sampling_error : error {
    using error::error;
};

// Two evaluation routes that must agree bit-for-bit did not.
struct internal_error : error {
    using error::error;
};

}  // namespace ehs
