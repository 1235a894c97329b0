#pragma once

#include <string>
#include <vector>

#include "snake/curve.hpp"

namespace snake {

struct PassStats {
    std::string name;
    int iterations = 0;
    std::size_t knots = 0;
    bool converged = false;
    std::vector<double> displacements;  // max knot displacement per iteration
    double seconds = 0.0;
};

/// Outcome of any of the three fitting models.
struct FitReport {
    Curve curve;
    std::vector<PassStats> passes;

    double total_seconds() const {
        double t = 0.0;
        for (const auto& p : passes) t += p.seconds;
        return t;
    }
    int total_iterations() const {
        int n = 0;
        for (const auto& p : passes) n += p.iterations;
        return n;
    }
};

/// Structured text report; wall-clock fields are omitted when with_timing is false.
std::string report_to_json(const FitReport& r, const std::string& model, bool with_timing = true);

}  // namespace snake
