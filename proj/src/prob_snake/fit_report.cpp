#include "snake/fit_report.hpp"

#include <json.hpp>

namespace snake {

std::string report_to_json(const FitReport& r, const std::string& model, bool with_timing) {
    nlohmann::json passes = nlohmann::json::array();
    for (const auto& p : r.passes) {
        nlohmann::json j = {{"name", p.name},
                            {"iterations", p.iterations},
                            {"knots", p.knots},
                            {"converged", p.converged},
                            {"displacements", p.displacements}};
        if (with_timing) j["seconds"] = p.seconds;
        passes.push_back(std::move(j));
    }
    nlohmann::json doc = {{"model", model},
                          {"knots", r.curve.size()},
                          {"closed", r.curve.closed()},
                          {"iterations", r.total_iterations()},
                          {"passes", std::move(passes)}};
    if (with_timing) doc["seconds"] = r.total_seconds();
    return doc.dump(2) + "\n";
}

}  // namespace snake
