#include "snake/curve_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snake/errors.hpp"

namespace snake {

using nlohmann::json;

std::string curve_to_json(const Curve& c) {
    json knots = json::array();
    for (const Point& p : c.knots()) knots.push_back({p.x, p.y});
    json doc = {{"closed", c.closed()}, {"knots", std::move(knots)}};
    return doc.dump(2) + "\n";
}

Curve curve_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("curve document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("knots") || !doc["knots"].is_array())
        throw FormatError("curve document needs a \"knots\" array");
    const bool closed = doc.value("closed", false);
    std::vector<Point> knots;
    for (const auto& k : doc["knots"]) {
        if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
            throw FormatError("each knot must be a [x, y] pair of numbers");
        knots.push_back({k[0].get<double>(), k[1].get<double>()});
    }
    return Curve(std::move(knots), closed);
}

Curve load_curve(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return curve_from_json(ss.str());
}

void save_curve(const std::filesystem::path& path, const Curve& c) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << curve_to_json(c);
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace snake
