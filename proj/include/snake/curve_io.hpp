#pragma once

#include <filesystem>
#include <string>

#include "snake/curve.hpp"

namespace snake {

/// {"closed": bool, "knots": [[x, y], ...]}, pixel units, y down.
std::string curve_to_json(const Curve& c);
Curve curve_from_json(const std::string& text);

Curve load_curve(const std::filesystem::path& path);
void save_curve(const std::filesystem::path& path, const Curve& c);

}  // namespace snake
