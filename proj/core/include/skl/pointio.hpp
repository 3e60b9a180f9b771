#pragma once

#include <iosfwd>
#include <string>

#include "skl/siegel.hpp"

namespace skl::pointio {

// Point file format: optional '#' comment or blank lines anywhere, a first
// payload line "g=<g>", then g rows of g reals for X followed by g rows
// for Y. Parse failures carry the 1-based line number.
siegel::SiegelPoint parse_point(std::istream& in, const std::string& origin = "<stream>");
siegel::SiegelPoint load_point(const std::string& path);
void save_point(const siegel::SiegelPoint& z, const std::string& path);

}  // namespace skl::pointio
