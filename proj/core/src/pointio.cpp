#include "skl/pointio.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "skl/errors.hpp"

namespace skl::pointio {

namespace {

bool payload_line(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos != std::string::npos && line[pos] != '#';
}

}  // namespace

siegel::SiegelPoint parse_point(std::istream& in, const std::string& origin) {
  std::string line;
  std::size_t lineno = 0;
  auto next_payload = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      if (payload_line(line)) return line;
    }
    throw FileFormatError("unexpected end of point data in " + origin, lineno);
  };

  std::string head = next_payload();
  {
    std::istringstream hs(head);
    std::string tok;
    hs >> tok;
    if (tok.rfind("g=", 0) != 0)
      throw FileFormatError("first payload line must be g=<genus> in " + origin, lineno);
    head = tok.substr(2);
  }
  int g = 0;
  try {
    g = std::stoi(head);
  } catch (const std::exception&) {
    throw FileFormatError("unparsable genus value in " + origin, lineno);
  }
  if (g < 1 || g > 16) throw FileFormatError("genus out of supported range in " + origin, lineno);

  auto read_block = [&](const char* which) {
    matkit::RealMatrix m(g, g);
    for (int i = 0; i < g; ++i) {
      std::istringstream ls(next_payload());
      for (int j = 0; j < g; ++j) {
        if (!(ls >> m(i, j)))
          throw FileFormatError(std::string("row of ") + which + " needs " + std::to_string(g) +
                                    " reals (token " + std::to_string(j + 1) + " bad) in " +
                                    origin,
                                lineno);
      }
      double extra;
      if (ls >> extra)
        throw FileFormatError(std::string("row of ") + which + " has extra tokens in " + origin,
                              lineno);
    }
    return m;
  };

  const matkit::RealMatrix x = read_block("X");
  const matkit::RealMatrix y = read_block("Y");
  try {
    return siegel::SiegelPoint(x, y);
  } catch (const Error& err) {
    throw FileFormatError("point data outside the upper half space (" + std::string(err.what()) +
                              ") in " + origin,
                          lineno);
  }
}

siegel::SiegelPoint load_point(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open point file: " + path, 0);
  return parse_point(in, path);
}

void save_point(const siegel::SiegelPoint& z, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FileFormatError("cannot open point file for writing: " + path, 0);
  const int g = z.g();
  out << "# X rows then Y rows\n";
  out << "g=" << g << "\n";
  out << std::setprecision(17);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) out << (j ? " " : "") << z.x()(i, j);
    out << "\n";
  }
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) out << (j ? " " : "") << z.y()(i, j);
    out << "\n";
  }
  if (!out) throw FileFormatError("write failure on point file: " + path, 0);
}

}  // namespace skl::pointio
