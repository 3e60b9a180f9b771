#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "skl/pointio.hpp"
#include "skl/siegel.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SKL_CLI_PATH + "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_file(const char* stem) {
  return std::filesystem::temp_directory_path() / stem;
}

std::string write_scaled_point(const char* stem, int g, double scale) {
  const skl::siegel::SiegelPoint z(skl::matkit::RealMatrix(g, g),
                                   scale * skl::matkit::RealMatrix::identity(g));
  const auto path = temp_file(stem);
  skl::pointio::save_point(z, path.string());
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and argument errors") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("distance --nope").code == 2);
  CHECK(run_cli("").code == 2);  // a subcommand is required
}

TEST_CASE("enumerate emits the stable document shape") {
  const auto r = run_cli("enumerate --g 2 --L 1");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["command"] == "enumerate");
  REQUIRE(doc.contains("config"));
  REQUIRE(doc.contains("result"));
  REQUIRE(doc.contains("diagnostics"));
  CHECK(doc["result"]["size"] == 9);
  CHECK(doc["result"]["truncated"] == false);
  CHECK(doc["config"]["g"] == 2);
}

TEST_CASE("cache written by enumerate feeds count") {
  const auto cache = temp_file("skl_cli_cache.spgz");
  std::filesystem::remove(cache);
  const auto e = run_cli("enumerate --g 2 --L 2 --cache \"" + cache.string() + "\"");
  REQUIRE(e.code == 0);
  CHECK(std::filesystem::exists(cache));

  const auto c = run_cli("count --g 2 --cache \"" + cache.string() + "\" --r 1.0");
  REQUIRE(c.code == 0);
  const json doc = json::parse(c.out);
  CHECK(doc["result"]["count"] == 2);
  CHECK(doc["result"]["class_count"] == 1);
  CHECK(doc["diagnostics"]["cache_size"] == 52);
  std::filesystem::remove(cache);
}

TEST_CASE("distance on the doubled base point") {
  const auto zf = write_scaled_point("skl_cli_z.pt", 2, 1.0);
  const auto wf = write_scaled_point("skl_cli_w.pt", 2, 2.0);
  const auto r = run_cli("distance --z-file \"" + zf + "\" --w-file \"" + wf + "\"");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const double d = doc["result"]["distance"].get<double>();
  CHECK(std::abs(d - 2.0 * std::log(2.0)) < 1e-12);
  CHECK(doc["result"]["identity_residual"].get<double>() < 1e-9);
  for (const auto& rho : doc["result"]["rho"])
    CHECK(std::abs(rho.get<double>() - 1.0 / 9.0) < 1e-12);
}

TEST_CASE("missing and malformed point files exit with code two") {
  CHECK(run_cli("distance --z-file /nonexistent.pt --w-file /nonexistent.pt").code == 2);

  const auto bad = temp_file("skl_cli_bad.pt");
  {
    std::ofstream out(bad);
    out << "g=2\n0.0 0.0\nnot a number\n";
  }
  const auto zf = write_scaled_point("skl_cli_z.pt", 2, 1.0);
  CHECK(run_cli("distance --z-file \"" + bad.string() + "\" --w-file \"" + zf + "\"").code == 2);
  std::filesystem::remove(bad);
}

TEST_CASE("volume cross-checks the closed form") {
  const auto r = run_cli("volume --g 2 --r 1.0");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const double quad = doc["result"]["quadrature"].get<double>();
  const double closed = doc["result"]["closed_form"]["total"].get<double>();
  CHECK(std::abs(quad - closed) <= 1e-8 * closed);
  CHECK(doc["result"]["bound_g2"].get<double>() > quad);
  CHECK(doc["result"]["shape_ratio"].get<double>() < 1.0);
}

TEST_CASE("volume csv sweep has one row per radius") {
  const auto r = run_cli("volume --g 2 --r 0.5 --r 1.0 --format csv");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header == "r,quadrature,closed_form,bound_g2,bound_shape,shape_ratio");
  int rows = 0;
  std::string row;
  while (std::getline(lines, row))
    if (!row.empty()) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("kernel envelope mode recovers the diagonal value exactly") {
  const auto r = run_cli("kernel --g 2 --k 10 --d 0.0");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["result"]["decay_envelope"].get<double>() == 1000.0);
  CHECK(doc["diagnostics"]["weight"] == 30);

  // Weight too small for a positive decay exponent: a domain failure, not
  // an input-file failure.
  CHECK(run_cli("kernel --g 2 --k 1 --d 1.0").code == 1);
}

TEST_CASE("kernel pair mode bounds the truncation by the majorant") {
  const auto zf = write_scaled_point("skl_cli_z.pt", 2, 1.0);
  const auto wf = write_scaled_point("skl_cli_w.pt", 2, 2.0);
  const auto r = run_cli("kernel --g 2 --k 4 --L 2 --z-file \"" + zf + "\" --w-file \"" + wf +
                         "\"");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const double tn = doc["result"]["truncated_norm"].get<double>();
  const double mj = doc["result"]["majorant"].get<double>();
  CHECK(tn > 0.0);
  CHECK(tn <= mj * (1.0 + 1e-9));
  REQUIRE(doc["result"].contains("cusp_envelope"));
  CHECK(doc["result"]["cusp_envelope"]["first"].get<double>() ==
        doctest::Approx(262144.0).epsilon(1e-12));
}

TEST_CASE("verify reports suite health through the exit code") {
  const auto good = run_cli("verify --suite hua");
  CHECK(good.code == 0);
  const json doc = json::parse(good.out);
  CHECK(doc["result"]["failed"] == 0);

  // The genus-3 growth-constant property is a pinned deviation, so the
  // volumes suite reports a failure honestly.
  const auto vol = run_cli("verify --suite volumes");
  CHECK(vol.code == 1);
  const json vdoc = json::parse(vol.out);
  CHECK(vdoc["result"]["failed"] == 1);
  bool found = false;
  for (const auto& p : vdoc["result"]["properties"])
    if (p["name"] == "growth-bound-constant-stable-g3") found = !p["pass"].get<bool>();
  CHECK(found);
}

TEST_CASE("fixed seeds make runs byte identical") {
  const auto a = run_cli("volume --g 2 --r 1.0");
  const auto b = run_cli("volume --g 2 --r 1.0");
  CHECK(a.out == b.out);

  const auto c = run_cli("verify --suite matkit --seed 42");
  const auto d = run_cli("verify --suite matkit --seed 42");
  CHECK(c.out == d.out);
  CHECK(c.code == 0);
}

TEST_CASE("reduce normalizes a shifted point") {
  const skl::siegel::SiegelPoint z(
      skl::matkit::RealMatrix(2, 2, {0.7, 0.1, 0.1, -0.6}),
      skl::matkit::RealMatrix::identity(2));
  const auto path = temp_file("skl_cli_shift.pt");
  skl::pointio::save_point(z, path.string());
  const auto r = run_cli("reduce --g 2 --L 2 --z-file \"" + path.string() + "\"");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["result"]["complete"] == true);
  CHECK(doc["result"]["check"]["reduced"] == true);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
