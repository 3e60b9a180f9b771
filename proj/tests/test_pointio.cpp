#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "skl/errors.hpp"
#include "skl/pointio.hpp"
#include "test_support.hpp"

using namespace skl;

namespace {

std::filesystem::path temp_file(const char* stem) {
  return std::filesystem::temp_directory_path() / stem;
}

}  // namespace

TEST_SUITE("pointio") {

TEST_CASE("save and load round trip bit exact") {
  testsup::Rng rng(61);
  const auto z = testsup::random_point(3, rng);
  const auto path = temp_file("skl_point_roundtrip.pt");
  pointio::save_point(z, path.string());
  const auto back = pointio::load_point(path.string());
  REQUIRE(back.g() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(back.x()(i, j) == z.x()(i, j));
      CHECK(back.y()(i, j) == z.y()(i, j));
    }
  std::filesystem::remove(path);
}

TEST_CASE("comments and blank lines are skipped") {
  std::istringstream in(
      "# a labeled point\n"
      "\n"
      "g=2\n"
      "# real part\n"
      "0.0 0.25\n"
      "0.25 0.0\n"
      "\n"
      "1.0 0.0\n"
      "0.0 2.0\n");
  const auto z = pointio::parse_point(in, "inline");
  CHECK(z.g() == 2);
  CHECK(z.x()(0, 1) == 0.25);
  CHECK(z.y()(1, 1) == 2.0);
}

TEST_CASE("parse failures carry the offending line") {
  auto expect_row = [](const std::string& text, std::size_t row) {
    std::istringstream in(text);
    try {
      (void)pointio::parse_point(in, "inline");
      FAIL_CHECK("malformed input accepted");
    } catch (const FileFormatError& err) {
      CHECK(err.row == row);
    }
  };

  // First payload line must declare the genus.
  expect_row("1.0 0.0\n0.0 1.0\n", 1);
  // Genus token must parse.
  expect_row("g=two\n", 1);
  // Wrong entry count inside a matrix row.
  expect_row("g=2\n0.0 0.0\n0.0\n", 3);
  // Extra tokens on a row.
  expect_row("g=2\n0.0 0.0 7.0\n", 2);
  // Non-numeric matrix entry.
  expect_row("# header\ng=2\n0.0 x\n", 3);
  // Truncated file: the failure carries the last line that was read.
  expect_row("g=2\n0.0 0.0\n0.0 0.0\n1.0 0.0\n", 4);
}

TEST_CASE("points outside the upper half space are rejected with context") {
  std::istringstream in(
      "g=2\n"
      "0.0 0.0\n"
      "0.0 0.0\n"
      "1.0 0.0\n"
      "0.0 -1.0\n");
  CHECK_THROWS_AS((void)pointio::parse_point(in, "inline"), FileFormatError);
}

TEST_CASE("missing files are reported") {
  CHECK_THROWS_AS((void)pointio::load_point("/nonexistent/skl_point.pt"), FileFormatError);
}

}  // TEST_SUITE
