#include <string>
#include <vector>

#include "doctest.h"
#include "skl/errors.hpp"
#include "skl/verify.hpp"

using skl::verify::PropertyResult;

namespace {

// The genus-3 growth-constant stabilization is a known deviation: on the
// r <= 2.5 grid the volume/bound ratio is still climbing toward its
// plateau (the ratio scales like r^{2g^2-2} at small r and levels off only
// near r = 4), so the refit drift sits above the x2 gate. The wrapper pins
// the failure so a silent change in either direction gets flagged.
bool is_known_deviation(const PropertyResult& r) {
  return r.suite == "volumes" && r.name == "growth-bound-constant-stable-g3";
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("suite registry") {
  const auto names = skl::verify::suite_names();
  const std::vector<std::string> expected = {"matkit", "siegel",  "arithmetic", "enumeration",
                                             "volumes", "kernel", "hua"};
  CHECK(names == expected);
  CHECK_THROWS_AS((void)skl::verify::run_suite("nope"), skl::ParameterError);
}

TEST_CASE("every property passes except the pinned deviation") {
  const auto results = skl::verify::run_suite("all", 42);
  CHECK(results.size() >= 40);
  std::size_t deviations = 0;
  for (const auto& r : results) {
    if (is_known_deviation(r)) {
      ++deviations;
      CHECK(!r.pass);
      CHECK(r.residual > 2.0);
      CHECK(r.residual < 3.0);
      continue;
    }
    INFO(r.suite, "/", r.name, ": residual ", r.residual, " vs ", r.threshold, " ", r.detail);
    CHECK(r.pass);
  }
  CHECK(deviations == 1);
}

TEST_CASE("suite runs are deterministic for a fixed seed") {
  const auto a = skl::verify::run_suite("kernel", 42);
  const auto b = skl::verify::run_suite("kernel", 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].residual == b[i].residual);
    CHECK(a[i].pass == b[i].pass);
  }
}

}  // TEST_SUITE
