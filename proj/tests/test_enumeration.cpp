#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "skl/enumeration.hpp"
#include "skl/errors.hpp"
#include "test_support.hpp"

using namespace skl;
using enumeration::CountMode;
using enumeration::GroupCache;
using siegel::SiegelPoint;

namespace {

std::vector<long long> key(const arithmetic::SymplecticInt& m) { return m.full().data(); }

std::filesystem::path temp_file(const char* stem) {
  return std::filesystem::temp_directory_path() / stem;
}

}  // namespace

TEST_SUITE("enumeration") {

TEST_CASE("generator set and cache sizes at short word lengths") {
  CHECK(enumeration::standard_generators(2).size() == 8);
  CHECK(enumeration::standard_generators(3).size() == 14);

  CHECK(enumeration::standard_cache(2, 0).elements.size() == 1);
  CHECK(enumeration::standard_cache(2, 1).elements.size() == 9);
  CHECK(enumeration::standard_cache(2, 2).elements.size() == 52);
  CHECK(enumeration::standard_cache(2, 3).elements.size() == 252);
  CHECK(enumeration::standard_cache(3, 1).elements.size() == 15);
}

TEST_CASE("caches hold each element once and are nested in word length") {
  const auto c2 = enumeration::standard_cache(2, 2);
  const auto c3 = enumeration::standard_cache(2, 3);

  std::vector<std::vector<long long>> keys;
  for (const auto& m : c3.elements) keys.push_back(key(m));
  std::sort(keys.begin(), keys.end());
  CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());

  for (const auto& m : c2.elements)
    CHECK(std::binary_search(keys.begin(), keys.end(), key(m)));
}

TEST_CASE("element cap marks the cache truncated") {
  const auto capped = enumeration::standard_cache(2, 3, 10);
  CHECK(capped.truncated);
  CHECK(capped.elements.size() <= 10);
  CHECK(!enumeration::standard_cache(2, 2).truncated);
}

TEST_CASE("orbit counts at the base point") {
  const auto cache = enumeration::standard_cache(2, 2);
  const auto z = SiegelPoint::unit_imaginary(2);

  // Only the involution and its inverse move the base point a zero distance.
  CHECK(enumeration::count_gamma(cache, {z, z, 1.0, CountMode::cocompact}) == 2);
  CHECK(enumeration::count_gamma_classes(cache, {z, z, 1.0, CountMode::cocompact}) == 1);

  // A wider radius pulls in translations; arithmetic mode drops them.
  CHECK(enumeration::count_gamma(cache, {z, z, 1.45, CountMode::cocompact}) == 22);
  CHECK(enumeration::count_gamma(cache, {z, z, 1.45, CountMode::arithmetic}) == 18);
  CHECK(enumeration::count_gamma_classes(cache, {z, z, 1.45, CountMode::cocompact}) == 13);

  CHECK_THROWS_AS(
      (void)enumeration::count_gamma(cache, {z, z, 0.0, CountMode::cocompact}),
      DomainError);
}

TEST_CASE("class representatives merge the sign pair") {
  CHECK(enumeration::action_classes(enumeration::standard_cache(2, 1)).size() == 8);
  CHECK(enumeration::action_classes(enumeration::standard_cache(2, 2)).size() == 38);
  CHECK(enumeration::action_classes(enumeration::standard_cache(3, 1)).size() == 14);
}

TEST_CASE("class displacements are sorted and skip the identity class") {
  const auto cache = enumeration::standard_cache(2, 1);
  const auto z = SiegelPoint::unit_imaginary(2);
  const auto d = enumeration::class_displacements(cache, z, z);
  CHECK(d.size() == 7);
  CHECK(std::is_sorted(d.begin(), d.end()));
  // The involution class fixes the base point.
  CHECK(d.front() <= 1e-9);
}

TEST_CASE("injectivity estimate skips stabilizer displacements") {
  const auto cache = enumeration::standard_cache(2, 1);
  const SiegelPoint base[] = {SiegelPoint::unit_imaginary(2)};
  const auto at_base = enumeration::injectivity_radius_estimate(cache, base);
  CHECK(at_base.skipped_fixed == 2);
  CHECK(at_base.radius > 0.0);

  testsup::Rng rng(41);
  const SiegelPoint generic[] = {
      SiegelPoint(testsup::random_sym(2, rng, 0.07),
                  0.1 * testsup::random_spd(2, rng) + 0.9 * matkit::RealMatrix::identity(2))};
  const auto off = enumeration::injectivity_radius_estimate(cache, generic);
  CHECK(off.skipped_fixed == 0);
  CHECK(off.displacements > 0);
  CHECK(off.radius > 0.0);
}

TEST_CASE("boundary strata classify translations and shears") {
  using arithmetic::GammaInfFamily;
  const auto t = arithmetic::SymplecticInt::translation(
      arithmetic::IntMatrix(2, 2, {1, 0, 0, -1}));
  CHECK(enumeration::boundary_stratum(t) == 0);
  CHECK(enumeration::is_boundary_family(t));
  CHECK(!enumeration::is_boundary_family(arithmetic::SymplecticInt::involution(2)));

  for (const auto& m : arithmetic::gamma_inf_all(GammaInfFamily{2, 1, 1})) {
    const auto s = enumeration::boundary_stratum(m);
    REQUIRE(s.has_value());
    CHECK(*s <= 1);
  }
}

TEST_CASE("cache files round trip bit exact") {
  const auto cache = enumeration::standard_cache(2, 2);
  const auto path = temp_file("skl_cache_roundtrip.spgz");
  enumeration::save_cache(cache, path.string());
  const auto back = enumeration::load_cache(path.string());
  CHECK(back.g == cache.g);
  CHECK(back.word_length == cache.word_length);
  CHECK(back.truncated == cache.truncated);
  CHECK(back.elements.size() == cache.elements.size());
  for (std::size_t i = 0; i < cache.elements.size(); ++i)
    CHECK(back.elements[i] == cache.elements[i]);
  std::filesystem::remove(path);
}

TEST_CASE("malformed cache files report the offending row") {
  const auto path = temp_file("skl_cache_bad.spgz");

  {
    std::ofstream out(path);
    out << "NOPE 1 g=2 L=1 gens=standard\n";
  }
  try {
    (void)enumeration::load_cache(path.string());
    FAIL("bad header accepted");
  } catch (const FileFormatError& err) {
    CHECK(err.row == 1);
  }

  {
    std::ofstream out(path);
    out << "SPGZ 1 g=2 L=1 gens=standard\n";
    out << "1 0 0 0  0 1 0 0  0 0 1 0  0 0 0 1\n";
    out << "1 2 3\n";
  }
  try {
    (void)enumeration::load_cache(path.string());
    FAIL("short row accepted");
  } catch (const FileFormatError& err) {
    CHECK(err.row == 3);
  }

  {
    std::ofstream out(path);
    out << "SPGZ 1 g=2 L=1 gens=standard\n";
    out << "2 0 0 0  0 1 0 0  0 0 1 0  0 0 0 1\n";
  }
  try {
    (void)enumeration::load_cache(path.string());
    FAIL("non-symplectic row accepted");
  } catch (const FileFormatError& err) {
    CHECK(err.row == 2);
  }

  std::filesystem::remove(path);
}

TEST_CASE("bfs rejects mismatched generators") {
  const auto gens3 = enumeration::standard_generators(3);
  CHECK_THROWS_AS((void)enumeration::bfs_enumerate(2, gens3, 1), DimensionError);
  CHECK_THROWS_AS((void)enumeration::standard_cache(0, 1), ParameterError);
}

}  // TEST_SUITE
