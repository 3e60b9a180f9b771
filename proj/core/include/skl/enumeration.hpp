#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skl/arithmetic.hpp"
#include "skl/siegel.hpp"

namespace skl::enumeration {

using arithmetic::SymplecticInt;

// Breadth-first closure of a generator set up to a word length, identity
// first, deduplicated on exact matrix entries.
struct GroupCache {
  int g = 0;
  int word_length = 0;
  std::string generator_desc;
  bool truncated = false;
  std::vector<SymplecticInt> elements;
};

// Involution, its inverse, and the elementary symmetric translations with
// their inverses: 2 * (1 + g(g+1)/2) generators.
std::vector<SymplecticInt> standard_generators(int g);

GroupCache bfs_enumerate(int g, const std::vector<SymplecticInt>& generators, int word_length,
                         std::size_t element_cap = 2'000'000,
                         const std::string& desc = "custom");

GroupCache standard_cache(int g, int word_length, std::size_t element_cap = 2'000'000);

enum class CountMode { cocompact, arithmetic };

struct CountQuery {
  siegel::SiegelPoint z;
  siegel::SiegelPoint w;
  double radius;
  CountMode mode = CountMode::cocompact;
};

// Orbit count: elements gamma with d(z, gamma w) < radius. The center
// elements (+-identity) are never counted; arithmetic mode additionally
// drops the boundary strata (either sign).
std::size_t count_gamma(const GroupCache& cache, const CountQuery& query, int threads = 0);

struct InjectivityEstimate {
  double radius = 0.0;             // half the smallest admissible displacement
  std::size_t displacements = 0;   // displacements that entered the minimum
  std::size_t skipped_fixed = 0;   // numerically zero displacements skipped
};

// Half of min over samples and admissible gamma of d(z, gamma z).
// Displacements below the zero threshold come from elements acting
// trivially (or fixing the sample) and are skipped, not minimized over.
InjectivityEstimate injectivity_radius_estimate(const GroupCache& cache,
                                                std::span<const siegel::SiegelPoint> samples,
                                                CountMode mode = CountMode::cocompact,
                                                int threads = 0, const Tolerances& t = tol());

// Smallest stratum index whose structural pattern the element matches:
// C = 0, A = (Id 0; L Id), S = A^{-1} B symmetric with zero leading j x j block.
std::optional<int> boundary_stratum(const SymplecticInt& m);
bool is_boundary_family(const SymplecticInt& m);

// One representative index per {gamma, -gamma} class, in first-seen order.
std::vector<std::size_t> action_classes(const GroupCache& cache);

// Sorted displacements d(z, gamma w), one per admissible action class
// (identity class always excluded; arithmetic mode also drops boundary
// classes). This is the input for packing-style counting bounds, where
// each distinct action must enter exactly once.
std::vector<double> class_displacements(const GroupCache& cache, const siegel::SiegelPoint& z,
                                        const siegel::SiegelPoint& w,
                                        CountMode mode = CountMode::cocompact, int threads = 0,
                                        const Tolerances& t = tol());

// Number of admissible action classes with displacement below the radius.
std::size_t count_gamma_classes(const GroupCache& cache, const CountQuery& query,
                                int threads = 0);

// Plain text cache format: header "SPGZ 1 g=<g> L=<len> gens=<desc>" and one
// row of 4g^2 integers per element. Round trips are bit exact; loading
// re-certifies every element and reports offending rows.
void save_cache(const GroupCache& cache, const std::string& path);
GroupCache load_cache(const std::string& path);

}  // namespace skl::enumeration
