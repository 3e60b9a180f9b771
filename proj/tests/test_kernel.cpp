#include <cmath>
#include <vector>

#include "doctest.h"
#include "skl/enumeration.hpp"
#include "skl/errors.hpp"
#include "skl/kernel.hpp"
#include "skl/volumes.hpp"
#include "test_support.hpp"

using namespace skl;
using kernel::KernelParams;
using siegel::SiegelPoint;

namespace {

SiegelPoint doubled_imaginary(int g) {
  return SiegelPoint(matkit::RealMatrix(g, g), 2.0 * matkit::RealMatrix::identity(g));
}

std::vector<arithmetic::SymplecticInt> identity_only(int g) {
  return {arithmetic::SymplecticInt::identity(g)};
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(kernel::validate(KernelParams{1, 2, 1.0}), ParameterError);
  CHECK_THROWS_AS(kernel::validate(KernelParams{2, 0, 1.0}), ParameterError);
  CHECK_THROWS_AS(kernel::validate(KernelParams{2, 2, 0.0}), ParameterError);
  CHECK(KernelParams{2, 10, 1.0}.weight() == 30);
}

TEST_CASE("series term at the coincident base point is minus one") {
  const KernelParams p{2, 1, 1.0};
  const auto z = SiegelPoint::unit_imaginary(2);
  const auto term = kernel::series_term(p, z, z, arithmetic::SymplecticInt::identity(2));
  CHECK(std::abs(term - matkit::cplx(-1.0, 0.0)) < 1e-13);

  const auto lg = kernel::series_term_log(p, z, z, arithmetic::SymplecticInt::identity(2));
  CHECK(std::abs(lg.log_mag) < 1e-13);
  // The phase is an odd multiple of pi; its reduction is what matters.
  CHECK(std::abs(std::cos(lg.phase) + 1.0) < 1e-13);
}

TEST_CASE("identity-window norm collapses to the cosh product") {
  const KernelParams p{2, 1, 1.0};
  const auto z = SiegelPoint::unit_imaginary(2);
  const auto w = doubled_imaginary(2);
  const auto window = identity_only(2);

  CHECK(kernel::truncated_norm(p, z, z, window) == doctest::Approx(1.0).epsilon(1e-14));

  const double expected = std::pow(8.0 / 9.0, 3);  // prod cosh^{-3} over two equal radii
  CHECK(kernel::truncated_norm(p, z, w, window) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(kernel::majorant_sum(p, z, w, window) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(kernel::log_majorant_term(p, z, w, window.front()) ==
        doctest::Approx(3.0 * std::log(8.0 / 9.0)).epsilon(1e-12));
}

TEST_CASE("truncation never exceeds the majorant") {
  const KernelParams p{2, 5, 1.0};
  const auto cache = enumeration::standard_cache(2, 2);
  testsup::Rng rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const auto z = testsup::random_point(2, rng);
    const auto w = testsup::random_point(2, rng);
    const double tn = kernel::truncated_norm(p, z, w, cache.elements);
    const double mj = kernel::majorant_sum(p, z, w, cache.elements);
    CHECK(tn <= mj * (1.0 + 1e-9));
    CHECK(mj > 0.0);
  }
}

TEST_CASE("summation mode and thread count do not change the result") {
  const KernelParams p{2, 5, 1.0};
  const auto cache = enumeration::standard_cache(2, 2);
  const auto z = SiegelPoint::unit_imaginary(2);
  const auto w = doubled_imaginary(2);

  const double kahan = kernel::majorant_sum(p, z, w, cache.elements, kernel::SumMode::kahan);
  const double pairwise =
      kernel::majorant_sum(p, z, w, cache.elements, kernel::SumMode::pairwise);
  CHECK(kahan == doctest::Approx(pairwise).epsilon(1e-13));

  const double one = kernel::majorant_sum(p, z, w, cache.elements, kernel::SumMode::kahan, 1);
  const double four = kernel::majorant_sum(p, z, w, cache.elements, kernel::SumMode::kahan, 4);
  CHECK(one == four);

  const double t1 = kernel::truncated_norm(p, z, w, cache.elements, kernel::SumMode::kahan, 1);
  const double t4 = kernel::truncated_norm(p, z, w, cache.elements, kernel::SumMode::kahan, 4);
  CHECK(t1 == t4);
}

TEST_CASE("decay envelope diagonal value is exact") {
  CHECK(kernel::decay_envelope(KernelParams{2, 10, 1.0}, 0.0) == 1000.0);
  CHECK(kernel::decay_envelope(KernelParams{2, 4, 1.0}, 0.0) == 64.0);

  const KernelParams p{2, 10, 1.0};
  double prev = kernel::decay_envelope(p, 0.0);
  for (double d : {0.5, 1.0, 2.0, 4.0}) {
    const double cur = kernel::decay_envelope(p, d);
    CHECK(cur < prev);
    prev = cur;
  }
  const double c = 1.0 / (2.0 * std::sqrt(2.0));
  CHECK(kernel::decay_envelope(p, 3.0) ==
        doctest::Approx(1000.0 * std::exp(-24.0 * volumes::log_cosh(3.0 * c))).epsilon(1e-12));

  // Weight too small for a positive decay exponent.
  CHECK_THROWS_AS((void)kernel::decay_envelope(KernelParams{2, 1, 1.0}, 1.0), ParameterError);
}

TEST_CASE("height envelope on the doubled base point") {
  const KernelParams p{2, 4, 1.0};
  const auto z = SiegelPoint::unit_imaginary(2);
  const auto w = doubled_imaginary(2);
  const auto ce = kernel::cusp_envelope(p, z, w);
  // k^{g(g+1)/4} (det 4Y)^{w/2} / (det V)^{(w-g-1)/2} = 8 * 2^24 / 2^9.
  CHECK(ce.first == doctest::Approx(262144.0).epsilon(1e-12));
  CHECK(ce.log_first == doctest::Approx(std::log(ce.first)).epsilon(1e-12));
  CHECK(ce.total == doctest::Approx(ce.first + ce.far).epsilon(1e-14));

  CHECK_THROWS_AS((void)kernel::cusp_envelope(p, w, z), PreconditionError);
  CHECK_THROWS_AS((void)kernel::cusp_envelope(p, z, z), PreconditionError);

  const auto [lo, hi] = kernel::orient_by_height(w, z);
  CHECK(matkit::det_real(hi.y()) > matkit::det_real(lo.y()));
}

TEST_CASE("orbit-sum bound assembles three terms") {
  const auto ob = kernel::orbit_sum_bound(2, 100.0, 2.0, 0.3, 0.5, {}, 0.25);
  CHECK(ob.counting_term == 0.25);
  CHECK(ob.total == doctest::Approx(0.25000000009778839).epsilon(1e-9));
  CHECK(ob.volume_term == doctest::Approx(2.7509245519112337e-14).epsilon(1e-6));
  CHECK(ob.tail_term == doctest::Approx(9.776087775076439e-11).epsilon(1e-6));
  CHECK(ob.tail_panels >= 1);
  CHECK(ob.total == doctest::Approx(ob.counting_term + ob.volume_term + ob.tail_term));

  // Sharper decay shrinks everything except the pass-through count.
  const auto sharper = kernel::orbit_sum_bound(2, 150.0, 2.0, 0.3, 0.5, {}, 0.25);
  CHECK(sharper.tail_term < ob.tail_term);
  CHECK(sharper.volume_term < ob.volume_term);

  CHECK_THROWS_AS((void)kernel::orbit_sum_bound(2, 6.0, 2.0, 0.3, 0.5), ParameterError);
  CHECK_THROWS_AS((void)kernel::orbit_sum_bound(2, 100.0, 0.2, 0.3, 0.5), PreconditionError);
  CHECK_THROWS_AS((void)kernel::orbit_sum_bound(2, 100.0, 2.0, 0.3, 0.0), DomainError);
}

TEST_CASE("bound report mirrors its inputs") {
  const KernelParams p{2, 4, 1.0};
  const auto z = SiegelPoint::unit_imaginary(2);
  const auto w = doubled_imaginary(2);
  const auto rep = kernel::compare_bound(p, 2.0, 8.0, z, w);
  CHECK(rep.lhs == 2.0);
  CHECK(rep.rhs == 8.0);
  CHECK(rep.ratio == doctest::Approx(0.25));
  CHECK(rep.distance == doctest::Approx(siegel::distance(z, w)).epsilon(1e-14));
  CHECK(rep.det_y == doctest::Approx(1.0));
  CHECK(rep.det_v == doctest::Approx(4.0));
}

}  // TEST_SUITE
