#include <doctest.h>

#include "catalog.hpp"
#include "levinf/error.hpp"
#include "oracle.hpp"

using namespace levinf;
using namespace testsupport;

TEST_CASE("dual table of the sl(2) action algebroid") {
  const AlgebroidData a = sl2_action_algebroid(4);
  const PoissonTable pi = dual_poisson(a);
  CHECK(pi.n() == 5);
  CHECK(ref_is_poisson(pi));
  CHECK(check_fiberwise_linear(pi, 3));
  // it is the linear table of sl(2) x K^2
  CHECK(pi == PoissonTable::linear(sl2_k2_data().full, 4));
  CHECK(algebroid_from_dual(pi, 3) == a);
}

TEST_CASE("zero anchor with abelian bracket") {
  const AlgebroidData a(2, 2, 3);
  const PoissonTable pi = dual_poisson(a);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(pi.entry(i, j).is_zero());
}

TEST_CASE("anchor must vanish at the origin") {
  AlgebroidData a = sl2_action_algebroid(4);
  a.set_anchor(0, 0, a.anchor(0, 0) + Polynomial::constant(2, Scalar(1)));
  CHECK_THROWS_WITH_AS(dual_poisson(a), doctest::Contains("origin"), DomainError);
}

TEST_CASE("Jacobi failure is reported as a non-algebroid") {
  AlgebroidData a = sl2_action_algebroid(4);
  a.set_anchor(1, 0, Polynomial::variable(2, 0) * Polynomial::variable(2, 0));
  CHECK_THROWS_WITH_AS(dual_poisson(a), doctest::Contains("not a Lie algebroid"), DomainError);
}

TEST_CASE("fiberwise-linear classification") {
  const std::size_t n = 4;  // fibers 0,1; base 2,3
  auto v = [&](std::size_t i) { return Polynomial::variable(n, i); };
  PoissonTable base(n, 3);
  base.set(2, 3, v(2));
  CHECK_FALSE(check_fiberwise_linear(base, 2));
  PoissonTable quad(n, 3);
  quad.set(0, 1, v(0) * v(1));
  CHECK_FALSE(check_fiberwise_linear(quad, 2));
  PoissonTable ok(n, 3);
  ok.set(0, 1, v(0) * v(2));
  ok.set(0, 2, v(3) * v(3));
  CHECK(check_fiberwise_linear(ok, 2));
}

TEST_CASE("read-back is inverse to dualization on perturbed data") {
  Rng rng(3);
  const AlgebroidData a = sl2_k2_action_algebroid(5);
  const PolyMap phi = random_bundle_map(rng, 5, 2, 2, 3, 2);
  CHECK(is_bundle_map(phi, 5));
  const PoissonTable pi = pushforward(dual_poisson(a), phi, 5);
  CHECK(check_fiberwise_linear(pi, 5));
  const AlgebroidData b = algebroid_from_dual(pi, 5);
  CHECK(dual_poisson(b) == pi);
}

TEST_CASE("normalization of algebroids") {
  SUBCASE("linear action algebroid is left alone") {
    const AlgebroidData a = sl2_action_algebroid(4);
    LeviOptions o;
    o.schedule.steps = 2;
    const AlgebroidLeviResult r = algebroid_levi_normalize(a, sl2_data(), o);
    CHECK(r.ok());
    CHECK(r.run.phi.is_identity());
    CHECK(r.normalized == a);
  }
  SUBCASE("perturbed sl(2) action, m = N") {
    Rng rng(7);
    const AlgebroidData lin = sl2_action_algebroid(8);
    const PoissonTable pi = pushforward(dual_poisson(lin), random_bundle_map(rng, 3, 2, 2, 3, 2), 8);
    const AlgebroidData a = algebroid_from_dual(pi, 3);
    LeviOptions o;
    o.schedule.steps = 3;
    const AlgebroidLeviResult r = algebroid_levi_normalize(a, sl2_data(), o);
    CHECK(r.ok());
    CHECK(levi_relation_failures(r.normalized, sl2_data()).empty());
    CHECK(r.normalized == lin);
    for (const auto& s : r.run.log) {
      CHECK(is_bundle_map(PolyMap(s.w.components(), MapRole::CoordinateChange), 3));
      CHECK(check_fiberwise_linear(s.table, 3));
    }
  }
  SUBCASE("fiber algebra with a radical") {
    Rng rng(8);
    const AlgebroidData lin = sl2_k2_action_algebroid(4);
    const PoissonTable pi = pushforward(dual_poisson(lin), random_bundle_map(rng, 5, 2, 2, 3, 2), 4);
    const AlgebroidData a = algebroid_from_dual(pi, 5);
    LeviOptions o;
    o.schedule.steps = 2;
    const AlgebroidLeviResult r = algebroid_levi_normalize(a, sl2_k2_data(), o);
    CHECK(r.ok());
    CHECK(levi_relation_failures(r.normalized, sl2_k2_data()).empty());
  }
  SUBCASE("mismatched fiber algebra") {
    CHECK_THROWS_AS(algebroid_levi_normalize(sl2_action_algebroid(4), so3_data(), LeviOptions{}), DomainError);
  }
}
