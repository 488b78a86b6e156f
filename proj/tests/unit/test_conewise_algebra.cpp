#include "../support/properties.hpp"

#include "nhodge/conewise_algebra.hpp"
#include "nhodge/monodromy.hpp"

#include <doctest.h>

using namespace nhodge;

TEST_CASE("H of the square fan") {
  const StackyFan fan = StackyFan::from_polytope(testing::bundled("square"));
  const GradedClassSpace h(fan);
  CHECK(h.dims() == std::vector<std::size_t>{1, 2, 1});
  // <x_sigma> = 1 / mult(sigma) = 1/2 on every maximal cone
  for (ConeId c : fan.maximal_cones()) {
    Exponents e(fan.ray_count(), 0);
    for (auto r : fan.cone(c)) e[r] = 1;
    CHECK(h.evaluate(h.class_of(e)) == Rational(1, 2));
  }
  // a non-cone monomial is zero
  Exponents opposite(fan.ray_count(), 0);
  opposite[0] = opposite[3] = 1;  // (1,1) and (-1,-1)
  const RatVector z = h.class_of(opposite);
  for (const auto& x : z) CHECK(x == 0);
}

TEST_CASE("segment: H = Q[x]/x^2 style, l nonzero") {
  const StackyFan fan = StackyFan::from_polytope(testing::bundled("segment"));
  const GradedClassSpace h(fan);
  CHECK(h.dims() == std::vector<std::size_t>{1, 1});
  CHECK(rank(h.lefschetz(0)) == 1);
  const HodgeRiemannReport hr = hodge_riemann_check(h);
  CHECK(hr.passed);
}

TEST_CASE("algebra of every cone of every bundled polytope") {
  for (const auto& name : bundled_names()) {
    const StackyFan fan = StackyFan::from_polytope(testing::bundled(name));
    for (ConeId c = 0; c < fan.cones().size(); ++c) {
      const testing::PropertyResult r = testing::check_cone_algebra(fan, c);
      CHECK_MESSAGE(r.ok, name << " cone " << c << ": " << r.detail);
    }
  }
}

TEST_CASE("hard Lefschetz ranks on the octahedron") {
  const GradedClassSpace h(StackyFan::from_polytope(testing::bundled("octahedron")));
  const LefschetzReport r = hard_lefschetz_check(h);
  CHECK(r.passed);
  CHECK(r.ranks == r.expected);
  CHECK(r.expected == std::vector<std::size_t>{1, 3});
}

TEST_CASE("algebra does not depend on the quotient basis") {
  const StackyFan fan = StackyFan::from_polytope(testing::bundled("octahedron"));
  const QuotientFan q = fan.quotient(*fan.find_cone({0}));
  const QuotientFan moved = q.with_basis_change(IntMatrix{{2, 1}, {1, 1}});
  const GradedClassSpace a(q.fan), b(moved.fan);
  CHECK(a.dims() == b.dims());
  CHECK(hard_lefschetz_check(b).passed);
  CHECK(hodge_riemann_check(b).passed);
  // evaluation of the top class of a maximal cone is basis-independent
  for (ConeId c : q.fan.maximal_cones()) {
    Exponents e(q.fan.ray_count(), 0);
    for (auto r : q.fan.cone(c)) e[r] = 1;
    CHECK(a.evaluate(a.class_of(e)) == b.evaluate(b.class_of(e)));
  }
}

TEST_CASE("monodromy filtration of a single Jordan block") {
  // N e1 = e2, N e2 = e3: weights 2, 0, -2
  RatMatrix n(3, 3, Rational(0));
  n(1, 0) = 1;
  n(2, 1) = 1;
  const MonodromyFiltration m = MonodromyFiltration::compute(n);
  CHECK(m.order() == 3);
  CHECK(m.graded_dim(2) == 1);
  CHECK(m.graded_dim(1) == 0);
  CHECK(m.graded_dim(0) == 1);
  CHECK(m.graded_dim(-2) == 1);
  CHECK(m.level(-2).contains(RatVector{Rational(0), Rational(0), Rational(1)}));
  CHECK(m.lowers_by_two());
  CHECK(m.has_symmetric_isomorphisms());
}

TEST_CASE("monodromy filtration of blocks of different sizes") {
  // J2 (+) J1: weights {1,-1} and {0}
  RatMatrix n(3, 3, Rational(0));
  n(1, 0) = 1;
  const MonodromyFiltration m = MonodromyFiltration::compute(n);
  CHECK(m.graded_dim(1) == 1);
  CHECK(m.graded_dim(0) == 1);
  CHECK(m.graded_dim(-1) == 1);
  CHECK(m.has_symmetric_isomorphisms());
  CHECK_THROWS_AS(MonodromyFiltration::compute(RatMatrix::identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(MonodromyFiltration::compute(RatMatrix(2, 3, Rational(0))), std::invalid_argument);
}

TEST_CASE("monodromy filtration of l on H(square) has graded pieces (1,2,1)") {
  const GradedClassSpace h(StackyFan::from_polytope(testing::bundled("square")));
  const MonodromyFiltration m = MonodromyFiltration::compute(h.total_lefschetz());
  CHECK(m.graded_dim(2) == 1);
  CHECK(m.graded_dim(0) == 2);
  CHECK(m.graded_dim(-2) == 1);
  CHECK(m.graded_dim(1) == 0);
}
