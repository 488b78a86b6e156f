#include "nhodge/cli_io.hpp"
#include "nhodge/polytope.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace nhodge;

namespace {

IntVector pt(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

PolytopeDefect defect_of(std::vector<IntVector> vs) {
  try {
    LatticePolytope::validate(std::move(vs));
  } catch (const PolytopeError& e) {
    return e.defect();
  }
  FAIL("expected a validation error");
  return PolytopeDefect::malformed;
}

}  // namespace

TEST_CASE("segment") {
  const LatticePolytope p = LatticePolytope::validate({pt({1}), pt({-1})});
  CHECK(p.rank() == 1);
  CHECK(p.facets().size() == 2);
  CHECK(p.normalized_volume() == 2);
  CHECK(p.degree(pt({3})) == 3);
  CHECK(p.degree(pt({-2})) == 2);
}

TEST_CASE("square facets and degree") {
  const LatticePolytope p = build_polytope(builtin_spec("square"));
  CHECK(p.facets().size() == 4);
  CHECK(p.normalized_volume() == 8);
  for (const auto& f : p.facets())
    for (std::size_t v : f.face.vertices) CHECK(dot(f.normal, to_rational(p.vertex(v))) == 1);
  CHECK(p.degree(pt({1, 0})) == 1);
  CHECK(p.degree(pt({2, 1})) == 2);
  CHECK(p.degree(pt({0, 0})) == 0);
}

TEST_CASE("triangle with a non-primitive vertex has half-integral degrees") {
  const LatticePolytope p = build_polytope(builtin_spec("triangle2"));
  CHECK(p.normalized_volume() == 5);
  CHECK(p.degree(pt({0, 1})) == Rational(1, 2));
  const ConeLocation loc = p.locate(to_rational(pt({0, 1})));
  CHECK(loc.degree == Rational(1, 2));
}

TEST_CASE("degree is positively homogeneous and subadditive") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-6, 6);
  for (const auto& name : bundled_names()) {
    const LatticePolytope p = build_polytope(builtin_spec(name));
    for (int t = 0; t < 100; ++t) {
      IntVector x(p.rank()), y(p.rank());
      for (auto& v : x) v = c(rng);
      for (auto& v : y) v = c(rng);
      const long k = 1 + static_cast<long>(rng() % 4);
      IntVector kx = x, sum = x;
      for (std::size_t i = 0; i < x.size(); ++i) {
        kx[i] *= k;
        sum[i] += y[i];
      }
      CHECK(p.degree(kx) == k * p.degree(x));
      CHECK(p.degree(sum) <= p.degree(x) + p.degree(y));
      CHECK(p.degree(x) == p.degree(to_rational(x)));
    }
  }
}

TEST_CASE("validation reports each violated assumption") {
  CHECK(defect_of({}) == PolytopeDefect::malformed);
  CHECK(defect_of({pt({1, 0}), pt({2, 0})}) == PolytopeDefect::not_full_dimensional);
  CHECK(defect_of({pt({1, 0}), pt({0, 1}), pt({1, 1})}) == PolytopeDefect::origin_not_interior);
  CHECK(defect_of({pt({1, 0}), pt({0, 1}), pt({-1, -1}), pt({1, 0})}) == PolytopeDefect::redundant_point);
  CHECK(defect_of({pt({1, 0}), pt({0, 1}), pt({-1, -1}), pt({0, 0})}) == PolytopeDefect::redundant_point);
  CHECK(defect_of({pt({1, 0}), pt({0, 1, 2})}) == PolytopeDefect::malformed);
  CHECK(defect_of(builtin_spec("cube").vertices) == PolytopeDefect::not_simplicial);
  CHECK(std::string(to_string(PolytopeDefect::not_simplicial)) == "not-simplicial");
}

TEST_CASE("cube is rejected with the offending facet size") {
  try {
    build_polytope(builtin_spec("cube"));
    FAIL("cube accepted");
  } catch (const PolytopeError& e) {
    CHECK(std::string(e.what()).find("4 vertices") != std::string::npos);
  }
}

TEST_CASE("Euler relation on the face lattice") {
  for (const auto& name : bundled_names()) {
    const LatticePolytope p = build_polytope(builtin_spec(name));
    std::map<int, long> f;
    for (const auto& face : p.all_faces()) ++f[face.dim()];
    CHECK(f[-1] == 1);
    long euler = 0;
    for (int d = 0; d < static_cast<int>(p.rank()); ++d) euler += (d % 2 == 0 ? 1 : -1) * f[d];
    // boundary of an n-polytope is an (n-1)-sphere
    CHECK(euler == (p.rank() % 2 == 1 ? 2 : 0));
  }
}
