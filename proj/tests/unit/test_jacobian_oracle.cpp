#include "../support/properties.hpp"

#include "nhodge/jacobian_oracle.hpp"
#include "nhodge/monodromy.hpp"

#include <doctest.h>

#include <set>

using namespace nhodge;

namespace {

IntVector pt(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::set<IntVector> points_at(const JacobianOracle& o, const Rational& beta) {
  std::set<IntVector> out;
  for (std::size_t i : o.basis().at_degree(beta)) out.insert(o.basis().point(i).w);
  return out;
}

const ClassBlock& block_of(const GradedQuotient& q, const JacobianOracle& o, const IntVector& u) {
  return q.blocks.at(*o.boxes().find(u));
}

}  // namespace

TEST_CASE("graded monomial basis") {
  const JacobianOracle seg(testing::bundled("segment"));
  CHECK(points_at(seg, 0) == std::set<IntVector>{pt({0})});
  CHECK(points_at(seg, 1) == std::set<IntVector>{pt({1}), pt({-1})});
  const JacobianOracle sq(testing::bundled("square"));
  CHECK(points_at(sq, 0) == std::set<IntVector>{pt({0, 0})});
  CHECK(points_at(sq, 1).size() == 8);
  CHECK(points_at(sq, 2).size() == 16);
  // each degree is partitioned by box class
  for (const Rational& beta : sq.basis().degrees()) {
    std::size_t by_class = 0;
    for (std::size_t c = 0; c < sq.boxes().size(); ++c) {
      const Rational k = beta - sq.boxes().element(c).degree;
      if (k >= 0 && k.get_den() == 1) by_class += sq.basis().of_class(c, k.get_num().get_ui()).size();
    }
    CHECK(by_class == sq.basis().at_degree(beta).size());
  }
}

TEST_CASE("multiplication matrices") {
  const JacobianOracle seg(testing::bundled("segment"));
  const auto ones = CoefficientAssignment::all_ones(2);
  // t d/dt f = t - t^-1; degree-1 basis is sorted (-1), (1)
  const RatMatrix m = seg.multiplication_matrix(seg.log_derivative_coeffs(ones, 0), 0);
  CHECK(m == RatMatrix{{-1}, {1}});
  const auto a = CoefficientAssignment::user({Rational(3), Rational(5)});
  CHECK(seg.multiplication_matrix(seg.log_derivative_coeffs(a, 0), 0) == RatMatrix{{-5}, {3}});
  // f itself on the basis {0}: every vertex is cofacial with 0
  CHECK(seg.multiplication_matrix(seg.log_derivative_coeffs(a, 1), 0) == RatMatrix{{5}, {3}});

  const JacobianOracle sq(testing::bundled("square"));
  const auto sq_ones = CoefficientAssignment::all_ones(4);
  const RatMatrix f = sq.multiplication_matrix(sq_ones.values, 1);
  const auto& cols = sq.basis().at_degree(1);
  const auto& rows = sq.basis().at_degree(2);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (sq.basis().point(cols[j]).w != pt({1, 0})) continue;
    std::set<IntVector> targets;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (f(i, j) != 0) targets.insert(sq.basis().point(rows[i]).w);
    // only (1,1) and (1,-1) are cofacial with (1,0)
    CHECK(targets == std::set<IntVector>{pt({2, 1}), pt({2, -1})});
  }
}

TEST_CASE("multiplication preserves box class") {
  for (const auto& name : bundled_names()) {
    const JacobianOracle o(testing::bundled(name));
    const auto a = CoefficientAssignment::seeded_random(o.polytope().vertex_count(), 8);
    for (std::size_t i = 0; i <= o.polytope().rank(); ++i) {
      const RatVector coeffs = o.log_derivative_coeffs(a, i);
      for (const Rational& beta : o.basis().degrees()) {
        const RatMatrix m = o.multiplication_matrix(coeffs, beta);
        const auto& cols = o.basis().at_degree(beta);
        const auto& rows = o.basis().at_degree(beta + 1);
        for (std::size_t r = 0; r < m.rows(); ++r)
          for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0) CHECK(o.basis().point(rows[r]).box_class == o.basis().point(cols[c]).box_class);
      }
    }
  }
}

TEST_CASE("graded Jacobian dimensions") {
  SUBCASE("segment") {
    const JacobianOracle o(testing::bundled("segment"));
    const GradedQuotient q = o.graded_jacobian(CoefficientAssignment::all_ones(2));
    CHECK(q.total == 2);
    CHECK(block_of(q, o, pt({0})).dims == std::vector<std::size_t>{1, 1});
  }
  SUBCASE("square") {
    const JacobianOracle o(testing::bundled("square"));
    const GradedQuotient q = o.graded_jacobian(CoefficientAssignment::all_ones(4));
    CHECK(q.per_degree == std::map<Rational, std::size_t>{{0, 1}, {1, 6}, {2, 1}});
    CHECK(block_of(q, o, pt({0, 0})).dims == std::vector<std::size_t>{1, 2, 1});
    for (const auto& u : {pt({1, 0}), pt({0, 1}), pt({-1, 0}), pt({0, -1})})
      CHECK(block_of(q, o, u).dims.front() == 1);
  }
  SUBCASE("triangle2") {
    const JacobianOracle o(testing::bundled("triangle2"));
    const GradedQuotient q = o.graded_jacobian(CoefficientAssignment::all_ones(3));
    CHECK(q.total == 5);
    CHECK(block_of(q, o, pt({0, 0})).dims == std::vector<std::size_t>{1, 1, 1});
    CHECK(block_of(q, o, pt({0, 1})).dims == std::vector<std::size_t>{1, 1});
    CHECK(q.per_degree.at(Rational(1, 2)) == 1);
    CHECK(q.per_degree.at(Rational(3, 2)) == 1);
  }
}

TEST_CASE("oracle agrees with the combinatorics for several coefficient choices") {
  for (const auto& name : bundled_names()) {
    const JacobianOracle o(testing::bundled(name));
    const std::size_t m = o.polytope().vertex_count();
    std::optional<std::map<Rational, std::size_t>> reference;
    for (const auto& a : {CoefficientAssignment::all_ones(m), CoefficientAssignment::seeded_random(m, 1),
                          CoefficientAssignment::seeded_random(m, 2), CoefficientAssignment::seeded_random(m, 42)}) {
      const GradedQuotient q = o.graded_jacobian(a);
      const CombinatoricsReport r = o.verify_against_combinatorics(q);
      CHECK_MESSAGE(r.passed, name << " " << a.describe());
      CHECK(Integer(static_cast<unsigned long>(q.total)) == o.polytope().normalized_volume());
      if (reference) CHECK(*reference == q.per_degree);
      reference = q.per_degree;
      const WeightReport w = o.weight_and_birkhoff_check(q, a);
      CHECK_MESSAGE(w.passed, name << " " << a.describe());
    }
  }
}

TEST_CASE("[f] on the class-0 blocks") {
  SUBCASE("segment: one Jordan block of size 2") {
    const JacobianOracle o(testing::bundled("segment"));
    const GradedQuotient q = o.graded_jacobian(CoefficientAssignment::all_ones(2));
    const ClassBlock& b = block_of(q, o, pt({0}));
    REQUIRE(b.f_operator.rows() == 2);
    CHECK_FALSE(b.f_operator.is_zero());
    CHECK((b.f_operator * b.f_operator).is_zero());
    const MonodromyFiltration m = MonodromyFiltration::compute(b.f_operator);
    CHECK(m.graded_dim(1) == 1);
    CHECK(m.graded_dim(-1) == 1);
  }
  SUBCASE("square: [f]^2 != 0 and [f]^3 = 0") {
    const JacobianOracle o(testing::bundled("square"));
    const GradedQuotient q = o.graded_jacobian(CoefficientAssignment::all_ones(4));
    const ClassBlock& b = block_of(q, o, pt({0, 0}));
    CHECK_FALSE(matrix_power(b.f_operator, 2).is_zero());
    CHECK(matrix_power(b.f_operator, 3).is_zero());
    const WeightReport w = o.weight_and_birkhoff_check(q, CoefficientAssignment::all_ones(4));
    CHECK(w.classes.at(*o.boxes().find(pt({0, 0}))).graded_weight_dims ==
          std::vector<std::size_t>{1, 0, 2, 0, 1});
  }
}

TEST_CASE("monodromy properties on every block of the bundled polytopes") {
  for (const auto& name : bundled_names()) {
    const JacobianOracle o(testing::bundled(name));
    const GradedQuotient q = o.graded_jacobian(CoefficientAssignment::all_ones(o.polytope().vertex_count()));
    for (const auto& b : q.blocks) {
      const testing::PropertyResult r = testing::check_block_monodromy(b);
      CHECK_MESSAGE(r.ok, name << " class " << b.box_class << ": " << r.detail);
    }
  }
}

TEST_CASE("modular precheck and threads do not change the answer") {
  const JacobianOracle o(testing::bundled("octahedron"));
  const auto a = CoefficientAssignment::seeded_random(6, 5);
  const GradedQuotient plain = o.graded_jacobian(a);
  OracleOptions opts;
  opts.prime = 1000003;
  opts.jobs = 4;
  const GradedQuotient other = o.graded_jacobian(a, opts);
  CHECK(plain.per_degree == other.per_degree);
  for (std::size_t i = 0; i < plain.blocks.size(); ++i) {
    CHECK(plain.blocks[i].dims == other.blocks[i].dims);
    CHECK(plain.blocks[i].f_operator == other.blocks[i].f_operator);
  }
}

TEST_CASE("coefficient assignments") {
  CHECK_THROWS_AS(CoefficientAssignment::user({Rational(1), Rational(0)}), std::invalid_argument);
  const auto a = CoefficientAssignment::seeded_random(10, 3);
  const auto b = CoefficientAssignment::seeded_random(10, 3);
  CHECK(a.values == b.values);
  for (const auto& v : a.values) CHECK(v != 0);
  CHECK(a.describe() == "random:3");
  CHECK(CoefficientAssignment::all_ones(2).describe() == "ones");
  const JacobianOracle o(testing::bundled("segment"));
  CHECK_THROWS_AS(o.graded_jacobian(CoefficientAssignment::all_ones(3)), std::invalid_argument);
  const GradedQuotient no_op = o.graded_jacobian(CoefficientAssignment::all_ones(2), {std::nullopt, 1, false});
  CHECK_THROWS_AS(o.weight_and_birkhoff_check(no_op, CoefficientAssignment::all_ones(2)), std::invalid_argument);
}
