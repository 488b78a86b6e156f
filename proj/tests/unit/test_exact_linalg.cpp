#include "nhodge/exact_linalg.hpp"
#include "nhodge/subspace.hpp"

#include <doctest.h>

#include <random>

using namespace nhodge;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  IntMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
  return a;
}

RatMatrix random_rational(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
  RatMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = ratio(Integer(num(rng)), Integer(den(rng)));
  return a;
}

}  // namespace

TEST_CASE("smith normal form of a textbook matrix") {
  // diag(2, 6, 12): the classical example worked by hand
  const IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const SmithDecomposition s = smith_normal_form(a);
  CHECK(s.diagonal() == std::vector<Integer>{2, 6, 12});
  CHECK(s.left * a * s.right == s.S);
  CHECK(s.U * s.S * s.V == a);
  CHECK(s.U * s.left == IntMatrix::identity(3));
  CHECK(s.right * s.V == IntMatrix::identity(3));
}

TEST_CASE("smith normal form: reconstruction and divisibility on random matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
    const IntMatrix a = random_matrix(rng, m, n, 6);
    const SmithDecomposition s = smith_normal_form(a);
    REQUIRE(s.U * s.S * s.V == a);
    REQUIRE(s.left * a * s.right == s.S);
    REQUIRE(s.U * s.left == IntMatrix::identity(m));
    const auto d = s.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] >= 0);
      if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
      if (d[i] == 0 && i + 1 < d.size()) CHECK(d[i + 1] == 0);
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) CHECK(s.S(i, j) == 0);
    CHECK(s.rank() == rank(a));
  }
}

TEST_CASE("bareiss determinant and rank") {
  const IntMatrix a{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  CHECK(integer_determinant(a) == 4);  // Cartan matrix of A3
  const IntMatrix singular{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  CHECK(integer_determinant(singular) == 0);
  CHECK(rank(singular) == 2);
  CHECK(integer_determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK_THROWS_AS(integer_determinant(IntMatrix(2, 3, Integer(0))), std::invalid_argument);
}

TEST_CASE("rank plus nullity equals the column count") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
    RatMatrix a = random_rational(rng, m, n);
    if (t % 3 == 0 && m > 1)  // force a dependency
      for (std::size_t j = 0; j < n; ++j) a(m - 1, j) = a(0, j) * 2;
    const RankNullspace rn = rank_and_nullspace(a);
    CHECK(rn.rank + rn.nullspace.cols() == n);
    CHECK(rn.rank == rank(a));
    CHECK((a * rn.nullspace).is_zero());
    CHECK(rank(rn.nullspace) == rn.nullspace.cols());
    CHECK(rank_mod_p(a, 1000003) <= rn.rank);
  }
}

TEST_CASE("modular rank detects a drop only modulo the prime") {
  const IntMatrix a{{1, 1}, {1, 4}};  // det 3
  CHECK(rank(a) == 2);
  CHECK(rank_mod_p(a, 3) == 1);
  CHECK(rank_mod_p(a, 5) == 2);
}

TEST_CASE("solve, inverse and reduced echelon form") {
  const RatMatrix a{{2, 1}, {1, 3}};
  const auto x = solve_exact(a, {Rational(3), Rational(5)});
  REQUIRE(x);
  CHECK((*x)[0] == Rational(4, 5));
  CHECK((*x)[1] == Rational(7, 5));
  CHECK(inverse(a) * a == RatMatrix::identity(2));
  CHECK_THROWS_AS(inverse(RatMatrix{{1, 2}, {2, 4}}), std::domain_error);
  CHECK_FALSE(solve_exact(RatMatrix{{1, 1}, {1, 1}}, {Rational(1), Rational(2)}));
  const ReducedEchelon r = reduced_row_echelon(RatMatrix{{0, 2, 4}, {1, 1, 1}});
  CHECK(r.pivot_cols == std::vector<std::size_t>{0, 1});
  CHECK(r.matrix(0, 2) == -1);
  CHECK(r.matrix(1, 2) == 2);
  CHECK(determinant(RatMatrix{{1, 2}, {3, 4}}) == -2);
}

TEST_CASE("ratio is canonical") {
  const Rational q = ratio(Integer(-2), Integer(-4));
  CHECK(q.get_num() == 1);
  CHECK(q.get_den() == 2);
  CHECK(q == Rational(1, 2));
}

TEST_CASE("row reducer tracks span and quotient coordinates") {
  RowReducer r(3);
  CHECK(r.insert({Rational(1), Rational(1), Rational(0)}));
  CHECK_FALSE(r.insert({Rational(2), Rational(2), Rational(0)}));
  CHECK(r.insert({Rational(0), Rational(1), Rational(1)}));
  CHECK(r.rank() == 2);
  CHECK(r.free_columns() == std::vector<std::size_t>{2});
  CHECK(r.contains({Rational(1), Rational(0), Rational(-1)}));
  const RatVector red = r.reduce({Rational(1), Rational(0), Rational(0)});
  CHECK(red[0] == 0);
  CHECK(red[1] == 0);
  CHECK(red[2] == 1);  // e1 = (e1+e2) - (e2+e3) + e3
}

TEST_CASE("subspace dimension formula") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const RatMatrix a = random_rational(rng, 5, 1 + rng() % 4);
    const RatMatrix b = random_rational(rng, 5, 1 + rng() % 4);
    const Subspace u = Subspace::image(a), v = Subspace::image(b);
    const Subspace s = u + v, i = u.intersect(v);
    CHECK(s.dim() + i.dim() == u.dim() + v.dim());
    CHECK(s.contains(u));
    CHECK(u.contains(i));
    CHECK(v.contains(i));
  }
  const Subspace k = Subspace::kernel(RatMatrix{{1, 1, 0}});
  CHECK(k.dim() == 2);
  CHECK(k.contains(RatVector{Rational(1), Rational(-1), Rational(5)}));
  CHECK(Subspace::whole(3).dim() == 3);
}
