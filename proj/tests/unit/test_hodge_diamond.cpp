#include "../support/properties.hpp"

#include "nhodge/hodge_diamond.hpp"

#include <doctest.h>

using namespace nhodge;

namespace {

struct Computed {
  StackyFan fan;
  BoxCatalog boxes;
  DiamondPair diamonds;
  Spectrum spec;
};

Computed compute(const std::string& name) {
  StackyFan fan = StackyFan::from_polytope(testing::bundled(name));
  BoxCatalog boxes(fan);
  DiamondPair d = assemble_diamonds(fan, boxes);
  Spectrum s = spectrum(fan, boxes);
  return {std::move(fan), std::move(boxes), std::move(d), std::move(s)};
}

HodgeDiamond diagonal(int weight, std::vector<std::int64_t> hs) {
  HodgeDiamond d;
  d.weight = weight;
  for (std::size_t p = 0; p < hs.size(); ++p) d.add(static_cast<int>(p), static_cast<int>(p), hs[p]);
  return d;
}

}  // namespace

TEST_CASE("diamonds and spectra of the bundled polytopes") {
  SUBCASE("segment") {
    const Computed c = compute("segment");
    CHECK(c.diamonds.integral == diagonal(1, {1, 1}));
    CHECK(c.diamonds.fractional.entries.empty());
    CHECK(c.spec.values == std::map<Rational, std::int64_t>{{0, 1}, {1, 1}});
  }
  SUBCASE("square") {
    const Computed c = compute("square");
    CHECK(c.diamonds.integral == diagonal(2, {1, 6, 1}));
    CHECK(c.diamonds.integral.is_diagonal());
    CHECK(c.spec.values == std::map<Rational, std::int64_t>{{0, 1}, {1, 6}, {2, 1}});
  }
  SUBCASE("triangle") {
    const Computed c = compute("triangle");
    CHECK(c.diamonds.integral == diagonal(2, {1, 1, 1}));
    CHECK(c.spec.total() == 3);
  }
  SUBCASE("triangle2") {
    const Computed c = compute("triangle2");
    CHECK(c.diamonds.integral == diagonal(2, {1, 1, 1}));
    CHECK(c.diamonds.fractional == diagonal(1, {1, 1}));
    CHECK(c.spec.values == std::map<Rational, std::int64_t>{
                               {0, 1}, {Rational(1, 2), 1}, {1, 1}, {Rational(3, 2), 1}, {2, 1}});
    CHECK(c.spec.has_fractional_values());
  }
  SUBCASE("octahedron") {
    const Computed c = compute("octahedron");
    CHECK(c.diamonds.integral == diagonal(3, {1, 3, 3, 1}));
    CHECK(c.spec.values == std::map<Rational, std::int64_t>{{0, 1}, {1, 3}, {2, 3}, {3, 1}});
  }
}

TEST_CASE("global symmetries and Milnor number") {
  for (const auto& name : bundled_names()) {
    const Computed c = compute(name);
    CHECK(c.spec.is_symmetric_about(ratio(Integer(static_cast<long>(c.fan.rank())), Integer(2))));
    CHECK(c.diamonds.integral.is_symmetric());
    CHECK(c.diamonds.fractional.is_symmetric());
    CHECK(Integer(static_cast<long>(c.spec.total())) == testing::bundled(name).normalized_volume());
    CHECK(c.diamonds.integral.total() + c.diamonds.fractional.total() == c.spec.total());
    const DiamondPair blocks = diamonds_from_blocks(c.fan, c.boxes);
    CHECK(blocks.integral == c.diamonds.integral);
    CHECK(blocks.fractional == c.diamonds.fractional);
  }
}

TEST_CASE("the literal Box(sigma) reading double counts") {
  // the segment gives total dimension 4 under the literal reading, not 2
  const Computed c = compute("segment");
  std::int64_t literal = 0;
  for (const auto& [key, m] : literal_n_counts(c.fan, c.boxes))
    for (auto h : c.fan.f_and_h_vector(key.first).h) literal += m * h;
  CHECK(literal == 4);
  std::int64_t interior = 0;
  for (const auto& [key, m] : n_counts(c.fan, c.boxes))
    for (auto h : c.fan.f_and_h_vector(key.first).h) interior += m * h;
  CHECK(interior == 2);
}

TEST_CASE("literal block matrix of the zero cone of the square") {
  const Computed c = compute("square");
  const RatMatrix a = literal_block_matrix(c.fan, n_counts(c.fan, c.boxes), 0, Rational(0));
  // h(Sigma_P) = (1,2,1) times n(0, 0..2) = (1, 0, 0)
  CHECK(a == RatMatrix{{1, 0, 0}, {2, 0, 0}, {1, 0, 0}});
  CHECK_THROWS_AS(literal_block_matrix(c.fan, n_counts(c.fan, c.boxes), 0, Rational(1)), std::invalid_argument);
}

TEST_CASE("rendering") {
  const Computed c = compute("segment");
  CHECK(render(c.diamonds.integral, RenderFormat::json) == R"({"entries":[[0,0,1],[1,1,1]],"weight":1})");
  CHECK(render(c.diamonds.integral, RenderFormat::ascii) == "  1\n0   0\n  1\n");
  CHECK(render(c.spec, RenderFormat::ascii) == "0:1 1:1\n");
  const Computed t = compute("triangle2");
  CHECK(render(t.spec, RenderFormat::json) == R"([["0",1],["1/2",1],["1",1],["3/2",1],["2",1]])");
  CHECK(parse_render_format("json") == RenderFormat::json);
  CHECK_THROWS_AS(parse_render_format("xml"), std::invalid_argument);
}

TEST_CASE("diamond bookkeeping") {
  HodgeDiamond d;
  d.weight = 2;
  d.add(0, 1, 2);
  d.add(0, 1, -2);
  CHECK(d.entries.empty());
  d.add(0, 2, 1);
  CHECK_FALSE(d.is_symmetric());
  CHECK_FALSE(d.is_diagonal());
  d.add(2, 0, 1);
  CHECK(d.is_symmetric());
  CHECK(d.total() == 2);
}
