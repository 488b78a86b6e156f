#include "nhodge/cli_io.hpp"

#include <doctest.h>

#include <fstream>
#include <json.hpp>

using namespace nhodge;

TEST_CASE("spec parsing") {
  const PolytopeSpec s = parse_polytope_spec(
      R"({"name": "t", "rank": 2, "vertices": [[1,0],[0,2],[-1,-1]], "coefficients": {"1": "3/2"}, "seed": 9})");
  CHECK(s.name == "t");
  CHECK(s.rank == 2);
  CHECK(s.vertices.size() == 3);
  CHECK(s.coefficients.at(1) == Rational(3, 2));
  CHECK(s.seed == 9u);
  const PolytopeSpec back = parse_polytope_spec(to_json(s));
  CHECK(back.vertices == s.vertices);
  CHECK(back.coefficients == s.coefficients);

  CHECK_THROWS_AS(parse_polytope_spec("{"), SpecError);
  CHECK_THROWS_AS(parse_polytope_spec(R"({"vertices": [[1.5]]})"), SpecError);
  CHECK_THROWS_AS(parse_polytope_spec(R"({"vertices": [[1],[-1]], "coefficients": {"0": "0"}})"), SpecError);
  CHECK_THROWS_AS(parse_polytope_spec(R"({"vertices": [[1],[-1]], "coefficients": {"5": "1"}})"), SpecError);
  CHECK_THROWS_AS(parse_polytope_spec(R"({"vertices": [[1],[-1]], "coefficients": {"0": "1/0"}})"), SpecError);
  CHECK_THROWS_AS(parse_rational("x"), SpecError);
}

TEST_CASE("rank field must match the coordinates") {
  PolytopeSpec s = builtin_spec("square");
  s.rank = 3;
  CHECK_THROWS_AS(build_polytope(s), PolytopeError);
}

TEST_CASE("coefficient resolution") {
  PolytopeSpec s = builtin_spec("segment");
  CHECK(resolve_coefficients("ones", s).values == RatVector{1, 1});
  CHECK(resolve_coefficients("spec", s).describe() == "ones");
  CHECK(resolve_coefficients("random:4", s).seed == 4u);
  CHECK_THROWS_AS(resolve_coefficients("random:x", s), SpecError);
  CHECK_THROWS_AS(resolve_coefficients("/nonexistent/file.json", s), SpecError);
  s.coefficients[1] = Rational(-2);
  CHECK(resolve_coefficients("spec", s).values == RatVector{1, -2});
  s.coefficients.clear();
  s.seed = 12;
  CHECK(resolve_coefficients("spec", s).describe() == "random:12");
}

TEST_CASE("validate command") {
  RunConfig cfg;
  const CommandResult ok = cmd_validate(builtin_spec("segment"), cfg);
  CHECK(ok.exit_code == exit_pass);
  CHECK(ok.output == "valid, n=1, 2 vertices, n!vol=2\n");
  const CommandResult cube = cmd_validate(builtin_spec("cube"), cfg);
  CHECK(cube.exit_code == exit_invalid_input);
  CHECK(cube.output.find("not-simplicial: facet with 4 vertices") != std::string::npos);
  PolytopeSpec flat;
  flat.rank = 2;
  flat.vertices = {IntVector{Integer(1), Integer(0)}, IntVector{Integer(2), Integer(0)}};
  const CommandResult f = cmd_validate(flat, cfg);
  CHECK(f.exit_code == exit_invalid_input);
  CHECK(f.output.find("not-full-dimensional") != std::string::npos);
}

TEST_CASE("diamond command reports the flags") {
  RunConfig cfg;
  cfg.format = RenderFormat::json;
  const CommandResult r = cmd_diamond(builtin_spec("triangle2"), cfg);
  REQUIRE(r.exit_code == exit_pass);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["milnor"] == 5);
  CHECK(j["hodge_tate"] == true);
  CHECK(j["fractional_spectrum"] == true);
  CHECK(j["hd_neq0"]["weight"] == 1);
  CHECK(j["hd_neq0"]["entries"].size() == 2);
  cfg.literal_box = true;
  const auto lit = nlohmann::json::parse(cmd_diamond(builtin_spec("segment"), cfg).output);
  CHECK(lit["diagnostic"]["literal_total_dimension"] == 4);
}

TEST_CASE("commands are deterministic") {
  RunConfig cfg;
  cfg.format = RenderFormat::json;
  for (const auto& name : bundled_names()) {
    CHECK(cmd_diamond(builtin_spec(name), cfg).output == cmd_diamond(builtin_spec(name), cfg).output);
    CHECK(cmd_verify(builtin_spec(name), cfg).output == cmd_verify(builtin_spec(name), cfg).output);
  }
}

TEST_CASE("verify passes on the bundled examples and agrees with diamond on spectra") {
  RunConfig cfg;
  cfg.format = RenderFormat::json;
  for (const auto& name : bundled_names()) {
    const CommandResult v = cmd_verify(builtin_spec(name), cfg);
    CHECK_MESSAGE(v.exit_code == exit_pass, name << "\n" << v.output);
    const auto vj = nlohmann::json::parse(v.output);
    const auto dj = nlohmann::json::parse(cmd_diamond(builtin_spec(name), cfg).output);
    nlohmann::json from_oracle = nlohmann::json::array();
    for (const auto& e : vj["per_degree"]) from_oracle.push_back(e);
    CHECK(from_oracle == dj["spectrum"]);
    CHECK(vj["milnor"] == dj["milnor"]);
  }
  cfg.coeffs = "random:42";
  const auto seeded = nlohmann::json::parse(cmd_verify(builtin_spec("square"), cfg).output);
  CHECK(seeded["seed"] == 42);
  CHECK(seeded["result"] == "pass");
}

TEST_CASE("fuzz") {
  RunConfig run;
  FuzzConfig cfg;
  cfg.count = 0;
  const FuzzSummary empty = run_fuzz(cfg, run);
  CHECK(empty.cases.empty());
  CHECK(cmd_fuzz(cfg, run).exit_code == exit_pass);

  // rank 1: P = [-a, b], spectrum {0, 1} plus j/a and j/b
  cfg.rank = 1;
  cfg.count = 8;
  cfg.seed = 3;
  const FuzzSummary s = run_fuzz(cfg, run);
  CHECK(s.passed == 8);
  for (const auto& c : s.cases) {
    REQUIRE(c.vertices.size() == 2);
    const long x = c.vertices[0][0].get_si(), y = c.vertices[1][0].get_si();
    const long a = std::abs(std::min(x, y)), b = std::max(x, y);
    CHECK(c.volume == a + b);
    PolytopeSpec spec;
    spec.rank = 1;
    spec.vertices = c.vertices;
    RunConfig json_run;
    json_run.format = RenderFormat::json;
    const auto spec_json = nlohmann::json::parse(cmd_spectrum(spec, json_run).output);
    std::map<Rational, std::int64_t> expected{{0, 1}, {1, 1}};
    for (long j = 1; j < a; ++j) ++expected[Rational(j, a)];
    for (long j = 1; j < b; ++j) ++expected[Rational(j, b)];
    std::map<Rational, std::int64_t> got;
    for (const auto& e : spec_json) got[parse_rational(e[0].get<std::string>())] = e[1].get<std::int64_t>();
    CHECK(got == expected);
  }
}
