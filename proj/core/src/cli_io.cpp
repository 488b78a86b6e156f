#include "nhodge/cli_io.hpp"

#include "nhodge/box_points.hpp"
#include "nhodge/errors.hpp"
#include "nhodge/stacky_fan.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

namespace nhodge {

using nlohmann::json;

namespace {

json int_vector_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_si());
  return a;
}

json rat_vector_json(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_string(x));
  return a;
}

json matrix_json(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_string(m(i, j)));
    a.push_back(row);
  }
  return a;
}

std::string vec_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str() + ")";
}

template <class T>
std::string list_string(const std::vector<T>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str() + ")";
}

std::string rays_string(const StackyFan& fan, ConeId c) {
  std::ostringstream os;
  os << '{';
  const RaySet& rays = fan.cone(c);
  for (std::size_t i = 0; i < rays.size(); ++i) os << (i ? "," : "") << rays[i];
  return os.str() + "}";
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

std::string dump(const json& j, RenderFormat) { return j.dump(2) + "\n"; }

// Shared error handling: invalid input -> 1, internal inconsistency -> 3.
template <class Body>
CommandResult guarded(Body body) {
  try {
    return body();
  } catch (const PolytopeError& e) {
    return {exit_invalid_input, std::string("invalid: ") + e.what() + "\n"};
  } catch (const SpecError& e) {
    return {exit_invalid_input, std::string("invalid: ") + e.what() + "\n"};
  } catch (const InternalConsistencyError& e) {
    return {exit_internal, std::string("internal error: ") + e.what() + "\n"};
  }
}

IntVector vertex_from(const std::vector<long>& coords) {
  IntVector v;
  for (long x : coords) v.emplace_back(x);
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0) throw SpecError("bad rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw SpecError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

PolytopeSpec parse_polytope_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("spec must be a JSON object");
  PolytopeSpec spec;
  try {
    spec.name = doc.value("name", std::string("unnamed"));
    if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw SpecError("missing 'vertices' array");
    for (const auto& v : doc["vertices"]) {
      if (!v.is_array()) throw SpecError("each vertex must be an array of integers");
      IntVector vec;
      for (const auto& x : v) {
        if (!x.is_number_integer()) throw SpecError("vertex coordinates must be integers");
        vec.emplace_back(x.get<long>());
      }
      spec.vertices.push_back(std::move(vec));
    }
    if (doc.contains("rank")) {
      if (!doc["rank"].is_number_unsigned()) throw SpecError("'rank' must be a nonnegative integer");
      spec.rank = doc["rank"].get<std::size_t>();
    } else {
      spec.rank = spec.vertices.empty() ? 0 : spec.vertices.front().size();
    }
    if (doc.contains("coefficients")) {
      const auto& c = doc["coefficients"];
      if (!c.is_object()) throw SpecError("'coefficients' must map vertex index to \"a/b\"");
      for (const auto& [key, value] : c.items()) {
        std::size_t idx = 0;
        try {
          std::size_t used = 0;
          idx = std::stoul(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          throw SpecError("coefficient key '" + key + "' is not a vertex index");
        }
        if (idx >= spec.vertices.size()) throw SpecError("coefficient index " + key + " out of range");
        const Rational q = value.is_string() ? parse_rational(value.get<std::string>())
                                             : value.is_number_integer() ? Rational(value.get<long>())
                                                                         : throw SpecError("coefficient must be \"a/b\"");
        if (q == 0) throw SpecError("coefficient of vertex " + key + " is zero");
        spec.coefficients[idx] = q;
      }
    }
    if (doc.contains("seed") && !doc["seed"].is_null()) {
      if (!doc["seed"].is_number_unsigned()) throw SpecError("'seed' must be a nonnegative integer");
      spec.seed = doc["seed"].get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed spec: ") + e.what());
  }
  return spec;
}

PolytopeSpec load_polytope_spec(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw SpecError("cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_polytope_spec(ss.str());
}

std::string to_json(const PolytopeSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["rank"] = spec.rank;
  doc["vertices"] = json::array();
  for (const auto& v : spec.vertices) doc["vertices"].push_back(int_vector_json(v));
  if (!spec.coefficients.empty()) {
    json c = json::object();
    for (const auto& [i, q] : spec.coefficients) c[std::to_string(i)] = rational_string(q);
    doc["coefficients"] = c;
  }
  if (spec.seed) doc["seed"] = *spec.seed;
  return doc.dump(2) + "\n";
}

std::vector<std::string> bundled_names() { return {"segment", "square", "triangle", "triangle2", "octahedron"}; }

std::vector<std::string> builtin_names() {
  auto names = bundled_names();
  names.push_back("cube");
  return names;
}

PolytopeSpec builtin_spec(std::string_view name) {
  PolytopeSpec s;
  s.name = std::string(name);
  std::vector<std::vector<long>> v;
  if (name == "segment") {
    v = {{1}, {-1}};
  } else if (name == "square") {
    v = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  } else if (name == "triangle") {
    v = {{1, 0}, {0, 1}, {-1, -1}};
  } else if (name == "triangle2") {
    v = {{1, 0}, {0, 2}, {-1, -1}};
  } else if (name == "octahedron") {
    v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  } else if (name == "cube") {
    for (long x : {-1, 1})
      for (long y : {-1, 1})
        for (long z : {-1, 1}) v.push_back({x, y, z});
  } else {
    throw SpecError("unknown example '" + std::string(name) + "'");
  }
  for (const auto& c : v) s.vertices.push_back(vertex_from(c));
  s.rank = s.vertices.front().size();
  return s;
}

LatticePolytope build_polytope(const PolytopeSpec& spec) {
  for (const auto& v : spec.vertices)
    if (v.size() != spec.rank)
      throw PolytopeError(PolytopeDefect::malformed,
                          "vertex " + vec_string(v) + " does not have " + std::to_string(spec.rank) + " coordinates");
  return LatticePolytope::validate(spec.vertices);
}

CoefficientAssignment resolve_coefficients(std::string_view option, const PolytopeSpec& spec) {
  const std::size_t count = spec.vertices.size();
  if (option == "ones") return CoefficientAssignment::all_ones(count);
  if (option == "spec" || option.empty()) {
    if (spec.coefficients.empty()) {
      if (spec.seed) return CoefficientAssignment::seeded_random(count, *spec.seed);
      return CoefficientAssignment::all_ones(count);
    }
    RatVector values(count, Rational(1));
    for (const auto& [i, q] : spec.coefficients) values.at(i) = q;
    return CoefficientAssignment::user(std::move(values));
  }
  if (option.starts_with("random:")) {
    const std::string digits(option.substr(7));
    std::uint64_t seed = 0;
    try {
      std::size_t used = 0;
      seed = std::stoull(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
      throw SpecError("bad seed in '" + std::string(option) + "'");
    }
    return CoefficientAssignment::seeded_random(count, seed);
  }
  // a file holding {"idx": "a/b"} (or a whole spec document)
  std::ifstream in{std::string(option)};
  if (!in) throw SpecError("cannot read coefficient file '" + std::string(option) + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("coefficient file is not valid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("coefficients")) doc = doc["coefficients"];
  PolytopeSpec carrier = spec;
  carrier.coefficients.clear();
  carrier.seed.reset();
  json wrapped = {{"vertices", json::array()}, {"coefficients", doc}};
  for (const auto& v : spec.vertices) wrapped["vertices"].push_back(int_vector_json(v));
  carrier.coefficients = parse_polytope_spec(wrapped.dump()).coefficients;
  RatVector values(count, Rational(1));
  for (const auto& [i, q] : carrier.coefficients) values.at(i) = q;
  return CoefficientAssignment::user(std::move(values));
}

CommandResult cmd_validate(const PolytopeSpec& spec, const RunConfig& config) {
  return guarded([&]() -> CommandResult {
    const LatticePolytope p = build_polytope(spec);
    if (config.format == RenderFormat::json) {
      json j = {{"polytope", spec.name},
                {"valid", true},
                {"rank", p.rank()},
                {"vertices", p.vertex_count()},
                {"facets", p.facets().size()},
                {"normalized_volume", p.normalized_volume().get_str()}};
      return {exit_pass, dump(j, config.format)};
    }
    std::ostringstream os;
    os << "valid, n=" << p.rank() << ", " << p.vertex_count() << " vertices, n!vol=" << p.normalized_volume()
       << "\n";
    return {exit_pass, os.str()};
  });
}

CommandResult cmd_fan(const PolytopeSpec& spec, const RunConfig& config) {
  return guarded([&]() -> CommandResult {
    const LatticePolytope p = build_polytope(spec);
    const StackyFan fan = StackyFan::from_polytope(p);
    const FHVector fh = fan.f_and_h_vector(0);
    if (config.format == RenderFormat::json) {
      json rays = json::array();
      for (const auto& r : fan.rays()) rays.push_back(int_vector_json(r));
      json cones = json::array();
      for (ConeId c : fan.maximal_cones())
        cones.push_back({{"rays", fan.cone(c)}, {"multiplicity", fan.multiplicity(c).get_str()}});
      json j = {{"polytope", spec.name}, {"rays", rays}, {"maximal_cones", cones}, {"f", fh.f}, {"h", fh.h}};
      return {exit_pass, dump(j, config.format)};
    }
    std::ostringstream os;
    os << "rays:";
    for (std::size_t i = 0; i < fan.ray_count(); ++i) os << ' ' << i << '=' << vec_string(fan.ray(i));
    os << "\nmaximal cones:\n";
    for (ConeId c : fan.maximal_cones()) os << "  " << rays_string(fan, c) << " mult " << fan.multiplicity(c) << '\n';
    os << "f = " << list_string(fh.f) << "\nh = " << list_string(fh.h) << '\n';
    return {exit_pass, os.str()};
  });
}

CommandResult cmd_box(const PolytopeSpec& spec, const RunConfig& config) {
  return guarded([&]() -> CommandResult {
    const LatticePolytope p = build_polytope(spec);
    const StackyFan fan = StackyFan::from_polytope(p);
    const BoxCatalog boxes(fan);
    if (config.format == RenderFormat::json) {
      json arr = json::array();
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        const BoxElement& b = boxes.element(i);
        arr.push_back({{"u", int_vector_json(b.u)},
                       {"cone", fan.cone(b.cone)},
                       {"lambda", rat_vector_json(b.lambda)},
                       {"degree", rational_string(b.degree)},
                       {"codim", fan.cone_codim(b.cone)},
                       {"inverse", int_vector_json(boxes.element(boxes.inverse_index(i)).u)}});
      }
      return {exit_pass, dump(json{{"polytope", spec.name}, {"box", arr}}, config.format)};
    }
    std::ostringstream os;
    os << boxes.size() << " box elements\n";
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const BoxElement& b = boxes.element(i);
      os << "  u=" << vec_string(b.u) << " cone " << rays_string(fan, b.cone) << " deg " << rational_string(b.degree)
         << " inverse " << vec_string(boxes.element(boxes.inverse_index(i)).u) << '\n';
    }
    return {exit_pass, os.str()};
  });
}

CommandResult cmd_diamond(const PolytopeSpec& spec, const RunConfig& config) {
  return guarded([&]() -> CommandResult {
    const LatticePolytope p = build_polytope(spec);
    const StackyFan fan = StackyFan::from_polytope(p);
    const BoxCatalog boxes(fan);
    const DiamondPair d = assemble_diamonds(fan, boxes);
    const DiamondPair cross = diamonds_from_blocks(fan, boxes);
    if (!(cross.integral == d.integral && cross.fractional == d.fractional))
      throw InternalConsistencyError("block-matrix diamonds differ from the direct assembly");
    const Spectrum s = spectrum(fan, boxes);
    const std::int64_t milnor = s.total();
    if (Integer(static_cast<long>(milnor)) != p.normalized_volume())
      throw InternalConsistencyError("spectrum total differs from n!vol(P)");
    const bool hodge_tate = d.integral.is_diagonal() && d.fractional.is_diagonal();

    if (config.format == RenderFormat::json) {
      json j = {{"polytope", spec.name},
                {"milnor", milnor},
                {"hodge_tate", hodge_tate},
                {"fractional_spectrum", s.has_fractional_values()},
                {"hd0", json::parse(render(d.integral, RenderFormat::json))},
                {"hd_neq0", json::parse(render(d.fractional, RenderFormat::json))},
                {"spectrum", json::parse(render(s, RenderFormat::json))}};
      if (config.literal_box) {
        json counts = json::array();
        for (const auto& [key, m] : n_counts(fan, boxes))
          counts.push_back({fan.cone(key.first), rational_string(key.second), m});
        json literal = json::array();
        std::int64_t literal_dim = 0;
        for (const auto& [key, m] : literal_n_counts(fan, boxes)) {
          literal.push_back({fan.cone(key.first), rational_string(key.second), m});
          for (auto h : fan.f_and_h_vector(key.first).h) literal_dim += m * h;
        }
        j["diagnostic"] = {{"interior_counts", counts}, {"literal_counts", literal}, {"literal_total_dimension", literal_dim}};
      }
      return {exit_pass, dump(j, config.format)};
    }
    std::ostringstream os;
    os << "polytope " << spec.name << "\nmilnor number " << milnor << "\nhodge-tate " << (hodge_tate ? "yes" : "no")
       << "\nfractional spectrum " << (s.has_fractional_values() ? "yes" : "no") << "\n\nHD_0 (weight "
       << d.integral.weight << ")\n"
       << render(d.integral, RenderFormat::ascii) << "\nHD_!=0 (weight " << d.fractional.weight << ")\n"
       << render(d.fractional, RenderFormat::ascii) << "\nspectrum " << render(s, RenderFormat::ascii);
    if (config.literal_box) {
      std::int64_t literal_dim = 0;
      os << "\nliteral box counts n(sigma, alpha):\n";
      for (const auto& [key, m] : literal_n_counts(fan, boxes)) {
        os << "  " << rays_string(fan, key.first) << " " << rational_string(key.second) << ": " << m << '\n';
        for (auto h : fan.f_and_h_vector(key.first).h) literal_dim += m * h;
      }
      os << "literal reading total dimension " << literal_dim << " (interior reading " << milnor << ")\n";
    }
    return {exit_pass, os.str()};
  });
}

CommandResult cmd_spectrum(const PolytopeSpec& spec, const RunConfig& config) {
  return guarded([&]() -> CommandResult {
    const LatticePolytope p = build_polytope(spec);
    const StackyFan fan = StackyFan::from_polytope(p);
    const Spectrum s = spectrum(fan, BoxCatalog(fan));
    if (config.format == RenderFormat::json) return {exit_pass, render(s, RenderFormat::json) + "\n"};
    return {exit_pass, render(s, RenderFormat::ascii)};
  });
}

CommandResult cmd_verify(const PolytopeSpec& spec, const RunConfig& config) {
  return guarded([&]() -> CommandResult {
    const LatticePolytope p = build_polytope(spec);
    const CoefficientAssignment a = resolve_coefficients(config.coeffs, spec);
    const JacobianOracle oracle(p);
    OracleOptions opts;
    opts.prime = config.prime;
    opts.jobs = config.jobs;
    const GradedQuotient q = oracle.graded_jacobian(a, opts);
    const CombinatoricsReport comb = oracle.verify_against_combinatorics(q);
    const WeightReport weight = oracle.weight_and_birkhoff_check(q, a);
    const bool passed = comb.passed && weight.passed;

    json per_degree = json::array();
    for (const auto& [beta, dim] : q.per_degree) per_degree.push_back({rational_string(beta), dim});
    json per_class = json::array();
    for (const auto& b : q.blocks) {
      const BoxElement& u = oracle.boxes().element(b.box_class);
      json entry = {{"u", int_vector_json(u.u)},
                    {"cone", oracle.fan().cone(u.cone)},
                    {"degree", rational_string(u.degree)},
                    {"dims", b.dims},
                    {"expected", oracle.fan().f_and_h_vector(u.cone).h}};
      const ClassWeightResult& w = weight.classes.at(b.box_class);
      if (!w.detail.empty()) entry["detail"] = w.detail;
      if (config.dump_matrices) entry["f_operator"] = matrix_json(b.f_operator);
      per_class.push_back(entry);
    }
    json report = {{"polytope", spec.name},
                   {"coefficients", a.describe()},
                   {"seed", a.seed ? json(*a.seed) : json(nullptr)},
                   {"milnor", q.total},
                   {"normalized_volume", comb.normalized_volume.get_str()},
                   {"per_degree", per_degree},
                   {"per_class", per_class},
                   {"checks",
                    {{"dimensions", verdict(comb.mismatches.empty())},
                     {"total", verdict(comb.total_matches)},
                     {"spectrum_match", verdict(comb.spectrum_matches)},
                     {"lefschetz", verdict(weight.lefschetz)},
                     {"birkhoff", verdict(weight.birkhoff)},
                     {"similarity", verdict(weight.similarity)},
                     {"diamond_match", verdict(weight.diamond_matches)}}},
                   {"result", verdict(passed)}};
    const int code = passed ? exit_pass : exit_mismatch;
    if (config.format == RenderFormat::json) return {code, dump(report, config.format)};

    std::ostringstream os;
    os << "polytope " << spec.name << " coefficients " << a.describe() << "\nmilnor " << q.total << " (n!vol "
       << comb.normalized_volume << ")\nper degree:";
    for (const auto& [beta, dim] : q.per_degree) os << ' ' << rational_string(beta) << ':' << dim;
    os << "\nper class:\n";
    for (const auto& b : q.blocks) {
      const BoxElement& u = oracle.boxes().element(b.box_class);
      os << "  u=" << vec_string(u.u) << " deg " << rational_string(u.degree) << " dims " << list_string(b.dims)
         << " expected " << list_string(oracle.fan().f_and_h_vector(u.cone).h) << '\n';
      if (config.dump_matrices) os << "    [f] = " << b.f_operator << '\n';
    }
    for (const auto& [name, v] : report["checks"].items()) os << name << ": " << v.get<std::string>() << '\n';
    for (const auto& w : weight.classes)
      if (!w.detail.empty()) os << "class " << w.box_class << ": " << w.detail << '\n';
    os << (passed ? "PASS" : "FAIL") << '\n';
    return {code, os.str()};
  });
}

// ---------------------------------------------------------------- fuzzing

std::optional<LatticePolytope> sample_polytope(std::uint64_t seed, std::size_t rank, long bound, long max_volume,
                                               std::size_t attempts, std::size_t* rejected) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-bound, bound);
  std::uniform_int_distribution<std::size_t> extra(0, rank == 1 ? 0 : rank + 1);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    const std::size_t count = rank + 1 + extra(rng);
    std::vector<IntVector> pts;
    for (std::size_t i = 0; i < count; ++i) {
      IntVector v(rank);
      for (auto& x : v) x = coord(rng);
      pts.push_back(std::move(v));
    }
    try {
      LatticePolytope p = LatticePolytope::validate(pts);
      if (p.normalized_volume() <= max_volume) return p;
    } catch (const PolytopeError&) {
    }
    if (rejected) ++*rejected;
  }
  return std::nullopt;
}

FuzzCase check_polytope(const LatticePolytope& p, std::uint64_t seed, const FuzzConfig& config, const RunConfig& run) {
  FuzzCase c;
  c.seed = seed;
  c.vertices = p.vertices();
  c.volume = p.normalized_volume();
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  try {
    const JacobianOracle oracle(p);
    const DiamondPair d = assemble_diamonds(oracle.fan(), oracle.boxes());
    const DiamondPair cross = diamonds_from_blocks(oracle.fan(), oracle.boxes());
    const Spectrum s = spectrum(oracle.fan(), oracle.boxes());
    if (!(cross.integral == d.integral && cross.fractional == d.fractional)) detail << "block diamonds differ; ";
    if (!d.integral.is_symmetric() || !d.fractional.is_symmetric()) detail << "diamond not symmetric; ";
    if (!s.is_symmetric_about(ratio(Integer(static_cast<long>(p.rank())), Integer(2)))) detail << "spectrum not symmetric; ";
    if (Integer(static_cast<long>(s.total())) != c.volume) detail << "spectrum total != n!vol; ";

    std::vector<CoefficientAssignment> assignments{CoefficientAssignment::all_ones(p.vertex_count())};
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = 0; i < config.coefficient_seeds; ++i)
      assignments.push_back(CoefficientAssignment::seeded_random(p.vertex_count(), rng()));
    std::optional<std::vector<std::size_t>> reference;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
      const auto& a = assignments[i];
      OracleOptions opts;
      opts.prime = run.prime;
      opts.jobs = run.jobs;
      opts.build_operator = i == 0 && config.weight_checks;
      const GradedQuotient q = oracle.graded_jacobian(a, opts);
      const CombinatoricsReport r = oracle.verify_against_combinatorics(q);
      if (!r.passed) detail << a.describe() << ": dimensions differ from h-vectors; ";
      std::vector<std::size_t> dims;
      for (const auto& b : q.blocks) dims.insert(dims.end(), b.dims.begin(), b.dims.end());
      if (reference && *reference != dims) detail << a.describe() << ": dims depend on coefficients; ";
      reference = dims;
      if (opts.build_operator) {
        const WeightReport w = oracle.weight_and_birkhoff_check(q, a);
        if (!w.passed) detail << "weight/opposite-filtration checks failed; ";
      }
    }
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  c.detail = detail.str();
  c.passed = c.detail.empty();
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

FuzzSummary run_fuzz(const FuzzConfig& config, const RunConfig& run) {
  FuzzSummary summary;
  std::mt19937_64 seeds(config.seed);
  for (std::size_t i = 0; i < config.count; ++i) {
    const std::uint64_t case_seed = seeds();
    const auto p = sample_polytope(case_seed, config.rank, config.bound, config.max_volume, 20000,
                                   &summary.rejected_samples);
    FuzzCase c;
    if (!p) {
      c.seed = case_seed;
      c.passed = false;
      c.detail = "no valid polytope found";
    } else {
      c = check_polytope(*p, case_seed, config, run);
    }
    c.index = i;
    if (c.passed) ++summary.passed;
    summary.cases.push_back(std::move(c));
  }
  return summary;
}

CommandResult cmd_fuzz(const FuzzConfig& config, const RunConfig& run) {
  return guarded([&]() -> CommandResult {
    if (config.rank == 0) throw SpecError("fuzz rank must be positive");
    const FuzzSummary s = run_fuzz(config, run);
    const int code = s.passed == s.cases.size() ? exit_pass : exit_mismatch;
    if (run.format == RenderFormat::json) {
      json cases = json::array();
      for (const auto& c : s.cases) {
        json verts = json::array();
        for (const auto& v : c.vertices) verts.push_back(int_vector_json(v));
        cases.push_back({{"index", c.index},
                         {"seed", c.seed},
                         {"vertices", verts},
                         {"normalized_volume", c.volume.get_str()},
                         {"result", verdict(c.passed)},
                         {"detail", c.detail}});
      }
      json j = {{"rank", config.rank},
                {"count", config.count},
                {"seed", config.seed},
                {"passed", s.passed},
                {"failed", s.cases.size() - s.passed},
                {"cases", cases}};
      return {code, dump(j, run.format)};
    }
    std::ostringstream os;
    os << "fuzz rank " << config.rank << " bound " << config.bound << " seed " << config.seed << ": " << s.passed << "/"
       << s.cases.size() << " pass\n";
    for (const auto& c : s.cases) {
      os << "  #" << c.index << " seed " << c.seed << " n!vol " << c.volume << ' ' << verdict(c.passed);
      if (!c.passed) os << " -- " << c.detail;
      os << '\n';
    }
    return {code, os.str()};
  });
}

}  // namespace nhodge
