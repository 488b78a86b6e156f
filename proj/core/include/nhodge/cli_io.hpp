#pragma once

// Input documents, bundled examples and the command pipelines behind the
// `nhodge` executable. Every command returns its rendered output together
// with the process exit code so it can be driven from tests directly.

#include "nhodge/hodge_diamond.hpp"
#include "nhodge/jacobian_oracle.hpp"
#include "nhodge/polytope.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nhodge {

/// Malformed input document or option value.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {"name", "rank", "vertices", "coefficients": {"idx": "a/b"}, "seed"}
struct PolytopeSpec {
  std::string name;
  std::size_t rank = 0;
  std::vector<IntVector> vertices;
  std::map<std::size_t, Rational> coefficients;  // missing entries default to 1
  std::optional<std::uint64_t> seed;
};

PolytopeSpec parse_polytope_spec(std::string_view json_text);
PolytopeSpec load_polytope_spec(const std::filesystem::path& file);
std::string to_json(const PolytopeSpec& spec);

/// segment, square, triangle, triangle2, octahedron (the bundled corpus)
/// plus cube, which is deliberately not simplicial.
std::vector<std::string> builtin_names();
std::vector<std::string> bundled_names();
PolytopeSpec builtin_spec(std::string_view name);

/// Throws PolytopeError; a rank field disagreeing with the coordinates is malformed.
LatticePolytope build_polytope(const PolytopeSpec& spec);

/// "ones", "random:SEED", "spec" (the document's own coefficients) or a path
/// to a JSON object {"idx": "a/b"}.
CoefficientAssignment resolve_coefficients(std::string_view option, const PolytopeSpec& spec);

Rational parse_rational(std::string_view text);  // throws SpecError

enum ExitCode : int { exit_pass = 0, exit_invalid_input = 1, exit_mismatch = 2, exit_internal = 3 };

struct RunConfig {
  RenderFormat format = RenderFormat::ascii;
  std::string coeffs = "spec";
  bool literal_box = false;
  bool dump_matrices = false;
  std::optional<std::uint64_t> prime;
  unsigned jobs = 1;
};

struct CommandResult {
  int exit_code = exit_pass;
  std::string output;
};

CommandResult cmd_validate(const PolytopeSpec& spec, const RunConfig& config);
CommandResult cmd_fan(const PolytopeSpec& spec, const RunConfig& config);
CommandResult cmd_box(const PolytopeSpec& spec, const RunConfig& config);
CommandResult cmd_diamond(const PolytopeSpec& spec, const RunConfig& config);
CommandResult cmd_spectrum(const PolytopeSpec& spec, const RunConfig& config);
CommandResult cmd_verify(const PolytopeSpec& spec, const RunConfig& config);

struct FuzzConfig {
  std::size_t rank = 2;
  long bound = 3;
  long max_volume = 60;
  std::size_t count = 20;
  std::uint64_t seed = 1;
  std::size_t coefficient_seeds = 3;
  bool weight_checks = true;  // run the [f] checks for the all-ones assignment
};

struct FuzzCase {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<IntVector> vertices;
  Integer volume = 0;
  bool passed = true;
  std::string detail;
  double seconds = 0;
};

struct FuzzSummary {
  std::vector<FuzzCase> cases;
  std::size_t passed = 0;
  std::size_t rejected_samples = 0;
};

/// Rejection-samples a valid simplicial polytope with coordinates in
/// [-bound, bound] and n!vol <= max_volume; nullopt after `attempts` misses.
std::optional<LatticePolytope> sample_polytope(std::uint64_t seed, std::size_t rank, long bound, long max_volume,
                                               std::size_t attempts = 20000,
                                               std::size_t* rejected = nullptr);

/// Runs the diamond pipeline and the oracle (all-ones plus seeded
/// coefficient sets) on one polytope; failures are reported, not thrown.
FuzzCase check_polytope(const LatticePolytope& p, std::uint64_t seed, const FuzzConfig& config,
                        const RunConfig& run);

FuzzSummary run_fuzz(const FuzzConfig& config, const RunConfig& run);
CommandResult cmd_fuzz(const FuzzConfig& config, const RunConfig& run);

}  // namespace nhodge
