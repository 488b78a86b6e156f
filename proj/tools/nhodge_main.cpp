// nhodge: Hodge diamonds and spectra of Laurent polynomials with simplicial
// Newton polytope, plus an exact Jacobian-ring cross-check.

#include "nhodge/cli_io.hpp"
#include "nhodge/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Input {
  std::string file;
  std::string example;
};

void add_input(CLI::App* cmd, Input& in) {
  auto* file = cmd->add_option("file", in.file, "polytope spec (JSON)");
  auto* example = cmd->add_option("--example", in.example, "bundled polytope instead of a file");
  file->excludes(example);
}

nhodge::PolytopeSpec load(const Input& in) {
  if (!in.example.empty()) return nhodge::builtin_spec(in.example);
  if (in.file.empty()) throw nhodge::SpecError("no input: give a spec file or --example NAME");
  return nhodge::load_polytope_spec(in.file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hodge diamonds, spectra and Jacobian-ring checks for simplicial Newton polytopes"};
  app.require_subcommand(1);
  app.fallthrough();

  nhodge::RunConfig config;
  std::string format = "ascii";
  std::uint64_t prime = 0;
  app.add_option("--format", format, "ascii | json")->check(CLI::IsMember({"ascii", "json"}));
  app.add_option("--coeffs", config.coeffs, "spec | ones | random:SEED | FILE");
  app.add_flag("--diagnostic-literal-box", config.literal_box, "also report the literal Box(sigma) counts");
  app.add_flag("--dump-matrices", config.dump_matrices, "include the [f] matrices in verify output");
  app.add_option("--prime", prime, "modular rank precheck prime");
  app.add_option("--jobs", config.jobs, "worker threads for the oracle")->check(CLI::PositiveNumber);

  Input in;
  std::vector<std::pair<CLI::App*, nhodge::CommandResult (*)(const nhodge::PolytopeSpec&, const nhodge::RunConfig&)>>
      verbs = {
          {app.add_subcommand("validate", "check the polytope assumptions"), nhodge::cmd_validate},
          {app.add_subcommand("fan", "face fan with markings and h-vector"), nhodge::cmd_fan},
          {app.add_subcommand("box", "box elements with degrees"), nhodge::cmd_box},
          {app.add_subcommand("diamond", "HD_0, HD_!=0 and spectrum"), nhodge::cmd_diamond},
          {app.add_subcommand("spectrum", "spectrum only"), nhodge::cmd_spectrum},
          {app.add_subcommand("verify", "Jacobian-ring oracle against the combinatorics"), nhodge::cmd_verify},
      };
  for (auto& [cmd, fn] : verbs) add_input(cmd, in);

  nhodge::FuzzConfig fuzz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "random polytopes through diamond + verify");
  fuzz_cmd->add_option("--rank", fuzz.rank)->required();
  fuzz_cmd->add_option("--bound", fuzz.bound, "coordinate bound")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--max-volume", fuzz.max_volume, "bound on n!vol(P)")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--count", fuzz.count);
  fuzz_cmd->add_option("--seed", fuzz.seed);
  fuzz_cmd->add_option("--coefficient-seeds", fuzz.coefficient_seeds, "random coefficient sets per polytope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? nhodge::exit_pass : nhodge::exit_invalid_input;
  }

  try {
    config.format = nhodge::parse_render_format(format);
    if (prime != 0) config.prime = prime;
    nhodge::CommandResult result;
    if (fuzz_cmd->parsed()) {
      result = nhodge::cmd_fuzz(fuzz, config);
    } else {
      for (auto& [cmd, fn] : verbs)
        if (cmd->parsed()) result = fn(load(in), config);
    }
    (result.exit_code == nhodge::exit_pass || result.exit_code == nhodge::exit_mismatch ? std::cout : std::cerr)
        << result.output;
    return result.exit_code;
  } catch (const nhodge::SpecError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return nhodge::exit_invalid_input;
  } catch (const nhodge::PolytopeError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return nhodge::exit_invalid_input;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return nhodge::exit_internal;
  }
}
