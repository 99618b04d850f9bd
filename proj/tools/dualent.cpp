#include <CLI11.hpp>

#include <dualent/cli/run.hpp>

#include <fstream>
#include <iostream>

using namespace dualent::cli;

int main(int argc, char** argv) {
  CLI::App app{"dualent: dual entropy of group automorphisms"};
  app.fallthrough();
  app.require_subcommand(1);

  Flags flags;
  std::string out_path;
  app.add_option("--delta", flags.delta, "defect threshold");
  app.add_option("--radius", flags.radius, "search radius R");
  app.add_option("--n", flags.n, "growth terms / tower steps");
  app.add_option("--cap", flags.cap, "element budget for set computations");
  app.add_option("--tol", flags.tol, "root-finder tolerance");
  app.add_option("--seed", flags.seed, "seed for verify");
  app.add_option("--format", flags.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");

  std::string spec_path;
  auto* entropy = app.add_subcommand("entropy", "spectral entropy of the automorphism");
  auto* peters = app.add_subcommand("peters", "sumset growth series and rate");
  auto* rank = app.add_subcommand("rank", "amenable delta-rank of omega");
  auto* verify = app.add_subcommand("verify", "run the law suite");
  for (auto* sub : {entropy, peters, rank})
    sub->add_option("spec", spec_path, "spec document (JSON)")->required();
  rank->add_option("--method", flags.method, "lp, interval, parallelepiped or tower")
      ->check(CLI::IsMember({"lp", "interval", "parallelepiped", "tower"}));
  verify->add_option("--suite", flags.suite, "all or one law name");
  verify->add_option("--trials", flags.trials, "random instances per seeded law");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_spec;
  }

  std::string command = app.get_subcommands().front()->get_name();
  std::optional<SpecDocument> doc;
  if (!spec_path.empty()) {
    try {
      doc = parse_spec(spec_path);
    } catch (const SpecError& e) {
      std::cerr << "spec error: " << e.what() << "\n";
      return exit_spec;
    } catch (const IoError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_spec;
    }
  }

  Outcome result = run(command, doc, flags);
  if (!result.error.empty())
    std::cerr << (result.exit_code == exit_spec ? "spec error: " : "error: ") << result.error << "\n";
  if (out_path.empty()) {
    std::cout << result.output;
  } else if (!result.output.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!(f << result.output)) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return exit_computation;
    }
  }
  return result.exit_code;
}
