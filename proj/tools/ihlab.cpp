#include <CLI11.hpp>
#include <iostream>

#include "ihlab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ihlab: perverse and Hodge tables of H^2-generated cohomology models"};
  app.require_subcommand(1);
  ihlab::RunConfig cfg;
  std::string mode;
  std::size_t budget = 0;
  std::string class_spec;

  auto common = [&](CLI::App* sub, bool needs_model) {
    if (needs_model) sub->add_option("model", cfg.model_path, "Model JSON file")->required();
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("-o,--output", cfg.output_path, "Report path (default: stdout)");
    sub->add_option("--timestamp", cfg.timestamp, "Fixed timestamp for the report metadata");
  };

  auto* build = app.add_subcommand("build-sh", "Build the H^2-generated algebra of a lattice");
  build->add_option("--lattice", cfg.lattice, "k3, toy5, k3n, k3n:<n>, or a Gram JSON file")->required();
  build->add_option("--n", cfg.n, "Half the complex dimension")->capture_default_str();
  common(build, false);

  auto* validate = app.add_subcommand("validate", "Check model axioms and the Fujiki relation");
  common(validate, true);
  validate->add_option("--mode", mode, "exact or modp");

  auto* llv = app.add_subcommand("llv", "Dimension of the Lie algebra generated by sl2-triples");
  common(llv, true);
  llv->add_option("--mode", mode, "exact or modp");
  llv->add_option("--budget", budget, "Maximum closure dimension");

  auto* perverse = app.add_subcommand("perverse", "Perverse numbers for an isotropic class");
  common(perverse, true);
  perverse->add_option("--mode", mode, "exact or modp");
  perverse->add_option("--class", class_spec, "Comma-separated coordinates or sample:k")->required();

  auto* sample = app.add_subcommand("sample-isotropic", "Sample primitive isotropic classes");
  common(sample, true);
  sample->add_option("--count", cfg.count, "Number of samples")->capture_default_str();

  auto* all = app.add_subcommand("check-all", "Run every check on a model");
  common(all, true);
  all->add_option("--mode", mode, "exact or modp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ihlab::kExitInputError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!mode.empty()) cfg.mode = mode;
  if (budget > 0) cfg.budget = budget;
  if (!class_spec.empty()) cfg.class_spec = class_spec;
  return ihlab::run(cfg, std::cout, std::cerr);
}
