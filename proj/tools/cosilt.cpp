#include <CLI11.hpp>

#include <iostream>
#include <utility>

#include "cosilt/cli.hpp"

int main(int argc, char** argv) {
  cosilt::RunConfig cfg;
  CLI::App app{"cosilt: torsion pairs, cosilting pairs and grains of finite-dimensional algebras"};
  app.require_subcommand(1);
  const std::pair<const char*, const char*> commands[] = {
      {"catalog", "list the indecomposables with Hom, Ext and translate tables"},
      {"lattice", "enumerate torsion pairs, Hasse covers and brick labels"},
      {"pairs", "build and verify the cosilting pair of every torsion pair"},
      {"verify", "run the invariant checks"},
      {"reject", "compute reject sequences"}};
  for (auto [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--algebra", cfg.algebra_path, "algebra spec (JSON)")->required();
    sub->add_option("--family", cfg.family, "auto, hereditary, nakayama or explicit");
    sub->add_option("--module", cfg.module_paths, "module spec (JSON); repeatable");
    sub->add_option("--dot", cfg.dot_path, "write the Hasse quiver as DOT");
    sub->add_option("--json", cfg.json_path, "JSON report path");
    sub->add_option("--check", cfg.check, "invariant suite to run, or all");
    sub->add_flag("--assert-complete", cfg.assert_complete, "declare an explicit catalog complete");
    sub->add_option("--budget-subsets", cfg.budget_subsets, "maximum member subsets to test");
    sub->add_option("--budget-submodules", cfg.budget_submodules, "maximum vectors scanned per submodule enumeration");
    sub->add_option("--budget-decompose", cfg.budget_decompose, "maximum endomorphisms in the exhaustive split search");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cosilt::kInput;
  }
  return cosilt::run(cfg, std::cout, std::cerr);
}
