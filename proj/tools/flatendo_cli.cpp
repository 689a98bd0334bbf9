#include "flatendo/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace flatendo;
  CLI::App app{"Exact computations with Bieberbach groups and affine endomorphisms of flat manifolds"};
  app.require_subcommand(1);

  CommandOptions opt;
  bool as_json = false;
  std::string group, map, second, x, y;
  app.add_flag("--json", as_json, "Print the report as JSON");
  app.add_option("--holonomy-cap", opt.holonomy_cap, "Maximum holonomy order during closure")->check(CLI::PositiveNumber);
  app.add_option("--corpus", opt.corpus_dir, "Corpus directory for paper-verify");

  CommandResult result;
  auto group_cmd = [&](const std::string& name, const std::string& help, auto run) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("group", group, "Group file")->required()->check(CLI::ExistingFile);
    sub->callback([&, run] { result = run(); });
    return sub;
  };
  auto group_map_cmd = [&](const std::string& name, const std::string& help, auto run) {
    auto* sub = group_cmd(name, help, run);
    sub->add_option("map", map, "Affine map file")->required()->check(CLI::ExistingFile);
    return sub;
  };

  group_cmd("validate", "Build the group, check torsion-freeness, print canonical form",
            [&] { return cmd_validate(group, opt); });
  auto* check = group_map_cmd("check-endo", "Decide whether an affine map induces an endomorphism",
                              [&] { return cmd_check_endo(group, map, opt); });
  check->add_option("--grid-denominators", opt.grid_denominators, "Denominators of the witness sample grid")
      ->delimiter(',');
  check->add_option("--depth", opt.depth, "Word length of group elements in the witness search");

  auto* classify = app.add_subcommand("classify", "Spectral classification of the linear part");
  classify->add_option("map", map, "Affine map file")->required()->check(CLI::ExistingFile);
  classify->callback([&] { result = cmd_classify(map, opt); });
  auto* fixed = app.add_subcommand("fixed-point", "Fixed point of an affine map");
  fixed->add_option("map", map, "Affine map file")->required()->check(CLI::ExistingFile);
  fixed->callback([&] { result = cmd_fixed_point(map, opt); });

  auto* orbit = group_cmd("orbit-eq", "Decide whether two points lie in the same orbit",
                          [&] { return cmd_orbit_eq(group, x, y, opt); });
  orbit->add_option("x", x, "Point, comma separated rationals")->required();
  orbit->add_option("y", y, "Point, comma separated rationals")->required();

  group_cmd("abelianize", "Abelianization of the group", [&] { return cmd_abelianize(group, opt); });
  group_cmd("quotient", "Abelian quotient selected by --quotient", [&] { return cmd_quotient(group, opt); })
      ->add_option("--quotient", opt.quotient, "ab, mod:k or center");
  group_map_cmd("induced", "Matrix of the induced map on a quotient", [&] { return cmd_induced(group, map, opt); })
      ->add_option("--quotient", opt.quotient, "ab, mod:k or center");
  auto* realize = group_cmd("realize", "Realize generator images as a conjugation",
                            [&] { return cmd_realize(group, second, opt); });
  realize->add_option("images", second, "Endomorphism file with generator images")->required()->check(CLI::ExistingFile);
  group_map_cmd("linearize", "Conjugate to the fixed point so the map becomes linear",
                [&] { return cmd_linearize(group, map, opt); });
  auto* obstruct = group_map_cmd("obstruct", "Search for a conjugacy to a linear Hirsch endomorphism on a quotient",
                                 [&] { return cmd_obstruct(group, map, opt); });
  obstruct->add_option("--quotient", opt.quotient, "mod:k or center");
  obstruct->add_option("--bound", opt.bound, "Coefficient bound for candidate linear maps")->check(CLI::PositiveNumber);
  app.add_subcommand("paper-verify", "Check every worked example in the corpus")->callback([&] {
    result = cmd_paper_verify(opt);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }
  std::cout << result.render(as_json);
  return result.exit_code;
}
