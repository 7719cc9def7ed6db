#include "app/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace slitflow::app;
  CLI::App cli{"slitflow: slit-torus Teichmüller flow laboratory"};
  cli.require_subcommand(1);
  cli.fallthrough();

  std::string config_path;
  std::vector<std::string> overrides;
  cli.add_option("-c,--config", config_path, "key=value configuration file");
  cli.add_option("-s,--set", overrides, "override one setting, key=value (repeatable)");

  RunConfig config;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output-dir", config.output_dir, "output directory");
    sub->add_option("-f,--family", config.family_file, "family file");
  };
  auto* gen = cli.add_subcommand("generate", "build the slope family and check its level conditions");
  auto* trace = cli.add_subcommand("trace", "length reports for curves over times");
  auto* limit = cli.add_subcommand("limit-report", "ratio, decay and simplex datasets");
  auto* verify = cli.add_subcommand("verify", "run every invariant suite on a family");
  for (auto* sub : {gen, trace, limit, verify}) add_common(sub);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e) == 0 ? 0 : kInputError;
  }

  // Precedence: defaults < config file < environment < --set < subcommand flags.
  RunConfig flags = config;
  RunConfig merged;
  try {
    if (!config_path.empty()) load_config_file(merged, config_path);
    apply_environment(merged);
    for (const auto& o : overrides) apply_assignment(merged, o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  const RunConfig defaults;
  if (flags.output_dir != defaults.output_dir) merged.output_dir = flags.output_dir;
  if (!flags.family_file.empty()) merged.family_file = flags.family_file;

  if (gen->parsed()) return cmd_generate(merged, std::cout, std::cerr);
  if (trace->parsed()) return cmd_trace(merged, std::cout, std::cerr);
  if (limit->parsed()) return cmd_limit_report(merged, std::cout, std::cerr);
  return cmd_verify(merged, std::cout, std::cerr);
}
