#include "cli/app.hpp"

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "ninls/version.hpp"

namespace ninls::cli {

int main_entry(int argc, char** argv) {
  CLI::App app{"Spectral laboratory for the non-isotropic fourth-order NLS", "ninls"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Invocation inv;
  std::uint64_t seed = 0;
  std::string out;
  for (const auto& [name, help] : commands()) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config_path, "JSON config document")->required();
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_option("--out", out, "output directory (overrides output_dir)");
    sub->callback([&inv, name = name] { inv.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  auto* sub = app.get_subcommands().front();
  if (sub->count("--seed")) inv.seed = seed;
  if (sub->count("--out")) inv.out_dir = out;
  return run(inv, std::cout, std::cerr);
}

}  // namespace ninls::cli
