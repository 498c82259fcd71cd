#include "faudit/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"filter-audit: black-box compliance audits for algorithmic filters"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> sets;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"audit", "audit one counterfactual pair against a simulated platform"},
      {"audit-batch", "audit a pair set and apply the alpha rejection budget"},
      {"mc", "run a Monte Carlo experiment and emit its curve"},
      {"cost", "grid-search the cost of regulation, optionally with a witness"},
      {"diversity", "compare content diversity of two parameters along a direction"},
      {"decision-demo", "calibrate a decision margin and simulate user choices"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "path to the config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir,
                    "output directory (default: $FILTER_AUDIT_OUT)");
    sub->add_option("--set", sets, "override a config value as section.key=value");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  faudit::cli::Invocation invocation;
  invocation.command = app.get_subcommands().front()->get_name();
  invocation.config_path = config_path;
  invocation.out_dir = out_dir;
  for (const std::string& item : sets) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "filter-audit: --set expects section.key=value, got '" << item << "'\n";
      return 1;
    }
    invocation.overrides.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return faudit::cli::run(invocation);
}
