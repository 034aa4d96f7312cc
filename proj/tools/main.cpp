#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dahakz/scalar.hpp"

namespace cli = dahakz::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact DAHA/AHA computations and KZ monodromy", "dahakz"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");
  std::string config, out;
  bool selftest = false;
  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, std::vector<CLI::Option*>> opts;
  for (auto& name : cli::subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->set_help_flag("--help", "print help");
    sub->add_option("--config", config, "key = value file, overridden by flags");
    sub->add_option("--out", out, "write the JSON document here instead of stdout");
    sub->add_flag("--selftest", selftest, "run the module's invariant suite");
    for (auto& k : cli::keys_for(name)) {
      const auto& spec = cli::key_spec(k);
      std::string help = spec.help + (spec.def.empty() ? "" : " [" + spec.def + "]");
      opts[name].push_back(sub->add_option("--" + k, flags[name][k], help));
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  auto* sub = app.get_subcommands().front();
  std::string cmd = sub->get_name();

  std::map<std::string, std::string> values;
  cli::Outcome res;
  try {
    if (!config.empty()) values = cli::read_config_file(config);
  } catch (const dahakz::ConfigError& e) {
    res.exit_code = 2;
    res.doc = cli::Json{{"schema", "dahakz-cli/1"}, {"command", cmd}, {"status", "config_error"},
                        {"error", {{"module", "cli"}, {"message", e.what()}}}};
  }
  if (res.doc.is_null()) {
    for (auto* o : opts[cmd])
      if (o->count()) values[o->get_name().substr(2)] = o->as<std::string>();
    res = cli::run(cmd, values, selftest);
  }

  std::string text = res.doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return 2;
    }
    f << text;
  }
  if (res.exit_code) std::cerr << "dahakz " << cmd << ": " << res.doc["status"].get<std::string>() << "\n";
  return res.exit_code;
}
