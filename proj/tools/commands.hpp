#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace dahakz::cli {

using Json = nlohmann::ordered_json;

struct KeySpec {
  std::string name;
  std::string def;  // default ("" = derived or unset)
  std::string help;
};

const std::vector<std::string>& subcommands();
// keys a subcommand reads, in echo order
const std::vector<std::string>& keys_for(const std::string& cmd);
const KeySpec& key_spec(const std::string& key);
bool is_key(const std::string& key);

// key = value lines, '#' starts a comment. Unknown keys are a ConfigError.
std::map<std::string, std::string> read_config_file(const std::string& path);

struct Outcome {
  int exit_code = 0;  // 0 ok, 2 config, 3 scope, 4 tolerance / failed check, 1 internal
  Json doc;
};
// values: effective settings (defaults are filled in here). Never throws.
Outcome run(const std::string& cmd, const std::map<std::string, std::string>& values, bool selftest);

}  // namespace dahakz::cli
