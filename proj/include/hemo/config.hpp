#pragma once

#include <string>

#include "hemo/network.hpp"

namespace hemo {

struct LoadedConfig {
    Network network;
    std::string output_dir;  // empty = resolve via environment / cwd
};

// Command-line overrides applied to the parsed document before the network is
// built, so initial data is re-evaluated on the overridden grid. Negative (or
// non-positive, for cells) fields keep the file's values.
struct ConfigOverrides {
    double cfl = -1.0;
    long cells = -1;
    double epsilon = -1.0;
};

// Builds a validated Network from a JSON config file. Malformed input throws
// ConfigError with the offending location in the message.
LoadedConfig load_config_file(const std::string& path);
LoadedConfig load_config_file(const std::string& path, const ConfigOverrides& ov);
LoadedConfig load_config_text(const std::string& text, const std::string& origin);
LoadedConfig load_config_text(const std::string& text, const std::string& origin,
                              const ConfigOverrides& ov);

}  // namespace hemo
