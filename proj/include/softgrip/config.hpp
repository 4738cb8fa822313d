#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "softgrip/grasp.hpp"
#include "softgrip/mission.hpp"

namespace softgrip {

// Thrown on malformed config input; message is anchored to file:line.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Flat sectioned key-value config. Sections: [control] [plant] [sensor]
// [geometry] [limits]; unknown sections or keys are errors. Sections named
// [object.<name>] describe grasp fixtures and may share a file with the
// simulation sections.
SimConfig parse_sim_config(const std::string& text, const std::string& source_name = "<config>");
SimConfig load_sim_config(const std::string& path);

std::vector<ObjectSpec> parse_object_set(const std::string& text,
                                         const std::string& source_name = "<config>");
std::vector<ObjectSpec> load_object_set(const std::string& path);

}  // namespace softgrip
