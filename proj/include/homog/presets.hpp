#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "homog/experiments.hpp"

namespace homog {

/// Problem1 .. Problem5 and "constant"; ArgumentError for an unknown name.
Scenario preset_scenario(std::string_view name);

struct PresetInfo {
  std::string name;
  std::string description;
};
std::vector<PresetInfo> preset_list();

}  // namespace homog
