#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cavityed {

struct Preset {
  std::string_view name;
  std::string_view summary;
  std::string_view text;  // config file contents
};

const std::vector<Preset>& presets();
std::optional<Preset> find_preset(std::string_view name);

}  // namespace cavityed
