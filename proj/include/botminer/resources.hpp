#pragma once

#include <optional>
#include <string_view>

// Data files from data/ compiled into the binary.
namespace botminer::resources {

std::optional<std::string_view> find(std::string_view name);

}  // namespace botminer::resources
