#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mfcev::cli {

// A scenario file is a flat list of `key = value` lines. Keys are the long flag
// names of the chosen command without the leading dashes; `#` starts a comment.
struct ScenarioEntry {
    std::string key;
    std::string value;
    int line = 0;
};

class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<ScenarioEntry> parse_scenario(std::string_view text);
std::vector<ScenarioEntry> load_scenario(const std::string& path);

}  // namespace mfcev::cli
