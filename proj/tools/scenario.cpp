#include "scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace mfcev::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& why) {
    throw ScenarioError("scenario line " + std::to_string(line) + ": " + why);
}

}  // namespace

std::vector<ScenarioEntry> parse_scenario(std::string_view text) {
    std::vector<ScenarioEntry> entries;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected `key = value`");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (key.starts_with('-')) fail(line_no, "keys are written without leading dashes");
        if (value.empty()) fail(line_no, "empty value for `" + std::string(key) + "`");
        if (key == "scenario") fail(line_no, "scenario files cannot include other scenario files");
        if (!seen.emplace(key).second) fail(line_no, "duplicate key `" + std::string(key) + "`");
        entries.push_back({std::string(key), std::string(value), line_no});
    }
    return entries;
}

std::vector<ScenarioEntry> load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace mfcev::cli
