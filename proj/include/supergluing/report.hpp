#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supergluing/cech.hpp"

namespace sg {

enum class ExitCode : int { pass = 0, check_failed = 1, input_error = 2, undecidable = 3 };

struct RunConfig {
    std::string command;
    std::string input;
    bool structured = false;
    std::uint64_t seed = 1;
    std::optional<Window> window;
    std::optional<int> level;
    std::optional<std::vector<Q>> at;  // base point
    std::optional<Q> lambda;
    std::string output;                // file for emitted model data; stdout when empty
};

const std::vector<std::string>& command_names();
bool is_command(const std::string& name);

// Runs one command; reports go to out, diagnostics to err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Key/value report: "key: value" in text form, "key=value" in structured form.
class Report {
public:
    explicit Report(bool structured) : structured_(structured) {}
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }
    void add(const std::string& key, const Cochain& c);
    void add(const std::string& key, const Q& q);
    void add(const std::string& key, bool v) { add(key, std::string(v ? "yes" : "no")); }
    void add(const std::string& key, int v) { add(key, std::to_string(v)); }
    void add(const std::string& key, std::size_t v) { add(key, std::to_string(v)); }
    bool structured() const { return structured_; }
    std::string str() const;

private:
    bool structured_;
    std::vector<std::pair<std::string, std::string>> lines_;
};

}  // namespace sg
