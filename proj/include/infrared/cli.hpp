#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ir {

inline constexpr const char* kToolVersion = "0.1.0";

// A check of the mathematics that should never fail (D^2 != 0, a broken web, ...).
class InvariantFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct JobSpec {
    std::string command;
    std::string input = "-";
    std::string output = "-";
    std::string format = "json";
    bool geometric_only = false;
    bool flip_orientation = false;
    bool oracle = false;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::size_t max_size = 12;
};

struct RunResult {
    int status = 0; // 0 success, 1 validation failure, 2 internal invariant failure
    std::string output;
    std::string error;
};

const std::vector<std::string>& command_names();

// Runs one command on the text of an input document. Never throws.
RunResult run(const JobSpec& spec, std::string_view input_text);

int cli_main(int argc, char** argv);

} // namespace ir
