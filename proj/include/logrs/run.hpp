#pragma once

#include <string>
#include <vector>

namespace logrs {

struct RunResult {
    int exit_code = 0;
    std::string output;
    std::string out_path; // nonempty when --out was given
};

/// Execute one CLI invocation (args exclude the program name) and return the
/// document that would be printed. Exit codes: 0 success, 2 invalid or
/// unsupported input, 3 numeric failure, 4 threshold not found.
RunResult run_cli(const std::vector<std::string>& args);

/// Process entry point: runs run_cli, prints the document (or writes --out),
/// returns the exit code.
int run_main(int argc, char** argv);

} // namespace logrs
