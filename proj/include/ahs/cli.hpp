#pragma once

#include <string>
#include <vector>

namespace ahs::cli {

enum ExitCode { Ok = 0, Negative = 1, Usage = 2 };

struct Result {
    int code = Ok;
    std::string out;  // document for stdout or --output
    std::string err;  // diagnostics
};

// argv without the program name
Result run(const std::vector<std::string>& args);

// writes the document and diagnostics; returns the exit code
int main_entry(int argc, char** argv);

}  // namespace ahs::cli
