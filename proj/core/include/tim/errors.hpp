#pragma once

#include <stdexcept>
#include <string>

namespace tim {

// Raised for anything wrong with user-supplied input files: syntax errors,
// violated value ranges, dangling references. Carries the offending source
// location when one is known. The CLI maps this to exit code 1; every other
// exception maps to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}

    InputError(const std::string& file, size_t line, const std::string& msg)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + msg) {}
};

}  // namespace tim
