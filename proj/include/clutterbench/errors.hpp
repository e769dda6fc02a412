#pragma once

#include <stdexcept>
#include <string>

namespace clutterbench {

// Bad arguments or malformed configuration supplied by the caller.
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Text input that cannot be parsed; carries the 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Scene geometry that makes a requested measurement meaningless,
// e.g. a target outside every camera frustum.
class degenerate_scene : public std::runtime_error {
public:
    explicit degenerate_scene(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace clutterbench
