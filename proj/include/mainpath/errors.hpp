#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mainpath {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data. Line numbers count data rows; the header row is
// line 0.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " at line " + std::to_string(line)), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A citation cycle was found where a DAG is required. Carries one witness
// cycle, rotated so the lexicographically smallest id comes first.
class CycleError : public Error {
public:
    explicit CycleError(std::vector<std::string> cycle)
        : Error(describe(cycle)), cycle_(std::move(cycle)) {}

    const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
    static std::string describe(const std::vector<std::string>& cycle) {
        std::string msg = "citation cycle:";
        for (const auto& id : cycle) {
            msg += ' ';
            msg += id;
        }
        return msg;
    }

    std::vector<std::string> cycle_;
};

// Unknown patent id or out-of-range layer.
class LookupError : public Error {
public:
    using Error::Error;
};

// Exhaustive path enumeration exceeded its configured ceiling.
class OracleLimitError : public Error {
public:
    using Error::Error;
};

// Invalid configuration, cutoffs, or generator parameters.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A file could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace mainpath
