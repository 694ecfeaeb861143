#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace k3syz {

// Base class for all failures caused by user input. `kind()` is the stable
// machine-readable tag used in error JSON; `exit_code()` follows the CLI
// contract: 2 = malformed input, 3 = precondition failure.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg, int exit_code)
        : std::runtime_error(msg), kind_(std::move(kind)), exit_code_(exit_code) {}
    const std::string& kind() const { return kind_; }
    int exit_code() const { return exit_code_; }

private:
    std::string kind_;
    int exit_code_;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t position)
        : Error("SyntaxError", msg + " (at position " + std::to_string(position) + ")", 2),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

struct InhomogeneousError : Error {
    explicit InhomogeneousError(const std::string& msg) : Error("InhomogeneousError", msg, 2) {}
};

struct UnknownVariable : Error {
    explicit UnknownVariable(const std::string& msg) : Error("UnknownVariable", msg, 2) {}
};

struct ZeroFormError : Error {
    explicit ZeroFormError(const std::string& msg) : Error("ZeroFormError", msg, 2) {}
};

// Malformed JSON payloads, schema violations, invalid lattice data.
struct BadInput : Error {
    explicit BadInput(const std::string& msg) : Error("BadInput", msg, 2) {}
};

struct OutOfRange : Error {
    explicit OutOfRange(const std::string& msg) : Error("OutOfRange", msg, 3) {}
};

struct WNotInRange : Error {
    explicit WNotInRange(const std::string& msg) : Error("WNotInRange", msg, 3) {}
};

struct VNotInRange : Error {
    explicit VNotInRange(const std::string& msg) : Error("VNotInRange", msg, 3) {}
};

struct DependentForms : Error {
    explicit DependentForms(const std::string& msg) : Error("DependentForms", msg, 3) {}
};

struct UnsupportedRank : Error {
    explicit UnsupportedRank(const std::string& msg) : Error("UnsupportedRank", msg, 3) {}
};

// Two redundant computation routes disagreed; always a bug, never bad input.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace k3syz
