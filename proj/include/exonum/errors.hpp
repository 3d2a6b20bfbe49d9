#pragma once

#include <stdexcept>
#include <string>

namespace exonum {

// Argument outside an operation's domain (CLI exit code 2).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a deliberate capacity gate, e.g. the exponential
// subword oracle past its length cap (CLI exit code 3).
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A float-backed real cannot certify the requested digits; never return
// silently wrong digits (CLI exit code 4).
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace exonum
