#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmdc {

// Thrown when a dense operator would exceed the configured d^n cap.
class DimensionCapError : public std::runtime_error {
public:
    DimensionCapError(std::size_t requested, std::size_t cap)
        : std::runtime_error("dense dimension d^n = " + std::to_string(requested) +
                             " exceeds cap " + std::to_string(cap)),
          requested_(requested), cap_(cap) {}
    std::size_t requested() const { return requested_; }
    std::size_t cap() const { return cap_; }

private:
    std::size_t requested_;
    std::size_t cap_;
};

// Numeric failures: solver non-convergence, inconsistent factorizations, ...
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qmdc
