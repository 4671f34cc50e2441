#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

// Enumeration or volume size exceeds a configured cap.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A computation was requested at a parameter point where the complete
// ground-state set is not determined by the implemented classification.
class UnsupportedRegionError : public std::domain_error {
public:
    explicit UnsupportedRegionError(const std::string& what) : std::domain_error(what) {}
};

// A boundary specification does not cover a vertex the computation touches.
class IncompleteBoundaryError : public std::runtime_error {
public:
    explicit IncompleteBoundaryError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cayley
