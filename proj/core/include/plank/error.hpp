#pragma once

#include <stdexcept>
#include <string>

namespace plank {

/// Input body fails validation (non-convex, degenerate, malformed pieces).
class InvalidBody : public std::runtime_error {
public:
    explicit InvalidBody(const std::string& what) : std::runtime_error(what) {}
};

/// Body is not spiky in the requested direction (or in any
/// minimal-width direction when auto-detection was asked for).
class NotSpiky : public std::runtime_error {
public:
    explicit NotSpiky(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative numeric step failed to converge or produced an inconsistent
/// intermediate state; results would not be trustworthy.
class NumericFailure : public std::runtime_error {
public:
    explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

/// File or JSON parse/serialization problem.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plank
