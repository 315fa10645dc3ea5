#pragma once

#include <stdexcept>
#include <string>

namespace omlab {

/// Raised when a caller passes arguments outside an operation's domain.
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidParameter(message);
}

}  // namespace omlab
