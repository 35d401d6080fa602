#ifndef OVC_ERRORS_HPP
#define OVC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ovc {

// Malformed textual input (graph notation, wire documents, config files).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what), position_(0) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Precondition violated by otherwise well-formed input.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured resource cap would be exceeded (vertex cap, quadrature dimension, ...).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wick contraction applied to an odd number of legs.
class ParityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ovc

#endif
