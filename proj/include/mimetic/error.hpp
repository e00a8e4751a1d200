#pragma once

#include <stdexcept>
#include <string>

namespace mimetic {

// Bad parameters or material data (nonpositive density, full-matrix star in a
// guaranteed run, unknown preset, ...).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Field shapes or kinds that do not fit the operator they are handed to.
class ShapeError : public std::invalid_argument {
public:
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace mimetic
