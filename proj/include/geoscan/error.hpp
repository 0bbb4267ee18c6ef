#ifndef GEOSCAN_ERROR_HPP_
#define GEOSCAN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace geoscan {

/// Malformed or structurally invalid input (files, coordinate vectors, words).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A resource budget was hit; the result would have been incomplete.
class IncompleteEnumeration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal consistency check failed (relators not trivial under holonomy, ...).
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A per-surface check exceeded its wall-clock allowance.
class SurfaceTimeout : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace geoscan

#endif  // GEOSCAN_ERROR_HPP_
