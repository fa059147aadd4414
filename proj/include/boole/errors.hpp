#pragma once

#include <stdexcept>
#include <string>

namespace boole {

/// Input outside the mathematical domain of an operation (non-finite x, b <= 0, p outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation requested exactly at the pole x = a, where the map is not differentiable.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A request exceeding a configured resource cap (e.g. rational iterate depth).
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Unknown name in a catalog lookup.
class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

} // namespace boole
