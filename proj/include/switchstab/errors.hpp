#pragma once

#include <stdexcept>
#include <string>

namespace switchstab {

/// Input data failed validation (bad file, bad dimensions, bad flags).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// The requested method does not apply to this system (e.g. cone bound
/// on a set with negative entries, certified grid bound in dimension > 2).
class method_inapplicable_error : public std::runtime_error {
public:
    explicit method_inapplicable_error(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource guard tripped (enumeration cap, orbit node cap).
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iteration diverged or a certificate could not be established.
class nonconvergence_error : public std::runtime_error {
public:
    explicit nonconvergence_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace switchstab
