#pragma once

#include <stdexcept>
#include <string>

namespace ionphase {

/// Phase requested at a point where the superposed field amplitude is
/// exactly zero, so its argument is undefined.
class singular_point_error : public std::domain_error {
public:
    explicit singular_point_error(const std::string& what)
        : std::domain_error(what) {}
};

/// Doppler temperature requested at zero or blue detuning.
class no_cooling_error : public std::domain_error {
public:
    explicit no_cooling_error(const std::string& what)
        : std::domain_error(what) {}
};

/// Malformed or inconsistent configuration input.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what)
        : std::runtime_error(what) {}
};

/// Not enough data to run an estimator (e.g. an all-zero histogram).
class insufficient_data_error : public std::runtime_error {
public:
    explicit insufficient_data_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace ionphase
