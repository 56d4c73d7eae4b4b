#pragma once

#include <stdexcept>
#include <string>

namespace primgen {

// Invalid configuration or flag value (maps to CLI exit 1).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Field dimensions violate the power-of-two / square contract.
class dimension_error : public std::runtime_error {
public:
    explicit dimension_error(const std::string& what) : std::runtime_error(what) {}
};

// magnitude_weight evaluated at the DC bin (0, 0).
class singularity_error : public std::runtime_error {
public:
    explicit singularity_error(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate all-equal field, min-max rescale impossible.
class rescale_error : public std::runtime_error {
public:
    explicit rescale_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file contents (WT01 tensors, PNG streams).
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure (maps to CLI exit 2).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Analysis preconditions violated (empty dataset, mixed resolutions, ...).
class analysis_error : public std::runtime_error {
public:
    explicit analysis_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace primgen
