#pragma once

#include <stdexcept>
#include <string>

namespace topsim {

/// A normalization column with no usable signal (e.g. entirely zero in the
/// crisp pipeline). Carries the offending criterion name.
class DegenerateColumnError : public std::runtime_error {
public:
    explicit DegenerateColumnError(std::string criterion)
        : std::runtime_error("degenerate column for criterion '" + criterion + "'"),
          criterion_(std::move(criterion)) {}

    const std::string& criterion() const noexcept { return criterion_; }

private:
    std::string criterion_;
};

/// Utilization at or past 1.0 where the volume metric diverges.
class SaturationError : public std::domain_error {
public:
    explicit SaturationError(const std::string& what) : std::domain_error(what) {}
};

/// File could not be read or written at all (as opposed to parsed).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Input-file or configuration validation failure; `path` names the field.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace topsim
