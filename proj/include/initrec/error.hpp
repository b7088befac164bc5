#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace initrec {

enum class ErrorKind {
    InvalidParameter,
    InvalidInput,
    InvalidSpec,
    NumericFailure,
    IllPosedMode,
    AdmissibilityViolation,
    ConfigError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error thrown by the library. The kind is the stable,
/// machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class NumericFailure : public Error {
public:
    NumericFailure(const std::string& what, double achieved_error = 0.0,
                   std::optional<std::size_t> index = std::nullopt)
        : Error(ErrorKind::NumericFailure, what),
          achieved_error_(achieved_error), index_(index) {}

    /// Error estimate reached before giving up (quadrature), or 0.
    double achieved_error() const noexcept { return achieved_error_; }
    /// Offending mode or step index, when there is one.
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    double achieved_error_;
    std::optional<std::size_t> index_;
};

/// A diagonal denominator vanished (to tolerance) for the listed modes.
/// Mode indices are 1-based to match eigenvalue numbering.
class IllPosedMode : public Error {
public:
    IllPosedMode(const std::string& what, std::vector<std::size_t> modes)
        : Error(ErrorKind::IllPosedMode, what), modes_(std::move(modes)) {}

    const std::vector<std::size_t>& modes() const noexcept { return modes_; }

private:
    std::vector<std::size_t> modes_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const std::string& what)
{
    if (!ok) throw Error(kind, what);
}

}  // namespace initrec
