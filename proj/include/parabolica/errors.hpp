#pragma once

#include <stdexcept>
#include <string>

namespace parabolica {

/// Base of every error raised by the library. `kind()` is a stable tag used in
/// CLI diagnostics and JSON error payloads.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define PARABOLICA_DEFINE_ERROR(Name)                                         \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

PARABOLICA_DEFINE_ERROR(InvalidType);
PARABOLICA_DEFINE_ERROR(DimensionMismatch);
PARABOLICA_DEFINE_ERROR(IndexOutOfRange);
PARABOLICA_DEFINE_ERROR(FullSetNotParabolic);
PARABOLICA_DEFINE_ERROR(NotIntegral);
PARABOLICA_DEFINE_ERROR(NotDominantForLevi);
PARABOLICA_DEFINE_ERROR(NotDominant);
PARABOLICA_DEFINE_ERROR(NotSupportedOffLevi);
PARABOLICA_DEFINE_ERROR(NotKahler);
PARABOLICA_DEFINE_ERROR(NotL2);
PARABOLICA_DEFINE_ERROR(InvalidArgument);
PARABOLICA_DEFINE_ERROR(FixtureMismatch);

#undef PARABOLICA_DEFINE_ERROR

/// Violated internal identity (e.g. two exact computation routes disagree).
/// Never expected to fire; signals a bug rather than bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void ensure(bool cond, const char* what) {
    if (!cond) throw InternalError(what);
}

/// Parse failure with the offending token position (0-based, -1 if unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& what, int position)
        : Error("ParseError", what), position_(position) {}

    int position() const noexcept { return position_; }

private:
    int position_;
};

}  // namespace parabolica
