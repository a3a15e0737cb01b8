#pragma once

#include <stdexcept>
#include <string>

namespace fp {

// Base class for all library errors so callers can catch fp::Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotCoprime : Error {
    using Error::Error;
};

struct BadOrder : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct LimitTooLarge : Error {
    using Error::Error;
};

struct GridTooCoarse : Error {
    using Error::Error;
};

struct EmptyFamily : Error {
    using Error::Error;
};

// CLI/config validation problems (bad flags, unsatisfiable limits, parse errors).
struct InvalidConfig : Error {
    using Error::Error;
};

// A required cache or other external resource is unavailable.
struct ResourceUnavailable : Error {
    using Error::Error;
};

} // namespace fp
