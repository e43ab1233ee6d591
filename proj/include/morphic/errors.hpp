#pragma once

#include <stdexcept>
#include <string>

namespace morphic {

/// Base of every exception thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A symbol, word or document is malformed or refers to letters outside the
/// alphabet it is used with.
class InputError : public Error {
public:
    using Error::Error;
};

/// A stated precondition of the called operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The result would exceed a configured size cap; nothing is truncated.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// The input shape is outside what any decision procedure here handles.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Two structures passed together do not describe the same morphism.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace morphic
