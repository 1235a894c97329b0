#pragma once

#include <stdexcept>
#include <string>

namespace snake {

// Error taxonomy. The CLI maps these onto exit codes: ConfigError -> 2,
// IoError -> 3, everything else (model/geometry/format) -> 4.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Bytes on disk do not form a valid image or curve document.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Well-formed file in a format this library does not read.
class UnsupportedFormat : public FormatError {
public:
    using FormatError::FormatError;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

class ModelError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace snake
