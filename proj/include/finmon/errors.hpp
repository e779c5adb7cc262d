#pragma once

#include <stdexcept>
#include <string>

namespace finmon {

// Base for all domain errors. Subclasses map 1:1 onto the error names
// used in the CLI diagnostics.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DuplicateLabel : Error { using Error::Error; };
struct RaggedCoordinates : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };
struct SpaceMismatch : Error { using Error::Error; };
struct BackendMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct EmptySequence : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct MissingCoordinates : Error { using Error::Error; };
struct DuplicatePoints : Error { using Error::Error; };
struct DegeneratePairing : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct AdjointMismatch : Error { using Error::Error; };

struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
};
struct UnknownIdentifier : Error { using Error::Error; };
struct VariableOutOfRange : Error { using Error::Error; };

// Raised by the JSON loaders on malformed or schema-violating input.
// Distinct from the domain errors above: the CLI maps SchemaError to
// exit code 2 and domain errors during load to exit code 3.
struct SchemaError : Error { using Error::Error; };

} // namespace finmon
