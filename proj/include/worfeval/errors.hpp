#pragma once

#include <stdexcept>
#include <string>

namespace worfeval {

// Base class for all errors raised by this library.
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph construction / traversal
struct CycleError : EvalError { using EvalError::EvalError; };
struct DanglingEdgeError : EvalError { using EvalError::EvalError; };
struct DuplicateIndexError : EvalError { using EvalError::EvalError; };
struct UnknownNodeError : EvalError { using EvalError::EvalError; };
struct IndexMismatchError : EvalError { using EvalError::EvalError; };

// file loading
struct IoError : EvalError { using EvalError::EvalError; };

struct SchemaError : EvalError {
    SchemaError(int line_no, std::string field_name, const std::string& what)
        : EvalError("line " + std::to_string(line_no) + ", field '" + field_name +
                    "': " + what),
          line(line_no),
          field(std::move(field_name)) {}
    int line;
    std::string field;
};

// similarity providers
struct ProviderError : EvalError { using EvalError::EvalError; };
struct ServiceError : ProviderError { using ProviderError::ProviderError; };

// scheduling
struct MissingDurationError : EvalError { using EvalError::EvalError; };
struct ZeroDurationError : EvalError { using EvalError::EvalError; };

// harness
struct JoinError : EvalError { using EvalError::EvalError; };

// oracles
struct TooLargeError : EvalError { using EvalError::EvalError; };

}  // namespace worfeval
