#pragma once

#include <stdexcept>
#include <string>

namespace ahs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct MembershipError : Error { using Error::Error; };
struct GradeError : Error { using Error::Error; };
struct MissingBindingError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

// carries the offending g0 basis index
struct EquivarianceError : Error {
    EquivarianceError(const std::string& what, std::size_t witness)
        : Error(what), witness_index(witness) {}
    std::size_t witness_index;
};

}  // namespace ahs
