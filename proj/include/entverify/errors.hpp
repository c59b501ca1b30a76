#pragma once

#include <stdexcept>
#include <string>

namespace entverify {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape / indexing.
struct BadShape final : Error { using Error::Error; };
struct ShapeMismatch final : Error { using Error::Error; };
struct BadPartySet final : Error { using Error::Error; };
struct IndexOutOfRange final : Error { using Error::Error; };

// Linear algebra.
struct NonHermitian final : Error { using Error::Error; };
struct NoConvergence final : Error { using Error::Error; };
struct SingularMap final : Error { using Error::Error; };
struct NotStrictlyPositive final : Error { using Error::Error; };
struct NotProjector final : Error { using Error::Error; };

// Construction-time invariant failures (normalization, positivity, trace).
struct InvariantViolation final : Error { using Error::Error; };

// Protocol-level errors.
struct NotPureInput final : Error { using Error::Error; };
struct NoSupportFound final : Error { using Error::Error; };
struct InvalidConfig final : Error { using Error::Error; };
struct ICError final : Error { using Error::Error; };
struct TooManyParties final : Error { using Error::Error; };

// File / JSON input.
struct ParseError final : Error { using Error::Error; };

} // namespace entverify
