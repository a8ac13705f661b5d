#pragma once

#include <stdexcept>
#include <string>

namespace hurwitz {

// Signals that the prime in use divides some irreducible-representation
// dimension; the run must be retried under a different prime.
struct DimensionNotInvertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroInverse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HeaderMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fatal: the accumulator's overflow buffer is full, i.e. capacity was
// misconfigured for the workload.
struct OverflowBufferExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonIntegralGenus : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DigestMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hurwitz
