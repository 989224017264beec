#pragma once

#include <stdexcept>
#include <string>

namespace ceeat {

// Precondition violations (bad labels, mismatched sectors, out-of-range k, ...).
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested (l, m) multiplet does not exist or the degeneracy index is too large.
struct NoSuchMultiplet : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// Domain and codomain sectors of an operator application do not match.
struct SectorMismatch : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// A per-site cutoff would clip amplitudes of the requested state.
struct TruncationOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed (conservation, tolerance, ...).
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ceeat
