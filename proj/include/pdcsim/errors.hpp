#pragma once

#include <stdexcept>
#include <string>

namespace pdcsim {

// The closed-form module only covers symmetric stimulation (alpha == beta);
// callers holding asymmetric stimuli should use the moment engine instead.
struct SymmetryRequired : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// No photons anywhere: the requested statistic (visibility, enhancement
// ratio) has no defined value.
struct DegenerateStatistics : std::domain_error {
    using std::domain_error::domain_error;
};

// Gain large enough that exp(4g)-scale quantities overflow double range.
struct RangeExceeded : std::domain_error {
    using std::domain_error::domain_error;
};

// Parameters outside the Fock oracle's operating envelope.
struct EnvelopeExceeded : std::domain_error {
    using std::domain_error::domain_error;
};

// Truncated state lost more probability mass than the configured tolerance.
struct TruncationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Moment engine asked for an operator product longer than it supports.
struct UnsupportedOrder : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A quantity that must be real came out with a non-negligible imaginary
// part; surfaced instead of silently truncated.
struct NumericalInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pdcsim
