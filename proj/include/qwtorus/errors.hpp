#pragma once

#include <stdexcept>
#include <string>

namespace qwtorus {

// Malformed input data: wrong row counts, positions out of range, bad JSON.
struct structural_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Torus/sector parameters outside the admissible range.
struct sector_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Enumeration would exceed the configured candidate cap.
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant failed; indicates a bug, not bad input.
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace qwtorus
