#pragma once

// Error taxonomy for the toolkit.  Three failure modes are kept apart so the
// CLI can map them to distinct exit codes and so tests can assert on them:
//
//   precision_error  -- a comparison / membership test that interval
//                       arithmetic could not decide at the configured
//                       precision ceiling.  Raised instead of guessing.
//   budget_error     -- an enumeration, sieve, or truncation that would
//                       exceed the configured resource budget.
//   structural_error -- malformed input: dimension mismatch, invalid shape,
//                       singular basis, out-of-domain parameter.

#include <stdexcept>
#include <string>

namespace weakadm {

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct structural_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace weakadm
