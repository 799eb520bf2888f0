#pragma once

#include <stdexcept>
#include <string>

namespace gt {

// Raised for malformed external input: bad file syntax, symbols outside the
// declared alphabet, ids that do not resolve. CLI maps this to exit code 2.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised for violated operation contracts and domain failures: invalid
// structures, exhausted budgets, unsupported dimensions. CLI exit code 1.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gt
