#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

// Bad user input: malformed JSON, precondition failures, out-of-range
// parameters. CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematically guaranteed invariant failed to hold. This signals a bug
// in the library, not in the input. CLI maps this to exit code 3.
class invariant_violation : public std::logic_error {
public:
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

// A lemma hypothesis does not hold for the supplied configuration; the input
// is rejected rather than evaluated.
class hypothesis_violation : public validation_error {
public:
    explicit hypothesis_violation(const std::string& what) : validation_error(what) {}
};

} // namespace lorentz
