#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace homalg {

using Scalar = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q". Rejects a zero denominator.
Scalar parse_scalar(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string format_scalar(const Scalar& s);

inline int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace homalg
