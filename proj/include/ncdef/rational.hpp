#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncdef {

/// Exact rational scalar. Always canonical: reduced with positive denominator.
using Scalar = mpq_class;

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& s);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Scalar parse_scalar(std::string_view text);

}  // namespace ncdef
