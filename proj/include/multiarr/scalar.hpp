#pragma once

#include <gmpxx.h>

#include <string>

namespace multiarr {

/// Exact rational coefficient. GMP keeps mpq values canonical (lowest terms,
/// positive denominator, zero as 0/1) after every arithmetic operation.
using Scalar = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Scalar& s) { return s.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace multiarr
