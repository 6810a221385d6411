#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nlgw {

using Integer = mpz_class;
using Rational = mpq_class;

// Thrown when an input lies outside the mathematical domain of an operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a consistency assertion of the pipeline fails (nonzero remainder,
// rank deficiency, shape violation). These indicate bugs or bad input data.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a coefficient beyond the known truncation is requested.
struct TruncationError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Canonical rendering: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view s);

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

// Exact conversion; throws DomainError if x is not an integer fitting in long.
long to_long(const Rational& x);

// k^e for integer k != 0 and any integer e.
Rational rational_pow(long k, long e);
Rational rational_pow(const Rational& x, long e);

Integer factorial(long n);
Integer binomial(long n, long k);
// Generalized binomial C(a, k) for integer a (possibly negative), k >= 0.
Integer gen_binomial(long a, long k);

}  // namespace nlgw
