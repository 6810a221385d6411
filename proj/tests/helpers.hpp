#pragma once

#include "nlgw/rational.hpp"

#include <random>

namespace testing_util {

inline nlgw::Rational random_rational(std::mt19937_64& rng, long span = 40, long max_den = 7) {
    std::uniform_int_distribution<long> num(-span, span), den(1, max_den);
    return nlgw::make_rational(num(rng), den(rng));
}

}  // namespace testing_util
