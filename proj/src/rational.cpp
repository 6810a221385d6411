#include "nlgw/rational.hpp"

#include <climits>

namespace nlgw {

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
    std::string str(s);
    Rational r;
    if (r.set_str(str, 10) != 0) throw DomainError("not a rational: " + str);
    if (r.get_den() == 0) throw DomainError("zero denominator: " + str);
    r.canonicalize();
    return r;
}

long to_long(const Rational& x) {
    if (x.get_den() != 1) throw DomainError("not an integer: " + to_string(x));
    if (!x.get_num().fits_slong_p()) throw DomainError("integer too large: " + to_string(x));
    return x.get_num().get_si();
}

Rational rational_pow(long k, long e) {
    if (k == 0) {
        if (e <= 0) throw DomainError("0 to a non-positive power");
        return 0;
    }
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), Integer(k).get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rational(p);
    Rational r(1);
    r /= Rational(p);
    return r;
}

Rational rational_pow(const Rational& x, long e) {
    Integer n, d;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), a);
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), a);
    if (e < 0) {
        if (n == 0) throw DomainError("0 to a negative power");
        std::swap(n, d);
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer gen_binomial(long a, long k) {
    if (k < 0) return 0;
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), Integer(a).get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

}  // namespace nlgw
