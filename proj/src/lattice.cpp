#include "nlgw/lattice.hpp"

#include "nlgw/qseries.hpp"

#include <cstdlib>
#include <numeric>

namespace nlgw {

static void check_shape(const GramMatrix& a, const std::vector<long>& d) {
    for (const auto& row : a)
        if (row.size() != a.size()) throw DomainError("Gram matrix is not square");
    if (d.size() != a.size()) throw DomainError("degree vector length does not match the Gram matrix");
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (a[i][j] != a[j][i]) throw DomainError("Gram matrix is not symmetric");
}

Rational det_bordered(const GramMatrix& a, const std::vector<long>& d, const Rational& s) {
    check_shape(a, d);
    size_t n = a.size();
    RMatrix b(n + 1, RVector(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) b[i][j] = a[i][j];
        b[i][n] = d[i];
        b[n][i] = d[i];
    }
    b[n][n] = s;
    return determinant(b);
}

static Rational nonsingular_det(const GramMatrix& a) {
    Rational det = determinant(a);
    if (det == 0) throw DomainError("Gram matrix is singular");
    return det;
}

Rational projection_norm(const GramMatrix& a, const std::vector<long>& d, const Rational& s) {
    Rational det = nonsingular_det(a);
    return det_bordered(a, d, s) / det;
}

Rational dtilde(const GramMatrix& a, const std::vector<long>& d, const Rational& s) {
    return Rational(-1, 2) * projection_norm(a, d, s);
}

std::optional<long> try_disc_D(long p, long d, const Rational& s) {
    Rational D = (Rational(d) * d - Rational(2 * p) * s) / 4;
    if (!is_integer(D) || D < 0) return std::nullopt;
    return to_long(D);
}

DiscriminantD disc_D(long p, long d, const Rational& s) {
    auto D = try_disc_D(p, d, s);
    if (!D)
        throw DomainError("no lattice vector with d=" + std::to_string(d) + ", s=" + to_string(s) +
                          ": (d^2 - 2ps)/4 is not a non-negative integer");
    return {*D, p};
}

Residue Residue::make(long modulus, long r) {
    if (modulus < 1) throw DomainError("residue modulus must be positive");
    long x = ((r % modulus) + modulus) % modulus;
    return {modulus, std::min(x, modulus - x) % modulus};
}

Residue residue_k3n2(const Rational& s) {
    Rational two_s = 2 * s;
    if (!is_integer(two_s)) throw DomainError("2s must be an integer, got s=" + to_string(s));
    return Residue::make(2, to_long(two_s));
}

bool valid_norm_k3n2(const Rational& s) {
    Rational two_s = 2 * s;
    if (!is_integer(two_s)) return false;
    long t = ((to_long(two_s) % 4) + 4) % 4;
    return t == 0 || t == 3;
}

CurveClassKey make_key(long m, const Rational& s, const std::vector<long>& d) {
    if (m < 1) throw DomainError("divisibility must be positive");
    for (long x : d)
        if (x % m != 0) throw DomainError("divisibility must divide every degree");
    return {m, s, d, residue_k3n2(s)};
}

CurveClassKey refine_nl(long m, const Rational& s, const std::vector<long>& d) {
    if (m < 1) throw DomainError("divisibility must be positive");
    std::vector<long> dd;
    for (long x : d) {
        if (x % m != 0) throw DomainError("m does not divide the degree vector");
        dd.push_back(x / m);
    }
    Rational s1 = s / (Rational(m) * m);
    if (!valid_norm_k3n2(s1)) throw DomainError("s/m^2 = " + to_string(s1) + " is not a valid norm");
    return {1, s1, dd, residue_k3n2(s1)};
}

NLValidity prime_disc_validity(long p) {
    return [p](const Rational& s, const std::vector<long>& d) {
        if (d.size() != 1) return false;
        return valid_norm_k3n2(s) && try_disc_D(p, d[0], s).has_value();
    };
}

std::vector<long> admissible_divisibilities(const Rational& s, const std::vector<long>& d, const NLValidity& valid) {
    long g = 0;
    for (long x : d) g = std::gcd(g, std::labs(x));
    std::vector<long> candidates;
    if (g > 0) {
        candidates = divisors(g);
    } else {
        // All degrees vanish: m is bounded by m^2 | 2s numerator.
        if (s == 0) throw DomainError("the zero class has no divisibility");
        Rational two_s = 2 * s;
        Integer bound = abs(two_s.get_num());
        for (long m = 1; Integer(m) * m <= bound; ++m) candidates.push_back(m);
    }
    std::vector<long> out;
    for (long m : candidates) {
        std::vector<long> dm;
        for (long x : d) dm.push_back(x / m);
        if (valid(s / (Rational(m) * m), dm)) out.push_back(m);
    }
    return out;
}

static Rational lookup(const NLTable& t, const Rational& s, const std::vector<long>& d) {
    auto it = t.find({s, d});
    if (it == t.end()) {
        std::string ds;
        for (long x : d) ds += (ds.empty() ? "" : ",") + std::to_string(x);
        throw DomainError("missing NL table entry for s=" + to_string(s) + ", d=(" + ds + ")");
    }
    return it->second;
}

Rational unrefine_nl(const NLTable& primitive, const Rational& s, const std::vector<long>& d, const NLValidity& valid) {
    Rational total = 0;
    for (long m : admissible_divisibilities(s, d, valid)) {
        std::vector<long> dm;
        for (long x : d) dm.push_back(x / m);
        total += lookup(primitive, s / (Rational(m) * m), dm);
    }
    return total;
}

Rational primitive_nl(const NLTable& unrefined, const Rational& s, const std::vector<long>& d, const NLValidity& valid) {
    Rational total = 0;
    for (long k : admissible_divisibilities(s, d, valid)) {
        int mu = moebius(k);
        if (mu == 0) continue;
        std::vector<long> dk;
        for (long x : d) dk.push_back(x / k);
        total += mu * lookup(unrefined, s / (Rational(k) * k), dk);
    }
    return total;
}

std::optional<std::pair<long, long>> cc_representation(long p, long e) {
    if (e < 1) return std::nullopt;
    for (long k = 0; k <= p / 2; ++k) {
        long rest = e - k * k;
        if (rest < 0) break;
        if (rest % p == 0) return std::make_pair(rest / p, k);
    }
    return std::nullopt;
}

long sqrt_mod(long p, long D) {
    long r = ((D % p) + p) % p;
    for (long a = 0; a < p; ++a)
        if ((a * a) % p == r) return a;
    throw DomainError(std::to_string(D) + " is not a square modulo " + std::to_string(p));
}

CCCoefficient heegner_to_cc_coefficient(long p, long D, long alpha, long e) {
    if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
    if (D < 1) throw DomainError("D must be positive");
    if (legendre_chi(p, D) == -1) throw DomainError(std::to_string(D) + " is not a square modulo " + std::to_string(p));
    if ((((alpha * alpha - D) % p) + p) % p != 0) throw DomainError("alpha^2 is not congruent to D");
    if (e < 1) throw DomainError("e must be positive");
    auto rep = cc_representation(p, e);
    if (!rep) return {0, true};
    long k = rep->second;
    if (D % e != 0) return {0, false};
    long q = D / e;
    long c = std::lround(std::sqrt(static_cast<double>(q)));
    while (c * c > q) --c;
    while ((c + 1) * (c + 1) <= q) ++c;
    if (c * c != q) return {0, false};
    long count = 0;
    for (long cc : {c, -c}) {
        if (c == 0 && cc == -c && count > 0) break;
        if ((((k * cc - alpha) % p) + p) % p == 0) ++count;
    }
    return {count, false};
}

}  // namespace nlgw
