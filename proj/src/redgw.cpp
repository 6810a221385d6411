#include "nlgw/redgw.hpp"

#include <numeric>

namespace nlgw {

long key_of(const Rational& s) {
    Rational k = 4 * s;
    if (!is_integer(k)) throw DomainError("4s is not an integer for s = " + to_string(s));
    return to_long(k);
}

static Rational table_value(const std::map<long, Rational>& t, const PrimTables& p, const Rational& s) {
    long k = key_of(s);
    if (k < p.min_key) return 0;
    if (k > p.max_key) throw TruncationError("primitive table verified only up to 4s = " + std::to_string(p.max_key));
    auto it = t.find(k);
    return it == t.end() ? Rational(0) : it->second;
}

Rational PrimTables::f(const Rational& s) const { return table_value(f1, *this, s); }
Rational PrimTables::g(const Rational& s) const { return table_value(g1, *this, s); }

PrimTables prim_tables(const Rational& s_max) {
    if (s_max < Rational(-5, 2)) throw DomainError("s_max must be at least -5/2");
    // Exponent e = 2s of q; the expansions start at q^{-5}.
    Rational two_s = 2 * s_max;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), two_s.get_num_mpz_t(), two_s.get_den_mpz_t());
    const long e_max = fl.get_si();
    const long terms = e_max + 6;
    FracSeries th = theta(terms);
    FracSeries al = alpha_series(terms + 1).shifted(-1).truncated(terms);  // alpha / q
    FracSeries d4 = delta_series(terms / 4 + 2).shifted(-1).substitute_power(4).truncated(terms);  // Delta(q^4)/q^4
    FracSeries g24 = g2_series(terms / 4 + 1).substitute_power(4).truncated(terms);
    FracSeries inv = (th * al * d4).truncated(terms).inverse().truncated(terms);
    FracSeries f = (inv * Rational(-1, 4)).truncated(terms);
    FracSeries th2 = (th * th).truncated(terms);
    FracSeries num = (th2 * th2).truncated(terms) + alpha_series(terms) * Rational(4) + g24 * Rational(24);
    FracSeries g = (num * inv).truncated(terms) * Rational(1, 12);
    PrimTables t;
    t.min_key = -10;
    t.max_key = 2 * e_max;
    for (long i = 0; i < terms; ++i) {
        long e = i - 5;
        Rational sign = (e % 2 == 0) ? 1 : -1;
        Rational fv = f.coeff(i) * sign, gv = g.coeff(i) * sign;
        if (fv != 0) t.f1[2 * e] = fv;
        if (gv != 0) t.g1[2 * e] = gv;
    }
    return t;
}

int mc_sign(const Rational& s, long k) {
    Rational x = 2 * (s + s / (k * k));
    if (!is_integer(x)) throw DomainError("2(s + s/k^2) is not an integer");
    return x.get_num() % 2 == 0 ? 1 : -1;
}

FGPair mc_assemble(const PrimTables& prim, long m, const Rational& s) {
    if (m < 1) throw DomainError("divisibility must be positive");
    FGPair r{0, 0};
    for (long k : divisors(m)) {
        Rational sk = s / (k * k);
        if (!valid_norm_k3n2(sk)) continue;
        int sg = mc_sign(s, k);
        r.F += sg * rational_pow(Rational(k), -5) * prim.f(sk);
        r.G += sg * rational_pow(Rational(k), -3) * prim.g(sk);
    }
    return r;
}

FGPair mc_subtract(const FGLookup& values, long m, const Rational& s) {
    if (m < 1) throw DomainError("divisibility must be positive");
    FGPair r{0, 0};
    for (long k : divisors(m)) {
        int mu = moebius(k);
        if (mu == 0) continue;
        Rational sk = s / (k * k);
        if (!valid_norm_k3n2(sk)) continue;
        int sg = mc_sign(s, k);
        FGPair v = values(m / k, sk);
        r.F += mu * sg * rational_pow(Rational(k), -5) * v.F;
        r.G += mu * sg * rational_pow(Rational(k), -3) * v.G;
    }
    return r;
}

Rational uniruled_mc(const std::map<long, Rational>& primitive_n, long m, const Rational& s, long r) {
    if (m < 1) throw DomainError("divisibility must be positive");
    Rational total = 0;
    for (long k : divisors(m)) {
        Rational sk = s / (k * k);
        if (!valid_norm_k3n2(sk)) continue;
        long rk = m * r / k;
        Rational two_s = 2 * sk;
        long expected = to_long(Rational(two_s.get_num() % 2 == 0 ? 0 : 1));
        if (((rk % 2) + 2) % 2 != expected)
            throw ConsistencyError("residue " + std::to_string(rk) + " does not match the norm " + to_string(sk));
        auto it = primitive_n.find(key_of(sk));
        Rational n = it == primitive_n.end() ? Rational(0) : it->second;
        long e = m * r + (m / k) * r;
        Rational term = rational_pow(Rational(k), -3) * n;
        total += (e % 2 == 0) ? term : -term;
    }
    return total;
}

Rational fiber_invariant_H3(long p, const CurveClassKey& key, const FGPair& pair) {
    if (key.d.size() != 1) throw DomainError("single polarization expected");
    return 3 * Rational(2 * p) * key.d[0] * pair.G;
}

DescendentClass descendent_pushforward_constants(const FGPair& pair, const Rational& s, long k) {
    DescendentClass c;
    c.k = k;
    switch (k) {
        case 0: c.beta_dual = pair.G; break;
        case 1:
            c.h_sq = 2 * pair.F;
            c.c2 = -(pair.G + s * pair.F) / 15;
            break;
        case 2: c.curve = -12 * pair.F; break;
        case 3: c.number = 24 * pair.F; break;
        default: throw DomainError("psi power must be between 0 and 3");
    }
    return c;
}

Rational descendent_pairing(const DescendentClass& c, const Rational& s, long p, long d, const CharNumbers& chars) {
    const Rational qH = 2 * p;
    const Rational qHb = d;  // q(H, h) with h = beta^v
    // Fujiki relations for K3^[2] scaled by fujiki/3.
    const Rational fj = chars.fujiki / 3;
    switch (c.k) {
        case 0: return c.beta_dual * fj * 3 * qH * qHb;
        case 1: return c.h_sq * fj * (qH * s + 2 * qHb * qHb) + c.c2 * chars.c2_a2 * qH;
        case 2: return c.curve * d;
        case 3: return c.number;
        default: throw DomainError("psi power must be between 0 and 3");
    }
}

HilbDoubleSeries hecke_T(long m, long ell, const HilbDoubleSeries& f) {
    if (m < 1) throw DomainError("m must be positive");
    HilbDoubleSeries out;
    for (const auto& [key, c] : f) {
        if (c == 0) continue;
        const long D = key.first, R = key.second;
        // (D, R) = (m d / k^2, r / k) for the target (d, r).
        for (long k : divisors(m)) {
            if ((D * k * k) % m != 0) continue;
            long d = D * k * k / m;
            long r = R * k;
            if (d % k != 0) continue;
            Rational term = rational_pow(Rational(k), ell - 1) * c;
            Rational& slot = out[{d, r}];
            slot += term;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0) it = out.erase(it);
        else ++it;
    }
    return out;
}

long modified_degree(long deg, long w, long f) { return deg + w - f; }

}  // namespace nlgw
