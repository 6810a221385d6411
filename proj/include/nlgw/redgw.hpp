#pragma once

#include "nlgw/lattice.hpp"
#include "nlgw/qseries.hpp"

#include <functional>
#include <map>
#include <utility>

namespace nlgw {

struct FGPair {
    Rational F;
    Rational G;
    friend bool operator==(const FGPair& a, const FGPair& b) { return a.F == b.F && a.G == b.G; }
};

// Primitive genus-0 data f_{1,s}, g_{1,s} keyed by the integer 4s.
struct PrimTables {
    std::map<long, Rational> f1, g1;
    long min_key = 0;  // lowest 4s in the support
    long max_key = 0;  // highest verified 4s

    // Zero below the support; throws TruncationError above max_key.
    Rational f(const Rational& s) const;
    Rational g(const Rational& s) const;
};

// Expand (-1/4) / (theta alpha Delta(q^4)) and
// (theta^4 + 4 alpha + 24 G2(q^4)) / (12 theta alpha Delta(q^4)); the
// coefficient of (-q)^{2s} is f_{1,s}, resp. g_{1,s}.
PrimTables prim_tables(const Rational& s_max);

long key_of(const Rational& s);  // 4s, asserting integrality

// Parity of 2(s + s/k^2), asserting integrality.
int mc_sign(const Rational& s, long k);

// F_{m,s} = sum_{k|m} k^{-5} (-1)^{2(s+s/k^2)} F_{1,s/k^2}, G likewise with k^{-3}.
// Divisors k with s/k^2 not a valid norm are skipped.
FGPair mc_assemble(const PrimTables& prim, long m, const Rational& s);

using FGLookup = std::function<FGPair(long m, const Rational& s)>;
// f_{m,s} = sum_{k|m} mu(k) k^{-5} (-1)^{2(s+s/k^2)} F_{m/k,s/k^2}, g likewise.
FGPair mc_subtract(const FGLookup& values, long m, const Rational& s);

// N_{m,s,r} = sum_{k|m} k^{-3} (-1)^{mr + (m/k) r} N_{1,s/k^2,mr/k} with the
// primitive uniruled numbers N_{1,s,r} = g_{1,s} (r = 2s mod 2).
Rational uniruled_mc(const std::map<long, Rational>& primitive_n, long m, const Rational& s, long r);

// Fiber invariant <H^3> = 3 q(H) (H, beta) G = 6 p d G for q(H) = 2p.
Rational fiber_invariant_H3(long p, const CurveClassKey& key, const FGPair& pair);

// Characteristic numbers of K3^[2]: int c2 a^2 = c2_a2 q(a), int c2^2 = c2_c2,
// int a^4 = fujiki q(a)^2.
struct CharNumbers {
    Rational fujiki = 3;
    Rational c2_a2 = 30;
    Rational c2_c2 = 828;
};

// ev_*(psi^k [M_{0,1}(X, beta)]) in the basis {beta^v, h^2, c2, beta, 1}
// with h = beta^v.
struct DescendentClass {
    long k = 0;
    Rational beta_dual;  // coefficient of h (k = 0)
    Rational h_sq;       // coefficient of h^2 (k = 1)
    Rational c2;         // coefficient of c2 (k = 1)
    Rational curve;      // coefficient of the curve class beta (k = 2)
    Rational number;     // degree-zero part (k = 3)
};
DescendentClass descendent_pushforward_constants(const FGPair& pair, const Rational& s, long k);
// Pairing with H^{3-k}, where q(H) = 2p and (H, beta) = d.
Rational descendent_pairing(const DescendentClass& c, const Rational& s, long p, long d,
                            const CharNumbers& chars = {});

using HilbDoubleSeries = std::map<std::pair<long, long>, Rational>;  // (d, r) -> c(d, r)
// T_{m,l} f: coefficient at (d, r) is sum_{k | (m, d, r)} k^{l-1} c(md/k^2, r/k).
HilbDoubleSeries hecke_T(long m, long ell, const HilbDoubleSeries& f);

long modified_degree(long deg, long w, long f);

}  // namespace nlgw
