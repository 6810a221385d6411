#pragma once

#include "nlgw/linalg.hpp"
#include "nlgw/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace nlgw {

using GramMatrix = RMatrix;

Rational det_bordered(const GramMatrix& a, const std::vector<long>& d, const Rational& s);
Rational dtilde(const GramMatrix& a, const std::vector<long>& d, const Rational& s);
Rational projection_norm(const GramMatrix& a, const std::vector<long>& d, const Rational& s);

struct DiscriminantD {
    long D = 0;
    long p = 0;
};

// D = (d^2 - 2ps)/4 for a single polarization of square 2p. Throws DomainError
// when D is not a non-negative integer: no lattice vector has these invariants.
DiscriminantD disc_D(long p, long d, const Rational& s);
// Same, without throwing.
std::optional<long> try_disc_D(long p, long d, const Rational& s);

// Residue class in Z/(2n-2), stored up to sign.
struct Residue {
    long modulus = 2;
    long r = 0;  // canonical representative in [0, modulus/2]
    static Residue make(long modulus, long r);
    friend bool operator==(const Residue& a, const Residue& b) { return a.modulus == b.modulus && a.r == b.r; }
};

// For K3^[2]-type the residue of beta is the parity of 2 (beta, beta).
Residue residue_k3n2(const Rational& s);

// Norms occurring in the dual of the K3^[2] lattice: s in 2Z or 2Z - 1/2.
bool valid_norm_k3n2(const Rational& s);

struct CurveClassKey {
    long m = 1;
    Rational s;
    std::vector<long> d;
    Residue r;
    friend bool operator==(const CurveClassKey& a, const CurveClassKey& b) {
        return a.m == b.m && a.s == b.s && a.d == b.d && a.r == b.r;
    }
};

CurveClassKey make_key(long m, const Rational& s, const std::vector<long>& d);

// (m, s, d) -> (1, s/m^2, d/m).
CurveClassKey refine_nl(long m, const Rational& s, const std::vector<long>& d);

using NLKey = std::pair<Rational, std::vector<long>>;
using NLTable = std::map<NLKey, Rational>;
using NLValidity = std::function<bool(const Rational& s, const std::vector<long>& d)>;

// Validity of (s, d) for a K3^[2] family polarized by a class of square 2p
// with divisibility 2: valid norm and integral non-negative D.
NLValidity prime_disc_validity(long p);

// Multipliers m with m | gcd(d) and (s/m^2, d/m) valid.
std::vector<long> admissible_divisibilities(const Rational& s, const std::vector<long>& d, const NLValidity& valid);

// NL_{s,d} = sum_m NL_{1, s/m^2, d/m} from a table of primitive numbers.
Rational unrefine_nl(const NLTable& primitive, const Rational& s, const std::vector<long>& d, const NLValidity& valid);
// NL_{1,s,d} = sum_k mu(k) NL_{s/k^2, d/k} from a table of unrefined numbers.
Rational primitive_nl(const NLTable& unrefined, const Rational& s, const std::vector<long>& d, const NLValidity& valid);

// e = p a0 + k^2 with 0 <= k <= p/2, a0 >= 0, if such a representation exists.
std::optional<std::pair<long, long>> cc_representation(long p, long e);

struct CCCoefficient {
    long value = 0;
    bool absent = false;  // e admits no representation p a0 + k^2
};

// Coefficient of C_{2e} in NL(D).
CCCoefficient heegner_to_cc_coefficient(long p, long D, long alpha, long e);

// A square root of D modulo p (smallest non-negative one).
long sqrt_mod(long p, long D);

}  // namespace nlgw
