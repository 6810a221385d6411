#pragma once

#include "nlgw/cohoring.hpp"
#include "nlgw/qseries.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nlgw {

// Explicit-z factors of the small I-function on a lifted or nilpotent shape.
// multidegree lists the degree on each factor, plus the P^1 degree if present.
RingElement toric_factor(const AmbientSpec& a, const std::vector<long>& multidegree, const RingShape& shape);
RingElement twist_factor(const std::vector<std::vector<long>>& summands, const std::vector<long>& multidegree,
                         const RingShape& shape);
// Numerator of the root factor over prod_{i<j} (H_i - H_j):
// (-1)^{sum_{i<j} (d_i - d_j)} prod_{i<j} (H_i - H_j + (d_i - d_j) z).
RingElement root_factor_numerator(const AmbientSpec& a, const std::vector<long>& composition,
                                  const RingShape& shape);

// Fiber-degree I-function coefficients. I_d is homogeneous of degree 0 when
// deg z = 1, so its class-degree-j part sits at z^{-j}; only classes of degree
// <= class_cap are computed.
struct IFunction {
    FamilySpec family;
    long class_cap = 2;
    std::map<long, RingElement> per_degree;
};

// Sum over all compositions using the sparse explicit-z ring (slow; a
// reference for small ambients).
RingElement assemble_I_fiber_sparse(const FamilySpec& fam, long d, long class_cap);

struct AssembleStats {
    size_t orbits = 0;
    size_t compositions = 0;
    size_t divisions = 0;  // exact divisions, each with a zero-remainder check
};

// Dense graded assembly: one product per partition of d, summed over its
// distinct arrangements with permutation signs, then divided exactly by the
// Vandermonde. Uses up to `workers` threads (0: NLGW_WORKERS or hardware).
RingElement assemble_I_fiber(const FamilySpec& fam, long d, long class_cap, unsigned workers = 0,
                             AssembleStats* stats = nullptr);

using ProgressFn = std::function<void(long d, const std::string& what)>;
IFunction compute_I(const FamilySpec& fam, long d_max, long class_cap, unsigned workers = 0,
                    const ProgressFn& progress = nullptr);

struct MirrorMapData {
    FracSeries f0, f1, f2;  // I_0 = f0, I_1 = f1 H + f2 h with H the polarization
};
MirrorMapData mirror_map(const IFunction& I, long d_max);

// Given s(q) and g = f1/f0, return s(q(Q)) where Q = q exp(g(q)).
FracSeries invert_mirror_variable(const FracSeries& s, const FracSeries& g, long d_max);
// q(Q) itself.
FracSeries mirror_inverse(const FracSeries& g, long d_max);

// Insertion: power of a linear form in (H_1..H_k, h).
struct Insertion {
    std::vector<long> form;
    long power = 0;
};
Insertion polarization_power(const FamilySpec& fam, long power);

struct InvariantValue {
    Rational value;
    bool dimension_mismatch = false;
};

// Class-degree components of J = e^{-t/z} I / I_0 as series in Q, keyed by
// monomial; component[j] is the z^{-j} coefficient.
struct JFunction {
    long d_max = 0;
    std::vector<std::map<Monomial, FracSeries>> component;
};
JFunction j_function(const IFunction& I, long d_max);

// Degree-d, psi^k one-point invariant of the family total space in fiber
// classes, paired with the insertion.
InvariantValue family_invariant(const IFunction& I, const Insertion& ins, long d, long k);
// All degrees 1..d_max at once.
std::map<long, InvariantValue> family_invariants(const IFunction& I, const Insertion& ins, long d_max, long k);

// sum_{k | d} (-1)^{r(d) + r(d/k)} mu(k) k^w values(d/k)
std::map<long, Rational> mc_subtract_family(const std::map<long, Rational>& values,
                                            const std::function<long(long)>& residue_of, long weight_exponent);
// Inverse: sum_{k | d} (-1)^{r(d) + r(d/k)} k^w values(d/k)
std::map<long, Rational> mc_assemble_family(const std::map<long, Rational>& values,
                                            const std::function<long(long)>& residue_of, long weight_exponent);

unsigned worker_count(unsigned requested = 0);

}  // namespace nlgw
