#pragma once

#include "nlgw/qseries.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace nlgw {

// Noether-Lefschetz generating series sum_D NL(D) q^{D/p}, stored on grid p.
struct HeegnerSeries {
    long p = 0;
    FracSeries series{1};

    // NL(D); throws TruncationError beyond the verified range.
    Rational nl(long D) const { return series.coeff(D); }
    // Largest D with a verified coefficient.
    long max_D() const { return series.order() - 1; }
    nlohmann::json to_json() const;
};

HeegnerSeries make_heegner(long p, const std::map<long, Rational>& values, long order);

struct MonomialBasis {
    long p = 0;
    long weight = 0;
    std::vector<std::array<long, 3>> monomials;  // (a, b, c): E1^a E3^b Delta_p^c
};

// Weight-k monomials in the generators. Delta_p = eta(tau)^2 eta(p tau)^2 is
// used only when it has integral q-exponents; the generator set is known to be
// complete for p in {3, 11}, which is enforced.
MonomialBasis monomial_basis(long p, long weight);
FracSeries delta_p(long p, long terms);
FracSeries evaluate_monomial(long p, const std::array<long, 3>& abc, long terms);

struct PolyTerm {
    Rational coeff;
    std::array<long, 3> abc;
};
// Explicit weight-11 expressions of phi_0 and phi_1 for p = 11.
const std::vector<PolyTerm>& dv_phi0_polynomial();
const std::vector<PolyTerm>& dv_phi1_polynomial();
FracSeries evaluate_polynomial(long p, const std::vector<PolyTerm>& poly, long terms);

FracSeries dv_phi0(long terms);
FracSeries dv_phi1(long terms);
// phi(q^11) = phi_0(q^11) + phi_1(q); NL(D) known for D < terms.
HeegnerSeries dv_phi(long terms);

// Echelonized basis of the plus space up to precision B (coefficients of q^n,
// n <= B). Throws ConsistencyError if the rank has not stabilized between
// B - p and B.
std::vector<FracSeries> plus_space_basis(long p, long weight, long B);

// Assemble NL(D) from a plus-space form F: NL(D) = F[D] for p not dividing D,
// 2 F[D] otherwise (the gamma = 0 component equals U_p F).
HeegnerSeries heegner_from_plus_form(long p, const FracSeries& F);

// Unique plus-space form with prescribed NL values. Throws ConsistencyError
// when the conditions do not determine it or are inconsistent.
HeegnerSeries solve_plus_space(long p, long B, const std::map<long, Rational>& nl_values);

// DV: NL(0) = -10 and the vanishing of NL(1), NL(3), NL(4), NL(5), NL(9).
// Also asserts agreement with dv_phi and that phi_0 = U_11 phi_1.
HeegnerSeries solve_dv_from_constraints(long B = 44);
HeegnerSeries solve_cubic_form(const Rational& nl0, const Rational& nl3, long B = 44);

struct NLValue {
    Rational value;
    bool vacuous = false;  // (s, d) corresponds to no lattice vector
    long D = -1;
};
NLValue nl_number(const HeegnerSeries& phi, const Rational& s, long d);

struct NLFirstTypeVector {
    long p = 0;
    std::map<long, Rational> C;  // e -> C^pi_{2e}
    std::set<long> absent;
};

NLFirstTypeVector heegner_to_first_type(const HeegnerSeries& phi, long e_max);
// Forward map: sum_e coeff(D, e) C_{2e}.
Rational first_type_to_heegner(const NLFirstTypeVector& v, long D);

enum class HLSStatus { HLS, NotHLS, Absent };
std::string to_string(HLSStatus s);

struct HLSEntry {
    long e = 0;
    HLSStatus status = HLSStatus::HLS;
    Rational C;          // C^pi_{2e}; zero when absent
    Rational nl;         // NL(e), reported so gap values are visible
    Rational relaxed_C;  // value if the representation e = p a0 + k^2 allowed a0 < 0
};

std::vector<HLSEntry> hls_report(const HeegnerSeries& phi, long e_max);

}  // namespace nlgw
