#pragma once

#include "nlgw/mirror.hpp"
#include "nlgw/nlforms.hpp"
#include "nlgw/redgw.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nlgw {

enum class CheckMode { ProvenOnly, Conjectural, Hybrid };
CheckMode parse_mode(const std::string& s);
std::string to_string(CheckMode m);

// Genus-0 one-point multiple cover statement known for (beta, beta) < 0 and
// for (beta, beta) = 0; primitive classes need nothing.
bool is_proven_key(long m, const Rational& s);

// NL_{s,d} = NL(D) for valid (s, d), zero otherwise.
Rational unrefined_nl(const HeegnerSeries& phi, const Rational& s, long d);
// NL_{m,s,d} = NL_{1,s/m^2,d/m} with the primitive part obtained by Moebius inversion.
Rational refined_nl(const HeegnerSeries& phi, long m, const Rational& s, long d);

// sum_s NL_{s,d} 6 p d g_{1,s}
Rational rhs_primitive(const HeegnerSeries& phi, const PrimTables& prim, long p, long d);

struct Contribution {
    long m = 1;
    Rational s;  // (beta, beta)
    long D = 0;
    Rational nl;       // NL_{m,s,d}
    Rational g;        // mc-subtracted reduced invariant g_{m,s} (known part)
    Rational term;     // nl * 6 p d * g
    bool proven = true;
};

struct UnknownKey {
    long m = 1;
    Rational s;
    Rational coefficient;  // of G_{m,s} in the right-hand side
    Rational predicted;    // mc_assemble value
    std::optional<Rational> solved;
};

struct RefinedRHS {
    Rational value;  // known part
    std::vector<Contribution> contributions;
    std::vector<UnknownKey> unknowns;  // keys whose G was not supplied
};

// sum_{m | d} sum_s NL_{m,s,d} <H^3>^{mc}_{m,s,d}. In proven-only and hybrid
// modes, G_{m,s} for keys outside the proven set is left as an unknown.
RefinedRHS rhs_refined(const HeegnerSeries& phi, const PrimTables& prim, long p, long d, CheckMode mode);

struct DegreeRow {
    long d = 0;
    Rational lhs_raw;  // family invariant <H^3>_d
    Rational lhs;      // after multiple cover subtraction
    Rational rhs;      // rhs_primitive
    std::optional<Rational> rhs_refined;
    std::vector<Contribution> contributions;
    std::vector<UnknownKey> unknowns;
    bool match = false;
    std::string note;
};

struct GWNLReport {
    std::string family;
    long p = 0;
    CheckMode mode = CheckMode::ProvenOnly;
    std::vector<DegreeRow> rows;
    bool full_match() const;
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

// Residue of a fiber class of degree d for a polarization of divisibility 2.
long family_residue(long d);

// Compare mc-subtracted family invariants (raw values for d = 1..d_max) with
// both right-hand sides.
GWNLReport check_gwnl(const std::string& family, const HeegnerSeries& phi, const PrimTables& prim, long p,
                      const std::map<long, Rational>& family_values, CheckMode mode);

// Full pipeline for dv-pencil or fano-pencil: I-function, invariants,
// Noether-Lefschetz series, primitive tables.
struct PipelineData {
    FamilySpec family;
    long p = 0;
    HeegnerSeries phi;
    PrimTables prim;
    std::map<long, Rational> raw;  // <H^3>_d
    IFunction I;
};
PipelineData run_pipeline(const std::string& family, long d_max, unsigned workers = 0,
                          const ProgressFn& progress = nullptr);
GWNLReport check_gwnl(const PipelineData& data, CheckMode mode);

// Heegner series of the cubic pencil from its Hodge degree and NL(3) = 192.
HeegnerSeries cubic_pencil_series(long B);

struct LinearEquation {
    long d = 0;
    Rational lhs;
    std::map<long, Rational> coeffs;  // D -> coefficient of NL(D)
    std::string to_string() const;
};

struct DVExtraction {
    std::vector<LinearEquation> equations;
    bool unique = false;
    std::map<long, Rational> nl;  // solved NL(D) for D <= 44
    std::vector<long> vanishing;  // D among the unknowns with NL(D) = 0
};

// The GW/NL equations for d <= 5 as linear forms in NL(D), solved inside the
// weight-11 plus space with NL(0) = -10.
DVExtraction dv_constraint_extraction(const std::map<long, Rational>& family_values, const PrimTables& prim,
                                      long d_max = 5);

struct CandidateResult {
    long d = 0;
    std::vector<UnknownKey> unknowns;
    bool determined = false;
    bool agrees = false;
};

// Solve the relation at the listed degrees for the imprimitive G_{m,s} with
// s >= 0 (proven or not) and compare with mc_assemble.
std::vector<CandidateResult> mc_candidate_extraction(const PipelineData& data, const std::vector<long>& degrees);

}  // namespace nlgw
