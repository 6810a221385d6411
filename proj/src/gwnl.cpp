#include "nlgw/gwnl.hpp"

#include "nlgw/linalg.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

namespace nlgw {

CheckMode parse_mode(const std::string& s) {
    if (s == "proven-only") return CheckMode::ProvenOnly;
    if (s == "conjectural") return CheckMode::Conjectural;
    if (s == "hybrid") return CheckMode::Hybrid;
    throw DomainError("unknown mode '" + s + "' (expected proven-only, conjectural or hybrid)");
}

std::string to_string(CheckMode m) {
    switch (m) {
        case CheckMode::ProvenOnly: return "proven-only";
        case CheckMode::Conjectural: return "conjectural";
        case CheckMode::Hybrid: return "hybrid";
    }
    return "?";
}

bool is_proven_key(long m, const Rational& s) { return m == 1 || s <= 0; }

long family_residue(long d) { return ((d % 2) + 2) % 2; }

Rational unrefined_nl(const HeegnerSeries& phi, const Rational& s, long d) {
    if (!valid_norm_k3n2(s)) return 0;
    auto D = try_disc_D(phi.p, d, s);
    if (!D) return 0;
    return phi.nl(*D);
}

Rational refined_nl(const HeegnerSeries& phi, long m, const Rational& s, long d) {
    if (m < 1 || d % m != 0) return 0;
    const Rational sa = s / (m * m);
    const long da = d / m;
    if (!valid_norm_k3n2(sa)) return 0;
    Rational total = 0;
    for (long k : divisors(da == 0 ? 1 : da)) {
        int mu = moebius(k);
        if (mu == 0) continue;
        total += mu * unrefined_nl(phi, sa / (k * k), da / k);
    }
    return total;
}

// Values of 4s with s >= -5/2 and D = (d^2 - 2ps)/4 >= 0.
static std::vector<Rational> norm_range(long p, long d) {
    std::vector<Rational> out;
    for (long x = -10; x * p <= 2 * d * d; ++x) {
        Rational s(x, 4);
        s.canonicalize();
        if (valid_norm_k3n2(s) && try_disc_D(p, d, s)) out.push_back(s);
    }
    return out;
}

Rational rhs_primitive(const HeegnerSeries& phi, const PrimTables& prim, long p, long d) {
    if (d < 1) throw DomainError("degree must be positive");
    Rational total = 0;
    for (const auto& s : norm_range(p, d)) {
        Rational g = prim.g(s);
        if (g == 0) continue;
        total += unrefined_nl(phi, s, d) * 6 * p * d * g;
    }
    return total;
}

// Returns G for a key when it is available, nullopt when it must be treated as unknown.
using GLookup = std::function<std::optional<Rational>(long m, const Rational& s)>;

static RefinedRHS rhs_refined_impl(const HeegnerSeries& phi, const PrimTables& prim, long p, long d,
                                   const GLookup& known) {
    if (d < 1) throw DomainError("degree must be positive");
    RefinedRHS out;
    out.value = 0;
    std::map<std::pair<long, Rational>, UnknownKey> unknown;
    for (long m : divisors(d)) {
        const long da = d / m;
        for (const auto& sa : norm_range(p, da)) {
            const Rational s = sa * (m * m);
            Rational nl = refined_nl(phi, m, s, d);
            if (nl == 0) continue;
            Contribution c;
            c.m = m;
            c.s = s;
            c.D = *try_disc_D(p, da, sa);
            c.nl = nl;
            c.g = 0;
            c.proven = is_proven_key(m, s);
            const Rational scale = nl * 6 * p * d;
            for (long k : divisors(m)) {
                int mu = moebius(k);
                if (mu == 0) continue;
                const Rational sk = s / (k * k);
                if (!valid_norm_k3n2(sk)) continue;
                const long mk = m / k;
                const Rational w = mu * mc_sign(s, k) * rational_pow(Rational(k), -3);
                if (mk == 1) {
                    c.g += w * prim.g(sk);
                } else if (auto G = known(mk, sk)) {
                    c.g += w * *G;
                } else {
                    auto key = std::make_pair(mk, sk);
                    auto it = unknown.find(key);
                    if (it == unknown.end()) {
                        UnknownKey u;
                        u.m = mk;
                        u.s = sk;
                        u.coefficient = 0;
                        u.predicted = mc_assemble(prim, mk, sk).G;
                        it = unknown.emplace(key, u).first;
                    }
                    it->second.coefficient += scale * w;
                }
            }
            c.term = scale * c.g;
            out.value += c.term;
            out.contributions.push_back(c);
        }
    }
    for (auto& [key, u] : unknown)
        if (u.coefficient != 0) out.unknowns.push_back(u);
    return out;
}

RefinedRHS rhs_refined(const HeegnerSeries& phi, const PrimTables& prim, long p, long d, CheckMode mode) {
    GLookup known = [&](long m, const Rational& s) -> std::optional<Rational> {
        if (mode == CheckMode::Conjectural || is_proven_key(m, s)) return mc_assemble(prim, m, s).G;
        return std::nullopt;
    };
    return rhs_refined_impl(phi, prim, p, d, known);
}

bool GWNLReport::full_match() const {
    if (rows.empty()) return false;
    for (const auto& r : rows)
        if (!r.match) return false;
    return true;
}

nlohmann::json GWNLReport::to_json() const {
    nlohmann::json j;
    j["family"] = family;
    j["p"] = p;
    j["mode"] = to_string(mode);
    j["normalization"] =
        "NL numbers and family invariants both refer to the pencil over its base P^1; "
        "left side is mc-subtracted with weight k^-2 and sign (-1)^(r(d)+r(d/k)), r(d) = d mod 2";
    j["full_match"] = full_match();
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["degree"] = r.d;
        row["lhs_raw"] = to_string(r.lhs_raw);
        row["lhs"] = to_string(r.lhs);
        row["rhs"] = to_string(r.rhs);
        row["rhs_refined"] = r.rhs_refined ? nlohmann::json(to_string(*r.rhs_refined)) : nlohmann::json(nullptr);
        row["match"] = r.match;
        if (!r.note.empty()) row["note"] = r.note;
        nlohmann::json cs = nlohmann::json::array();
        for (const auto& c : r.contributions)
            cs.push_back({{"m", c.m},
                          {"s_times_4", key_of(c.s)},
                          {"D", c.D},
                          {"NL", to_string(c.nl)},
                          {"g", to_string(c.g)},
                          {"term", to_string(c.term)},
                          {"proven", c.proven}});
        row["contributions"] = cs;
        nlohmann::json us = nlohmann::json::array();
        for (const auto& u : r.unknowns)
            us.push_back({{"m", u.m},
                          {"s_times_4", key_of(u.s)},
                          {"coefficient", to_string(u.coefficient)},
                          {"predicted_G", to_string(u.predicted)},
                          {"solved_G", u.solved ? nlohmann::json(to_string(*u.solved)) : nlohmann::json(nullptr)}});
        row["unknowns"] = us;
        rs.push_back(row);
    }
    j["rows"] = rs;
    return j;
}

std::string GWNLReport::to_csv() const {
    std::ostringstream os;
    os << "degree,lhs_raw,lhs,rhs,rhs_refined,match\n";
    for (const auto& r : rows)
        os << r.d << ',' << to_string(r.lhs_raw) << ',' << to_string(r.lhs) << ',' << to_string(r.rhs) << ','
           << (r.rhs_refined ? to_string(*r.rhs_refined) : "") << ',' << (r.match ? "true" : "false") << '\n';
    return os.str();
}

GWNLReport check_gwnl(const std::string& family, const HeegnerSeries& phi, const PrimTables& prim, long p,
                      const std::map<long, Rational>& family_values, CheckMode mode) {
    GWNLReport rep;
    rep.family = family;
    rep.p = p;
    rep.mode = mode;
    auto lhs = mc_subtract_family(family_values, family_residue, -2);
    // Hybrid mode reuses values solved at lower degree.
    std::map<std::pair<long, Rational>, Rational> solved;
    GLookup known = [&](long m, const Rational& s) -> std::optional<Rational> {
        if (mode == CheckMode::Conjectural || is_proven_key(m, s)) return mc_assemble(prim, m, s).G;
        auto it = solved.find({m, s});
        if (it != solved.end()) return it->second;
        return std::nullopt;
    };
    for (const auto& [d, raw] : family_values) {
        if (d < 1) continue;
        DegreeRow row;
        row.d = d;
        row.lhs_raw = raw;
        row.lhs = lhs.at(d);
        try {
            row.rhs = rhs_primitive(phi, prim, p, d);
            RefinedRHS ref = rhs_refined_impl(phi, prim, p, d, known);
            row.contributions = ref.contributions;
            row.unknowns = ref.unknowns;
            if (ref.unknowns.empty()) {
                row.rhs_refined = ref.value;
                row.match = row.lhs == row.rhs && row.lhs == ref.value;
            } else if (mode == CheckMode::Hybrid && ref.unknowns.size() == 1) {
                UnknownKey& u = row.unknowns.front();
                u.solved = (row.lhs - ref.value) / u.coefficient;
                row.rhs_refined = ref.value + u.coefficient * *u.solved;
                row.match = *u.solved == u.predicted && row.lhs == row.rhs;
                if (row.match) solved[{u.m, u.s}] = *u.solved;
                row.note = "solved G for the key outside the proven set";
            } else {
                row.match = false;
                row.note = mode == CheckMode::ProvenOnly ? "keys outside the proven set"
                                                         : "more than one unknown key: underdetermined";
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("degree " + std::to_string(d) + ": " + e.what());
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

HeegnerSeries cubic_pencil_series(long B) {
    Rational nl0 = grr_hodge_degree(fano_pencil_family()) / 3;
    // NL(3): nodal cubics in a generic pencil.
    return solve_cubic_form(nl0, 192, B);
}

PipelineData run_pipeline(const std::string& family, long d_max, unsigned workers, const ProgressFn& progress) {
    if (d_max < 1) throw DomainError("d_max must be at least 1");
    PipelineData data;
    data.family = family_by_name(family);
    if (family == "dv-pencil") data.p = 11;
    else if (family == "fano-pencil") data.p = 3;
    else throw DomainError("GW/NL checks are available for dv-pencil and fano-pencil");
    const long p = data.p;
    const long max_D = (d_max * d_max + 5 * p) / 4;
    if (p == 11) data.phi = dv_phi(std::max<long>(max_D + 1, 45));
    else data.phi = cubic_pencil_series(std::max<long>(max_D + 3, 44));
    data.prim = prim_tables(Rational(d_max * d_max, 2 * p) + 1);
    data.I = compute_I(data.family, d_max, 2, workers, progress);
    if (progress) progress(d_max, "invariants");
    for (const auto& [d, v] : family_invariants(data.I, polarization_power(data.family, 3), d_max, 0))
        data.raw[d] = v.value;
    return data;
}

GWNLReport check_gwnl(const PipelineData& data, CheckMode mode) {
    return check_gwnl(data.family.name, data.phi, data.prim, data.p, data.raw, mode);
}

std::string LinearEquation::to_string() const {
    std::ostringstream os;
    os << nlgw::to_string(lhs) << " =";
    bool first = true;
    for (const auto& [D, c] : coeffs) {
        os << (first ? " " : " + ") << nlgw::to_string(c) << " NL(" << D << ")";
        first = false;
    }
    if (first) os << " 0";
    return os.str();
}

DVExtraction dv_constraint_extraction(const std::map<long, Rational>& family_values, const PrimTables& prim,
                                      long d_max) {
    const long p = 11;
    const long B = 44;
    DVExtraction out;
    auto lhs = mc_subtract_family(family_values, family_residue, -2);
    for (long d = 1; d <= d_max; ++d) {
        LinearEquation eq;
        eq.d = d;
        eq.lhs = lhs.at(d);
        for (const auto& s : norm_range(p, d)) {
            Rational g = prim.g(s);
            if (g == 0) continue;
            long D = *try_disc_D(p, d, s);
            if (D > B) throw TruncationError("equation involves NL beyond the plus-space precision");
            eq.coeffs[D] += 6 * p * d * g;
        }
        out.equations.push_back(eq);
    }
    auto basis = plus_space_basis(p, 11, B);
    auto nl_of = [&](const FracSeries& f, long D) { return D % p == 0 ? 2 * f.coeff(D) : f.coeff(D); };
    RMatrix a;
    RVector b;
    {
        RVector row;
        for (const auto& f : basis) row.push_back(nl_of(f, 0));
        a.push_back(row);
        b.push_back(-10);
    }
    for (const auto& eq : out.equations) {
        RVector row(basis.size(), 0);
        for (const auto& [D, c] : eq.coeffs)
            for (size_t i = 0; i < basis.size(); ++i) row[i] += c * nl_of(basis[i], D);
        a.push_back(row);
        b.push_back(eq.lhs);
    }
    SolveResult res = solve(a, b, basis.size());
    if (!res.consistent) throw ConsistencyError("GW/NL equations are inconsistent with the plus space");
    out.unique = res.unique;
    if (!res.unique) return out;
    for (long D = 0; D <= B; ++D) {
        Rational v = 0;
        for (size_t i = 0; i < basis.size(); ++i) v += res.x[i] * nl_of(basis[i], D);
        out.nl[D] = v;
    }
    std::set<long> seen;
    for (const auto& eq : out.equations)
        for (const auto& [D, c] : eq.coeffs)
            if (out.nl[D] == 0) seen.insert(D);
    out.vanishing.assign(seen.begin(), seen.end());
    return out;
}

std::vector<CandidateResult> mc_candidate_extraction(const PipelineData& data, const std::vector<long>& degrees) {
    auto lhs = mc_subtract_family(data.raw, family_residue, -2);
    std::map<std::pair<long, Rational>, Rational> solved;
    GLookup known = [&](long m, const Rational& s) -> std::optional<Rational> {
        if (m == 1 || s < 0) return mc_assemble(data.prim, m, s).G;
        auto it = solved.find({m, s});
        if (it != solved.end()) return it->second;
        return std::nullopt;
    };
    std::vector<CandidateResult> out;
    std::vector<long> sorted(degrees);
    std::sort(sorted.begin(), sorted.end());
    for (long d : sorted) {
        if (!lhs.count(d)) throw TruncationError("family invariant missing at degree " + std::to_string(d));
        RefinedRHS ref = rhs_refined_impl(data.phi, data.prim, data.p, d, known);
        CandidateResult c;
        c.d = d;
        c.unknowns = ref.unknowns;
        if (ref.unknowns.empty()) {
            c.determined = true;
            c.agrees = ref.value == lhs.at(d);
        } else if (ref.unknowns.size() == 1) {
            UnknownKey& u = c.unknowns.front();
            u.solved = (lhs.at(d) - ref.value) / u.coefficient;
            c.determined = true;
            c.agrees = *u.solved == u.predicted;
            solved[{u.m, u.s}] = *u.solved;
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace nlgw
