#include "nlgw/nlforms.hpp"

#include "nlgw/lattice.hpp"
#include "nlgw/linalg.hpp"

#include <cmath>

namespace nlgw {

nlohmann::json HeegnerSeries::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["max_D"] = max_D();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [D, c] : series.coeffs()) rows.push_back({D, to_string(c)});
    j["nl"] = rows;
    return j;
}

HeegnerSeries make_heegner(long p, const std::map<long, Rational>& values, long order) {
    HeegnerSeries h;
    h.p = p;
    h.series = FracSeries(p, order);
    for (const auto& [D, c] : values)
        if (D < order) h.series.set(D, c);
    return h;
}

static void require_supported_prime(long p) {
    if (p != 3 && p != 11)
        throw DomainError("the generator set E1, E3, Delta_p is only certified for p in {3, 11}");
}

FracSeries delta_p(long p, long terms) {
    if ((p + 1) % 12 != 0) throw DomainError("eta(tau)^2 eta(p tau)^2 has non-integral exponents for this p");
    return eta_power_product({{1, 2}, {p, 2}}, terms).truncated(terms);
}

MonomialBasis monomial_basis(long p, long weight) {
    require_supported_prime(p);
    MonomialBasis b{p, weight, {}};
    bool use_delta = (p + 1) % 12 == 0;
    for (long c = 0; 2 * c <= weight; ++c) {
        if (c > 0 && !use_delta) break;
        for (long bb = 0; 3 * bb + 2 * c <= weight; ++bb) {
            long a = weight - 3 * bb - 2 * c;
            b.monomials.push_back({a, bb, c});
        }
    }
    return b;
}

FracSeries evaluate_monomial(long p, const std::array<long, 3>& abc, long terms) {
    FracSeries r = FracSeries::constant(1, 1, terms);
    if (abc[0]) r = (r * eisenstein_E1(p, terms).pow(abc[0])).truncated(terms);
    if (abc[1]) r = (r * eisenstein_E3(p, terms).pow(abc[1])).truncated(terms);
    if (abc[2]) r = (r * delta_p(p, terms).pow(abc[2])).truncated(terms);
    return r;
}

static Rational q(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

const std::vector<PolyTerm>& dv_phi0_polynomial() {
    static const std::vector<PolyTerm> poly = {
        {q(-5, 1), {11, 0, 0}},         {q(430, 1), {8, 1, 0}},          {q(5199920, 9), {5, 0, 3}},
        {q(-35407490, 27), {3, 0, 4}},  {q(49194440, 9), {4, 1, 2}},     {q(248350, 1), {5, 2, 0}},
        {q(-596661440, 27), {2, 1, 3}}, {q(-306631760, 9), {3, 2, 1}},   {q(51243500, 3), {0, 1, 4}},
        {q(1331452540, 27), {1, 2, 2}}, {q(349019440, 9), {2, 3, 0}},
    };
    return poly;
}

const std::vector<PolyTerm>& dv_phi1_polynomial() {
    static const std::vector<PolyTerm> poly = {
        {q(-5, 1), {11, 0, 0}},            {q(110, 1), {8, 1, 0}},          {q(722740, 3993), {5, 0, 3}},
        {q(-1805750, 3993), {3, 0, 4}},    {q(-12660620, 11979), {4, 1, 2}}, {q(-990, 1), {5, 2, 0}},
        {q(118940, 363), {1, 0, 5}},       {q(5609180, 3993), {2, 1, 3}},   {q(29208460, 11979), {3, 2, 1}},
        {q(3500, 33), {0, 1, 4}},          {q(2610980, 1089), {2, 3, 0}},
    };
    return poly;
}

FracSeries evaluate_polynomial(long p, const std::vector<PolyTerm>& poly, long terms) {
    FracSeries acc(1, terms);
    for (const auto& t : poly) acc += evaluate_monomial(p, t.abc, terms) * t.coeff;
    return acc;
}

FracSeries dv_phi0(long terms) {
    if (terms < 1) throw DomainError("terms must be at least 1");
    return evaluate_polynomial(11, dv_phi0_polynomial(), terms);
}

FracSeries dv_phi1(long terms) {
    if (terms < 1) throw DomainError("terms must be at least 1");
    return evaluate_polynomial(11, dv_phi1_polynomial(), terms);
}

HeegnerSeries dv_phi(long terms) {
    if (terms < 1) throw DomainError("terms must be at least 1");
    const long p = 11;
    FracSeries phi1 = dv_phi1(terms);
    FracSeries phi0 = dv_phi0((terms - 1) / p + 1);
    // On the grid 1/11 in q, q^{D/11} carries phi_1[D] + phi_0[D/11].
    HeegnerSeries h;
    h.p = p;
    h.series = FracSeries(p, terms);
    for (long D = 0; D < terms; ++D) {
        Rational c = phi1.coeff(D);
        if (D % p == 0) c += phi0.coeff(D / p);
        h.series.set(D, c);
    }
    return h;
}

// ---------------------------------------------------------------------------

namespace {

struct PlusData {
    size_t span_rank = 0;
    std::vector<RVector> basis;  // echelonized coefficient vectors, length B+1
};

PlusData plus_data(long p, long weight, long B) {
    MonomialBasis mb = monomial_basis(p, weight);
    RMatrix m;
    for (const auto& abc : mb.monomials) {
        FracSeries s = evaluate_monomial(p, abc, B + 1);
        RVector row(static_cast<size_t>(B + 1));
        for (long n = 0; n <= B; ++n) row[static_cast<size_t>(n)] = s.coeff(n);
        m.push_back(std::move(row));
    }
    Echelon span = rref(m);
    PlusData out;
    out.span_rank = span.rows.size();
    std::vector<long> nonres;
    for (long n = 1; n <= B; ++n)
        if (legendre_chi(p, n) == -1) nonres.push_back(n);
    // Combinations x of the span rows whose nonresidue coefficients vanish.
    RMatrix cons(nonres.size(), RVector(span.rows.size()));
    for (size_t i = 0; i < nonres.size(); ++i)
        for (size_t j = 0; j < span.rows.size(); ++j) cons[i][j] = span.rows[j][static_cast<size_t>(nonres[i])];
    auto xs = nullspace(cons, span.rows.size());
    RMatrix vecs;
    for (const auto& x : xs) {
        RVector v(static_cast<size_t>(B + 1));
        for (size_t j = 0; j < x.size(); ++j) {
            if (x[j] == 0) continue;
            for (size_t n = 0; n < v.size(); ++n) v[n] += x[j] * span.rows[j][n];
        }
        vecs.push_back(std::move(v));
    }
    out.basis = rref(vecs).rows;
    return out;
}

}  // namespace

std::vector<FracSeries> plus_space_basis(long p, long weight, long B) {
    if (p < 3 || !is_prime(p) || p % 4 != 3) throw DomainError("p must be a prime congruent to 3 mod 4");
    if (B - p < 1) throw DomainError("precision too small");
    PlusData full = plus_data(p, weight, B);
    PlusData less = plus_data(p, weight, B - p);
    if (full.span_rank != less.span_rank || full.basis.size() != less.basis.size())
        throw ConsistencyError("plus-space rank not stabilized between B-p and B; increase B");
    std::vector<FracSeries> out;
    for (const auto& v : full.basis) {
        FracSeries s(1, B + 1);
        for (long n = 0; n <= B; ++n) s.set(n, v[static_cast<size_t>(n)]);
        out.push_back(std::move(s));
    }
    return out;
}

HeegnerSeries heegner_from_plus_form(long p, const FracSeries& F) {
    HeegnerSeries h;
    h.p = p;
    h.series = FracSeries(p, F.order());
    for (const auto& [D, c] : F.coeffs()) {
        if (D >= F.order()) break;
        h.series.set(D, D % p == 0 ? 2 * c : c);
    }
    return h;
}

HeegnerSeries solve_plus_space(long p, long B, const std::map<long, Rational>& nl_values) {
    auto basis = plus_space_basis(p, 11, B);
    RMatrix a;
    RVector b;
    for (const auto& [D, v] : nl_values) {
        if (D > B) throw DomainError("constraint beyond precision");
        RVector row;
        for (const auto& f : basis) row.push_back(D % p == 0 ? 2 * f.coeff(D) : f.coeff(D));
        a.push_back(std::move(row));
        b.push_back(v);
    }
    SolveResult res = solve(a, b, basis.size());
    if (!res.consistent) throw ConsistencyError("NL constraints are inconsistent with the plus space");
    if (!res.unique)
        throw ConsistencyError("NL constraints do not determine the form (rank " + std::to_string(res.rank) + " < " +
                               std::to_string(basis.size()) + ")");
    FracSeries F(1, B + 1);
    for (size_t i = 0; i < basis.size(); ++i) F += basis[i] * res.x[i];
    return heegner_from_plus_form(p, F);
}

HeegnerSeries solve_dv_from_constraints(long B) {
    if (B < 25) throw DomainError("B must be at least 25");
    const long p = 11;
    std::map<long, Rational> cons = {{0, -10}, {1, 0}, {3, 0}, {4, 0}, {5, 0}, {9, 0}};
    HeegnerSeries h = solve_plus_space(p, B, cons);
    // Cross-check with the explicit expressions, including phi_0 = U_11 phi_1.
    FracSeries phi1 = dv_phi1(B + 1);
    FracSeries phi0 = dv_phi0(B / p + 1);
    for (long D = 0; D <= B; ++D) {
        Rational f = D % p == 0 ? h.nl(D) / 2 : h.nl(D);
        if (f != phi1.coeff(D))
            throw ConsistencyError("constraint solution differs from phi_1 at q^" + std::to_string(D));
        if (D % p == 0 && f != phi0.coeff(D / p))
            throw ConsistencyError("phi_0 differs from U_11 of the solution at q^" + std::to_string(D / p));
    }
    HeegnerSeries ref = dv_phi(B + 1);
    if (!(ref.series == h.series)) throw ConsistencyError("constraint solution differs from dv_phi");
    return h;
}

HeegnerSeries solve_cubic_form(const Rational& nl0, const Rational& nl3, long B) {
    if (B < 25) throw DomainError("B must be at least 25");
    auto basis = plus_space_basis(3, 11, B);
    if (basis.size() != 2) throw ConsistencyError("p=3 plus space does not have dimension 2");
    return solve_plus_space(3, B, {{0, nl0}, {3, nl3}});
}

NLValue nl_number(const HeegnerSeries& phi, const Rational& s, long d) {
    NLValue out;
    if (!valid_norm_k3n2(s)) {
        out.vacuous = true;
        return out;
    }
    auto D = try_disc_D(phi.p, d, s);
    if (!D) {
        out.vacuous = true;
        return out;
    }
    out.D = *D;
    out.value = phi.nl(*D);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

long isqrt_exact(long q) {
    if (q < 0) return -1;
    long c = static_cast<long>(std::llround(std::sqrt(static_cast<double>(q))));
    while (c * c > q) --c;
    while ((c + 1) * (c + 1) <= q) ++c;
    return c * c == q ? c : -1;
}

// Coefficient of C_{2e} in NL(D) when e is allowed any k with k^2 = e mod p.
long relaxed_coefficient(long p, long D, long e) {
    if (D % e != 0) return 0;
    long c = isqrt_exact(D / e);
    if (c <= 0) return 0;
    long k = sqrt_mod(p, e);
    if (k > p / 2) k = p - k;
    long alpha = sqrt_mod(p, D);
    long count = 0;
    if ((((k * c - alpha) % p) + p) % p == 0) ++count;
    if ((((-k * c - alpha) % p) + p) % p == 0) ++count;
    return count;
}

}  // namespace

NLFirstTypeVector heegner_to_first_type(const HeegnerSeries& phi, long e_max) {
    NLFirstTypeVector v;
    v.p = phi.p;
    const long p = phi.p;
    for (long e = 1; e <= e_max; ++e) {
        if (legendre_chi(p, e) == -1) continue;
        if (!cc_representation(p, e)) {
            v.absent.insert(e);
            continue;
        }
        long alpha = sqrt_mod(p, e);
        Rational rest = phi.nl(e);
        for (const auto& [e2, c2] : v.C) {
            if (e2 >= e) break;
            rest -= heegner_to_cc_coefficient(p, e, alpha, e2).value * c2;
        }
        long diag = heegner_to_cc_coefficient(p, e, alpha, e).value;
        if (diag == 0) throw ConsistencyError("vanishing diagonal coefficient");
        v.C[e] = rest / diag;
    }
    return v;
}

Rational first_type_to_heegner(const NLFirstTypeVector& v, long D) {
    if (D < 1) throw DomainError("D must be positive");
    if (legendre_chi(v.p, D) == -1) return 0;
    long alpha = sqrt_mod(v.p, D);
    Rational total = 0;
    for (const auto& [e, c] : v.C) {
        if (e > D) break;
        total += heegner_to_cc_coefficient(v.p, D, alpha, e).value * c;
    }
    return total;
}

std::string to_string(HLSStatus s) {
    switch (s) {
        case HLSStatus::HLS: return "HLS";
        case HLSStatus::NotHLS: return "not-HLS";
        case HLSStatus::Absent: return "absent";
    }
    return "?";
}

std::vector<HLSEntry> hls_report(const HeegnerSeries& phi, long e_max) {
    const long p = phi.p;
    NLFirstTypeVector v = heegner_to_first_type(phi, e_max);
    std::map<long, Rational> relaxed;
    for (long e = 1; e <= e_max; ++e) {
        if (legendre_chi(p, e) == -1) continue;
        Rational rest = phi.nl(e);
        for (const auto& [e2, c2] : relaxed) rest -= relaxed_coefficient(p, e, e2) * c2;
        relaxed[e] = rest / relaxed_coefficient(p, e, e);
    }
    std::vector<HLSEntry> out;
    for (long e = 1; e <= e_max; ++e) {
        if (legendre_chi(p, e) == -1) continue;
        HLSEntry entry;
        entry.e = e;
        entry.nl = phi.nl(e);
        entry.relaxed_C = relaxed[e];
        if (v.absent.count(e)) {
            entry.status = HLSStatus::Absent;
        } else {
            entry.C = v.C.at(e);
            entry.status = entry.C == 0 ? HLSStatus::HLS : HLSStatus::NotHLS;
        }
        out.push_back(entry);
    }
    return out;
}

}  // namespace nlgw
