#pragma once

#include "nlgw/rational.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nlgw {

// Abelian quotient (P^{n_1-1} x ... x P^{n_k-1}) [x P^1] of a GIT quotient,
// with the roots of the nonabelian group as linear forms in the H_i.
struct AmbientSpec {
    std::vector<long> factor_dims;         // n_i - 1
    bool has_pencil_line = false;          // extra generator h, h^2 = 0
    std::vector<std::vector<long>> roots;  // coefficient vectors over H_1..H_k
    long weyl_order = 1;

    static AmbientSpec grassmannian(long k, long n, bool pencil);
    static AmbientSpec projective_product(const std::vector<long>& dims, bool pencil);

    size_t num_factors() const { return factor_dims.size(); }
    size_t num_vars() const { return factor_dims.size() + (has_pencil_line ? 1 : 0); }
    long abelian_dimension() const;
    // Dimension of the nonabelian quotient.
    long dimension() const;
    // True when all factors agree and the roots are all e_i - e_j.
    bool grassmannian_type() const;
    // Exponent bound per variable: n_i for H_i, 2 for h.
    std::vector<int> nilpotency() const;

    friend bool operator==(const AmbientSpec& a, const AmbientSpec& b) {
        return a.factor_dims == b.factor_dims && a.has_pencil_line == b.has_pencil_line && a.roots == b.roots &&
               a.weyl_order == b.weyl_order;
    }
};

// Truncation data of a ring: a per-variable exponent bound (0 means none) and
// a bound on total degree.
struct RingShape {
    static constexpr long kNoCap = 1L << 40;
    std::vector<int> caps;
    long degree_cap = kNoCap;
    long zmax = 64;  // admissible window z^{-zmax} .. z^{zmax}

    bool admits(const std::vector<int>& mono) const;
    friend bool operator==(const RingShape& a, const RingShape& b) {
        return a.caps == b.caps && a.degree_cap == b.degree_cap && a.zmax == b.zmax;
    }
};

RingShape ring_shape(const AmbientSpec& a);
// Polynomial representatives in the H_i (h stays nilpotent) of total degree <= degree_cap.
RingShape lifted_shape(const AmbientSpec& a, long degree_cap);

using Monomial = std::vector<int>;
using ZLaurent = std::map<long, Rational>;

// Element of the truncated ring with Laurent polynomial coefficients in z.
class RingElement {
public:
    explicit RingElement(RingShape shape);

    static RingElement constant(const RingShape& shape, const Rational& c, long zexp = 0);
    static RingElement variable(const RingShape& shape, size_t i);
    // sum_i c_i x_i + zc z + c0
    static RingElement linear(const RingShape& shape, const std::vector<Rational>& c, const Rational& zc,
                              const Rational& c0 = 0);

    const RingShape& shape() const { return shape_; }
    const std::map<Monomial, ZLaurent>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Monomial& m, long zexp = 0) const;
    void add_term(const Monomial& m, long zexp, const Rational& c);

    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const Rational& c);
    RingElement operator-() const;
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(RingElement a, const Rational& c) { return a *= c; }
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend bool operator==(const RingElement& a, const RingElement& b);

    RingElement pow(long n) const;
    // Inverse of c z^a (1 + nilpotent); throws DomainError otherwise.
    RingElement inverse() const;
    // Coefficient of z^j as a z-free element.
    RingElement z_coeff(long j) const;
    // Homogeneous part of total degree j in the ring variables.
    RingElement degree_part(long j) const;
    // Range of z exponents present (min, max); (0, 0) for zero.
    std::pair<long, long> z_range() const;
    // Re-truncate into another shape (dropping monomials it does not admit).
    RingElement reshaped(const RingShape& s) const;
    // Swap variables i and j.
    RingElement swapped(size_t i, size_t j) const;

private:
    RingShape shape_;
    std::map<Monomial, ZLaurent> terms_;
    void check_z(long zexp) const;
};

// Exact division by prod_{i<j} (H_i - H_j) over the positive roots of a.
// The numerator must live in a lifted shape with total-degree cap D; the
// quotient is exact up to degree D - deg V and is returned in
// the nilpotent shape of a (with that degree cap). Throws ConsistencyError on
// a nonzero remainder.
RingElement vandermonde_divide(const RingElement& numerator, const AmbientSpec& a);

// Coefficient of the top monomial prod H_i^{n_i - 1} [h] in the z^zexp part.
Rational integrate_abelian(const AmbientSpec& a, const RingElement& x, long zexp = 0);

// |W|^{-1} times the abelian integral of x prod_alpha c_1(L_alpha). Throws
// DomainError if x is not Weyl-invariant.
Rational martin_integrate(const AmbientSpec& a, const RingElement& x);

// Equivariant localization on the abelian quotient. The integrand is a
// Weyl-invariant polynomial in (H_1..H_k, h) that must be homogeneous of degree
// dimension(); it is given by its values at fixed points. Returns the integral
// over the nonabelian quotient.
using PointIntegrand = std::function<Rational(const std::vector<Rational>& x, const Rational& h)>;
Rational localize(const AmbientSpec& a, const PointIntegrand& f);

// A zero locus of a split homogeneous bundle in an ambient quotient.
struct FamilySpec {
    std::string name;
    AmbientSpec ambient;
    std::vector<std::vector<long>> bundle_summands;  // linear forms over (H_1..H_k, h)
    std::vector<long> polarization;                  // linear form over H_1..H_k

    long dimension() const { return ambient.dimension() - static_cast<long>(bundle_summands.size()); }
};

FamilySpec dv_pencil_family();      // Gr(6,10) x P^1, wedge^3 U^v (x) O(1)
FamilySpec fano_pencil_family();    // Gr(2,6) x P^1, Sym^3 U^v (x) O(1)
FamilySpec fano_fourfold_family();  // Gr(2,6), Sym^3 U^v
// Gr(k,n) [x P^1] with no bundle.
FamilySpec grassmannian_family(long k, long n, bool pencil);
// Accepts dv-pencil, fano-pencil, fano-fourfold, gr(k,n) and gr(k,n)xP1.
FamilySpec family_by_name(const std::string& name);

Rational euler_characteristic(const FamilySpec& fam);
// Degree of c_1(R pi_* O) over the pencil line.
Rational grr_hodge_degree(const FamilySpec& fam);

struct SingularFibers {
    Rational delta;
    bool integral = true;
};
SingularFibers singular_fiber_count(const Rational& e_total, const Rational& e_smooth = 324,
                                    const Rational& e_singular = 300);

}  // namespace nlgw
