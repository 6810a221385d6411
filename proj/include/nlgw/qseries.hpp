#pragma once

#include "nlgw/rational.hpp"

#include <json.hpp>

#include <limits>
#include <map>
#include <utility>
#include <vector>

namespace nlgw {

// Elementary number theory.
bool is_prime(long n);
int moebius(long k);
int legendre_chi(long p, long n);
std::vector<long> divisors(long n);  // positive divisors, ascending
long gcd_all(const std::vector<long>& v);

// Formal series sum c_e q^{e/N} with exact coefficients. Coefficients at
// exponents >= order/N are unknown; asking for them throws TruncationError.
// kExact marks a series with no truncation (a finite polynomial).
class FracSeries {
public:
    static constexpr long kExact = std::numeric_limits<long>::max() / 4;

    explicit FracSeries(long grid = 1, long order = kExact);

    static FracSeries constant(const Rational& c, long grid = 1, long order = kExact);
    static FracSeries monomial(long exponent, const Rational& c, long grid = 1, long order = kExact);

    long grid() const { return grid_; }
    long order() const { return order_; }
    bool exact() const { return order_ >= kExact; }
    const std::map<long, Rational>& coeffs() const { return coeffs_; }

    // Coefficient at exponent e/N.
    Rational coeff(long e) const;
    // Coefficient at a rational exponent; it must lie on the grid.
    Rational coeff_at(const Rational& exponent) const;
    bool known(long e) const { return e < order_; }

    void set(long e, const Rational& c);
    void add_to(long e, const Rational& c);

    // Lowest exponent with nonzero coefficient; order() if none known.
    long valuation() const;
    bool is_zero() const { return coeffs_.empty(); }

    FracSeries regrid(long new_grid) const;      // new_grid must be a multiple of grid
    FracSeries truncated(long order) const;      // lowers order, drops coefficients
    FracSeries shifted(long e) const;            // times q^{e/N}
    FracSeries substitute_power(long a) const;   // q -> q^a
    FracSeries scaled_exponent_sign() const;     // q -> -q on grid 1 (c_e -> (-1)^e c_e)

    FracSeries operator-() const;
    FracSeries& operator+=(const FracSeries& o);
    FracSeries& operator-=(const FracSeries& o);
    FracSeries& operator*=(const Rational& c);

    friend FracSeries operator+(FracSeries a, const FracSeries& b) { return a += b; }
    friend FracSeries operator-(FracSeries a, const FracSeries& b) { return a -= b; }
    friend FracSeries operator*(FracSeries a, const Rational& c) { return a *= c; }
    friend FracSeries operator*(const Rational& c, FracSeries a) { return a *= c; }
    friend FracSeries operator*(const FracSeries& a, const FracSeries& b);

    // Multiplicative inverse; requires a known nonzero lowest coefficient.
    FracSeries inverse() const;
    FracSeries pow(long n) const;
    // exp of a series with positive valuation (grid 1 or any grid).
    FracSeries exp() const;
    // this(inner) for grid-1 series; inner must have positive valuation.
    FracSeries compose(const FracSeries& inner) const;

    // Equality of known coefficients on the common truncation range.
    bool agrees_with(const FracSeries& o) const;

    nlohmann::json to_json() const;
    static FracSeries from_json(const nlohmann::json& j);

private:
    long grid_;
    long order_;
    std::map<long, Rational> coeffs_;

    static long sat_add(long a, long b);
};

bool operator==(const FracSeries& a, const FracSeries& b);

// Classical series. `terms` counts integer steps of q from the leading
// exponent: the result is known on [lead, lead + terms).
FracSeries eta_power_product(const std::vector<std::pair<long, long>>& scales_and_exponents, long terms);
FracSeries eisenstein_E1(long p, long terms);
FracSeries eisenstein_E3(long p, long terms);
FracSeries theta(long terms);
FracSeries alpha_series(long terms);
FracSeries g2_series(long terms);
FracSeries delta_series(long terms);

// Normalization 2/L(0, chi_p) of the weight one Eisenstein series.
Rational e1_normalization(long p);

}  // namespace nlgw
