#pragma once

// Conversions between Gromov-Witten, Gopakumar-Vafa and Moebius-subtracted
// invariants of a fixed primitive class alpha, tabulated by genus g and
// multiple m (the class m*alpha), and the multiple-cover transform for
// abelian surfaces.

#include "nlgw/qseries.hpp"

#include <iosfwd>
#include <map>
#include <utility>

namespace nlgw {

// (g, m) -> value.
using GenusMultipleTable = std::map<std::pair<long, long>, Rational>;

// Laurent series in u: a grid-1 FracSeries with signed exponents.
using LaurentU = FracSeries;

// (sin(u/2)/2)^{2g-2}, known through u^{2*order-2} inclusive.
LaurentU sin_kernel(long g, long order);

// a_{g,gt} for gt = 0..order: the coefficient of u^{2gt-2} in (sin(u/2)/2)^{2g-2}.
std::vector<Rational> sin_kernel_coeffs(long g, long order);

// r~_{g,m} = sum_{k|m} k^{2g-3} mu(k) R_{g,m/k}.
Rational rtilde_from_gw(const GenusMultipleTable& R, long g, long m);
GenusMultipleTable rtilde_table(const GenusMultipleTable& R, long g_max, long m_max);

// Inverse of the above: R_{g,m} = sum_{k|m} k^{2g-3} r~_{g,m/k}.
GenusMultipleTable gw_from_rtilde(const GenusMultipleTable& rt, long g_max, long m_max);

// Forward map r -> R from the Gopakumar-Vafa expansion
//   sum R_{g,m} u^{2g-2} v^m = sum r_{g,m} sum_k k^{-1} (sin(ku/2)/2)^{2g-2} v^{km}
// on the triangle 0 <= g <= g_max, 1 <= m <= m_max.
GenusMultipleTable gw_from_gv(const GenusMultipleTable& r, long g_max, long m_max);

// Solve the same identity for r (upper triangular in g, multiplicative in k).
GenusMultipleTable gv_from_gw(const GenusMultipleTable& R, long g_max, long m_max);

// sum_{g <= gt} a_{g,gt} r_{g,m}: equals r~_{gt,m}.
Rational rtilde_from_gv(const GenusMultipleTable& r, long gt, long m);

// N_{g,(d,d')} = sum_{k | gcd(d,d')} k^{2g+3} N_{g,(1, dd'/k^2)}, from a table n -> N_{g,(1,n)}.
Rational abelian_fls_transform(const std::map<long, Rational>& primitive, long g, long d, long dprime);

// CSV with header "g,m,value".
void write_table_csv(std::ostream& os, const GenusMultipleTable& t);
GenusMultipleTable read_table_csv(std::istream& is);

}  // namespace nlgw
