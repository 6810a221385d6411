#include "helpers.hpp"
#include "nlgw/bps.hpp"

#include <doctest.h>

#include <sstream>

using namespace nlgw;

namespace {

GenusMultipleTable random_table(std::mt19937_64& rng, long g_max, long m_max) {
    GenusMultipleTable t;
    for (long g = 0; g <= g_max; ++g)
        for (long m = 1; m <= m_max; ++m) t[{g, m}] = testing_util::random_rational(rng);
    return t;
}

}  // namespace

TEST_CASE("sine kernel coefficients") {
    auto a1 = sin_kernel_coeffs(1, 5);
    CHECK(a1[1] == 1);
    for (long gt = 0; gt <= 5; ++gt)
        if (gt != 1) CHECK(a1[gt] == 0);
    // 4 / sin^2(u/2) = 16/u^2 + 4/3 + u^2/15 + u^4/378 + ...
    auto a0 = sin_kernel_coeffs(0, 3);
    CHECK(a0[0] == 16);
    CHECK(a0[1] == make_rational(4, 3));
    CHECK(a0[2] == make_rational(1, 15));
    CHECK(a0[3] == make_rational(1, 378));
    for (long g = 1; g <= 5; ++g) {
        auto a = sin_kernel_coeffs(g, 6);
        for (long gt = 0; gt < g; ++gt) CHECK(a[gt] == 0);
        CHECK(a[g] == rational_pow(4, 2 - 2 * g));
    }
}

TEST_CASE("kernel product law") {
    // (sin/2)^{2a-2} (sin/2)^{2b-2} = (sin/2)^{2(a+b-1)-2}
    LaurentU x = sin_kernel(2, 6), y = sin_kernel(3, 6), z = sin_kernel(4, 6);
    LaurentU xy = x * y;
    for (long e = 6; e <= 10; e += 2) CHECK(xy.coeff(e) == z.coeff(e));
}

TEST_CASE("Moebius-subtracted invariants") {
    GenusMultipleTable R{{{1, 1}, 5}, {{1, 2}, 7}, {{2, 1}, 3}, {{2, 2}, 11}};
    CHECK(rtilde_from_gw(R, 1, 1) == 5);
    CHECK(rtilde_from_gw(R, 1, 2) == 7 - make_rational(1, 2) * 5);
    CHECK(rtilde_from_gw(R, 2, 2) == 11 - 2 * 3);
    CHECK_THROWS_AS(rtilde_from_gw(R, 1, 3), DomainError);
}

TEST_CASE("single primitive entry") {
    GenusMultipleTable R;
    for (long g = 0; g <= 2; ++g)
        for (long m = 1; m <= 3; ++m) R[{g, m}] = 0;
    R[{1, 1}] = 7;
    GenusMultipleTable r = gv_from_gw(R, 2, 3);
    CHECK(r.at({1, 1}) == 7);
}

TEST_CASE("round trips on random tables") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        GenusMultipleTable r = random_table(rng, 3, 8);
        GenusMultipleTable R = gw_from_gv(r, 3, 8);
        CHECK(gv_from_gw(R, 3, 8) == r);
        CHECK(gw_from_rtilde(rtilde_table(R, 3, 8), 3, 8) == R);
        // the upper-triangular relation between r~ and r
        for (long g = 0; g <= 3; ++g)
            for (long m = 1; m <= 8; ++m) CHECK(rtilde_from_gw(R, g, m) == rtilde_from_gv(r, g, m));
    }
}

TEST_CASE("linearity") {
    GenusMultipleTable zero;
    for (long g = 0; g <= 2; ++g)
        for (long m = 1; m <= 4; ++m) zero[{g, m}] = 0;
    CHECK(gv_from_gw(zero, 2, 4) == zero);
    CHECK(gw_from_gv(zero, 2, 4) == zero);
    CHECK(rtilde_table(zero, 2, 4) == zero);
}

TEST_CASE("abelian surface multiple-cover transform") {
    std::map<long, Rational> N{{1, 2}, {2, 5}, {3, 7}, {4, 13}, {6, 17}};
    CHECK(abelian_fls_transform(N, 1, 1, 3) == 7);
    CHECK(abelian_fls_transform(N, 1, 2, 2) == 13 + rational_pow(2, 5) * 2);
    CHECK(abelian_fls_transform(N, 0, 2, 2) == 13 + rational_pow(2, 3) * 2);
    CHECK_THROWS_AS(abelian_fls_transform(N, 1, 3, 3), DomainError);
}

TEST_CASE("CSV tables") {
    GenusMultipleTable t{{{0, 1}, make_rational(1, 3)}, {{2, 5}, -4}};
    std::stringstream ss;
    write_table_csv(ss, t);
    CHECK(ss.str() == "g,m,value\n0,1,1/3\n2,5,-4\n");
    CHECK(read_table_csv(ss) == t);
    std::stringstream bad("g,m\n1,2\n");
    CHECK_THROWS(read_table_csv(bad));
}
