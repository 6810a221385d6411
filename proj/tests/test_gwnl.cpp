#include "nlgw/gwnl.hpp"

#include <doctest.h>

using namespace nlgw;

TEST_CASE("check modes") {
    CHECK(parse_mode("proven-only") == CheckMode::ProvenOnly);
    CHECK(parse_mode("hybrid") == CheckMode::Hybrid);
    CHECK(to_string(CheckMode::Conjectural) == "conjectural");
    CHECK_THROWS_AS(parse_mode("all"), DomainError);
    CHECK(is_proven_key(1, 8));
    CHECK(is_proven_key(2, 0));
    CHECK(is_proven_key(3, -2));
    CHECK_FALSE(is_proven_key(2, 6));
}

TEST_CASE("primitive right-hand side for the DV family") {
    HeegnerSeries phi = dv_phi(45);
    PrimTables prim = prim_tables(3);
    CHECK(rhs_primitive(phi, prim, 11, 1) == 0);
    CHECK(rhs_primitive(phi, prim, 11, 2) == 130680);
    CHECK(rhs_primitive(phi, prim, 11, 4) == 3020160);
    CHECK_THROWS(rhs_primitive(phi, prim, 11, 0));
}

TEST_CASE("refined and primitive right-hand sides agree on proven keys for DV, d <= 13") {
    HeegnerSeries phi = dv_phi(60);
    PrimTables prim = prim_tables(9);
    for (long d = 1; d <= 13; ++d) {
        RefinedRHS r = rhs_refined(phi, prim, 11, d, CheckMode::ProvenOnly);
        CHECK(r.unknowns.empty());
        CHECK(r.value == rhs_primitive(phi, prim, 11, d));
        for (const auto& c : r.contributions) CHECK(c.proven);
    }
}

TEST_CASE("cubic: degree 1 has a single primitive stratum") {
    HeegnerSeries phi = cubic_pencil_series(60);
    PrimTables prim = prim_tables(30);
    RefinedRHS r1 = rhs_refined(phi, prim, 3, 1, CheckMode::ProvenOnly);
    for (const auto& c : r1.contributions) CHECK(c.m == 1);
    CHECK(r1.value == rhs_primitive(phi, prim, 3, 1));
    // prime degrees also see m = d with a negative-norm primitive class, which is proven
    for (long d : {5L, 7L}) {
        RefinedRHS r = rhs_refined(phi, prim, 3, d, CheckMode::ProvenOnly);
        CHECK(r.unknowns.empty());
        for (const auto& c : r.contributions) CHECK((c.m == 1 || c.s < 0));
        CHECK(r.value == rhs_primitive(phi, prim, 3, d));
    }
}

TEST_CASE("cubic pencil degree 2 by hand") {
    HeegnerSeries phi = cubic_pencil_series(44);
    PrimTables prim = prim_tables(2);
    // only s = 0 (D = 1, NL = 0) and s = -2 (D = 4, NL = 3402) contribute
    CHECK(rhs_primitive(phi, prim, 3, 2) == 3402 * 6 * 3 * 2 * prim.g(-2));
}

TEST_CASE("refined NL numbers") {
    HeegnerSeries phi = dv_phi(45);
    CHECK(refined_nl(phi, 1, 0, 2) == unrefined_nl(phi, 0, 2));
    CHECK(refined_nl(phi, 2, 0, 3) == 0);
    // (s/4, d/2) = (-2, 1) has D = 45/4: no such class
    CHECK(refined_nl(phi, 2, -8, 2) == 0);
    // unrefined = sum over divisibilities
    for (long d = 1; d <= 6; ++d)
        for (long x = -10; x <= 8; ++x) {
            Rational s = make_rational(x, 4);
            if (!try_disc_D(11, d, s)) continue;
            Rational total = 0;
            for (long m : divisors(d)) total += refined_nl(phi, m, s, d);
            CHECK(total == unrefined_nl(phi, s, d));
        }
}

TEST_CASE("cubic pencil pipeline") {
    PipelineData data = run_pipeline("fano-pencil", 8, 0, nullptr);
    GWNLReport proven = check_gwnl(data, CheckMode::ProvenOnly);
    GWNLReport hybrid = check_gwnl(data, CheckMode::Hybrid);
    GWNLReport conj = check_gwnl(data, CheckMode::Conjectural);
    CHECK(hybrid.full_match());
    CHECK(conj.full_match());
    CHECK_FALSE(proven.full_match());
    const DegreeRow& row6 = hybrid.rows.at(5);
    REQUIRE(row6.unknowns.size() == 1);
    CHECK(row6.unknowns[0].m == 2);
    CHECK(row6.unknowns[0].s == 6);
    CHECK(*row6.unknowns[0].solved == 60705);
    CHECK(proven.rows.at(5).note == "keys outside the proven set");
    for (const auto& row : hybrid.rows) CHECK(row.lhs == row.rhs);

    auto cand = mc_candidate_extraction(data, {8, 6});
    REQUIRE(cand.size() == 2);
    CHECK(cand[0].d == 6);
    CHECK(cand[1].unknowns.at(0).s == 0);
    for (const auto& c : cand) {
        CHECK(c.determined);
        CHECK(c.agrees);
    }
    auto prim_only = mc_candidate_extraction(data, {7});
    CHECK(prim_only[0].unknowns.empty());
    CHECK(prim_only[0].agrees);

    auto j = hybrid.to_json();
    CHECK(j["full_match"] == true);
    CHECK(j["rows"].size() == 8);
    CHECK(j["rows"][1]["lhs"] == "122472");
    std::string csv = hybrid.to_csv();
    CHECK(csv.rfind("degree,lhs_raw,lhs,rhs,rhs_refined,match\n", 0) == 0);
}

TEST_CASE("mismatches are reported, not hidden") {
    HeegnerSeries phi = cubic_pencil_series(44);
    PrimTables prim = prim_tables(12);
    std::map<long, Rational> fake{{1, 0}, {2, 122473}};
    GWNLReport r = check_gwnl("fano-pencil", phi, prim, 3, fake, CheckMode::Conjectural);
    CHECK(r.rows[0].match);
    CHECK_FALSE(r.rows[1].match);
    CHECK_FALSE(r.full_match());
}

TEST_CASE("pipeline argument checks") {
    CHECK_THROWS_AS(run_pipeline("fano-pencil", 0, 0, nullptr), DomainError);
    CHECK_THROWS_AS(run_pipeline("fano-fourfold", 2, 0, nullptr), DomainError);
}
