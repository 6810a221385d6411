#include "nlgw/cli.hpp"

#include "nlgw/bps.hpp"
#include "nlgw/cohoring.hpp"
#include "nlgw/gwnl.hpp"
#include "nlgw/mirror.hpp"
#include "nlgw/nlforms.hpp"
#include "nlgw/redgw.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace nlgw {

namespace {

using nlohmann::json;

struct Options {
    std::string format = "json";
    unsigned workers = 0;
    // nl-dv / nl-cubic
    long terms = 45;
    long precision = 44;
    std::string nl3 = "192";
    // hls
    long p = 11;
    long emax = 30;
    long e = 0;
    // check-gwnl / mirror / chern
    std::string family = "dv-pencil";
    long dmax = 5;
    std::string mode = "proven-only";
    long degree = 2;
    bool extract = false;
    // bps
    std::string bps_input;
    std::string bps_direction = "gw-to-gv";
    long gmax = 3;
    long mmax = 6;
    // hecke
    std::string hecke_input;
    long hecke_m = 2;
    long hecke_ell = 1;
};

json rat(const Rational& x) { return to_string(x); }

void emit(std::ostream& out, const Options& o, const json& j, const std::string& csv) {
    if (o.format == "csv") out << csv;
    else out << j.dump(2) << '\n';
}

// Structured progress record on the diagnostic stream.
ProgressFn progress_to(std::ostream& err) {
    auto start = std::chrono::steady_clock::now();
    return [&err, start](long d, const std::string& what) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json rec = {{"event", "progress"}, {"degree", d}, {"stage", what}, {"elapsed_s", std::round(secs * 100) / 100}};
        err << rec.dump() << '\n' << std::flush;
    };
}

std::string series_csv(const HeegnerSeries& phi, long terms) {
    std::ostringstream os;
    os << "D,NL\n";
    for (long D = 0; D < terms; ++D)
        if (phi.nl(D) != 0) os << D << ',' << to_string(phi.nl(D)) << '\n';
    return os.str();
}

json series_json(const HeegnerSeries& phi, long terms) {
    json t = json::array();
    for (long D = 0; D < terms; ++D)
        if (phi.nl(D) != 0) t.push_back({{"D", D}, {"NL", rat(phi.nl(D))}});
    return t;
}

int cmd_nl_dv(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.terms < 1) throw DomainError("--terms must be at least 1");
    const long B = std::max<long>(44, o.terms);
    HeegnerSeries hard = dv_phi(std::max<long>(o.terms, 45));
    HeegnerSeries solved = solve_dv_from_constraints(B);
    bool agree = true;
    for (long D = 0; D < o.terms; ++D)
        if (hard.nl(D) != solved.nl(D)) agree = false;
    json gap = json::array();
    for (long D = 1; D < o.terms; ++D)
        if (legendre_chi(11, D) != -1 && hard.nl(D) == 0) gap.push_back(D);
    json j = {{"p", 11},
              {"terms", o.terms},
              {"series", series_json(hard, o.terms)},
              {"gap", gap},
              {"constraint_solution_agrees", agree}};
    emit(out, o, j, series_csv(hard, o.terms));
    if (!agree) {
        err << "hard-coded and constraint-solved series disagree\n";
        return kExitMismatch;
    }
    return kExitOk;
}

int cmd_nl_cubic(const Options& o, std::ostream& out, std::ostream&) {
    if (o.precision < 25) throw DomainError("--precision must be at least 25");
    const FamilySpec fam = fano_pencil_family();
    const Rational euler = euler_characteristic(fam);
    const Rational nl0 = grr_hodge_degree(fam) / 3;
    const Rational nl3 = parse_rational(o.nl3);
    HeegnerSeries phi = solve_cubic_form(nl0, nl3, o.precision);
    const long shown = std::min<long>(o.precision, 25);
    json j = {{"p", 3},
              {"precision", o.precision},
              {"NL0_from_hodge_degree", rat(nl0)},
              {"NL3", rat(nl3)},
              {"singular_fibers_from_euler", rat(singular_fiber_count(euler).delta)},
              {"series", series_json(phi, shown)}};
    emit(out, o, j, series_csv(phi, shown));
    return kExitOk;
}

int cmd_hls(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.p != 11 && o.p != 3) throw DomainError("--p must be 11 or 3");
    if (o.emax < 1) throw DomainError("--emax must be positive");
    if (o.e != 0 && (o.e < 0 || legendre_chi(o.p, o.e) == -1))
        throw DomainError("e = " + std::to_string(o.e) + " is not a square modulo " + std::to_string(o.p));
    const long emax = o.e ? o.e : o.emax;
    HeegnerSeries phi = o.p == 11 ? dv_phi(std::max<long>(emax + 1, 45))
                                  : cubic_pencil_series(std::max<long>(emax + 3, 44));
    json rows = json::array();
    std::ostringstream csv;
    csv << "e,divisor,status,C,NL\n";
    bool ok = true;
    for (const auto& h : hls_report(phi, emax)) {
        if (o.e && h.e != o.e) continue;
        json r = {{"e", h.e}, {"divisor", "C_" + std::to_string(2 * h.e)}, {"status", to_string(h.status)},
                  {"C", rat(h.C)}, {"NL", rat(h.nl)}};
        if (h.status == HLSStatus::Absent && h.relaxed_C != 0) r["relaxed_C"] = rat(h.relaxed_C);
        rows.push_back(r);
        csv << h.e << ",C_" << 2 * h.e << ',' << to_string(h.status) << ',' << to_string(h.C) << ','
            << to_string(h.nl) << '\n';
        if (o.p == 11) {
            bool hls_or_absent = h.status != HLSStatus::NotHLS;
            if ((h.e == 1 || h.e == 3 || h.e == 4 || h.e == 5 || h.e == 9) && !hls_or_absent) ok = false;
            if (h.e == 15 && hls_or_absent) ok = false;
        }
    }
    json j = {{"p", o.p}, {"e_max", emax}, {"rows", rows}};
    if (o.p == 11) j["matches_reference"] = ok;
    emit(out, o, j, csv.str());
    if (!ok) {
        err << "HLS classification differs from the reference\n";
        return kExitMismatch;
    }
    return kExitOk;
}

int cmd_check_gwnl(const Options& o, std::ostream& out, std::ostream& err) {
    CheckMode mode = parse_mode(o.mode);
    PipelineData data = run_pipeline(o.family, o.dmax, o.workers, progress_to(err));
    GWNLReport rep = check_gwnl(data, mode);
    json j = rep.to_json();
    if (o.extract) {
        if (o.family == "dv-pencil") {
            auto ex = dv_constraint_extraction(data.raw, data.prim, std::min<long>(o.dmax, 5));
            json eqs = json::array();
            for (const auto& e : ex.equations) eqs.push_back(e.to_string());
            j["extraction"] = {{"equations", eqs}, {"unique", ex.unique}, {"vanishing", ex.vanishing}};
        } else {
            std::vector<long> ds;
            for (long d = 1; d <= o.dmax; ++d) ds.push_back(d);
            json cs = json::array();
            for (const auto& c : mc_candidate_extraction(data, ds)) {
                json us = json::array();
                for (const auto& u : c.unknowns)
                    us.push_back({{"m", u.m},
                                  {"alpha_norm", rat(u.s / (u.m * u.m))},
                                  {"predicted_G", rat(u.predicted)},
                                  {"solved_G", u.solved ? json(rat(*u.solved)) : json(nullptr)}});
                cs.push_back({{"degree", c.d}, {"determined", c.determined}, {"agrees", c.agrees}, {"unknowns", us}});
            }
            j["extraction"] = cs;
        }
    }
    emit(out, o, j, rep.to_csv());
    if (!rep.full_match()) {
        err << "GW/NL relation not verified at every degree\n";
        return kExitMismatch;
    }
    return kExitOk;
}

json monomial_json(const Monomial& m) {
    json a = json::array();
    for (int e : m) a.push_back(e);
    return a;
}

json series_prefix(const FracSeries& s, long d_max) {
    json a = json::array();
    for (long d = 0; d <= d_max; ++d) a.push_back(rat(s.coeff(d)));
    return a;
}

int cmd_mirror(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.degree < 0) throw DomainError("--degree must be non-negative");
    FamilySpec fam = family_by_name(o.family);
    IFunction I = compute_I(fam, o.degree, 2, o.workers, progress_to(err));
    MirrorMapData mm = mirror_map(I, o.degree);
    json dump = json::array();
    std::ostringstream csv;
    csv << "monomial,z_exponent,coefficient\n";
    for (const auto& [mono, zl] : I.per_degree.at(o.degree).terms())
        for (const auto& [ze, c] : zl) {
            dump.push_back({{"monomial", monomial_json(mono)}, {"z", ze}, {"coefficient", rat(c)}});
            csv << '"';
            for (size_t i = 0; i < mono.size(); ++i) csv << (i ? " " : "") << mono[i];
            csv << "\"," << ze << ',' << to_string(c) << '\n';
        }
    json j = {{"family", fam.name},
              {"degree", o.degree},
              {"variables", "H_1..H_k then h (pencil line) when present; z has degree 1"},
              {"f0", series_prefix(mm.f0, o.degree)},
              {"f1", series_prefix(mm.f1, o.degree)},
              {"f2", series_prefix(mm.f2, o.degree)},
              {"I_degree", dump}};
    if (fam.ambient.has_pencil_line && fam.dimension() == 5) {
        json inv = json::object();
        for (const auto& [d, v] : family_invariants(I, polarization_power(fam, 3), o.degree, 0))
            inv[std::to_string(d)] = rat(v.value);
        j["H3_invariants"] = inv;
    }
    emit(out, o, j, csv.str());
    return kExitOk;
}

int cmd_chern(const Options& o, std::ostream& out, std::ostream& err) {
    FamilySpec fam = family_by_name(o.family);
    json j = {{"family", fam.name}, {"dimension", fam.dimension()}};
    Rational euler = euler_characteristic(fam);
    j["euler"] = rat(euler);
    std::ostringstream csv;
    csv << "quantity,value\neuler," << to_string(euler) << '\n';
    bool pencil = fam.ambient.has_pencil_line && fam.dimension() == 5;
    if (pencil) {
        Rational grr = grr_hodge_degree(fam);
        SingularFibers sf = singular_fiber_count(euler);
        j["grr"] = rat(grr);
        j["singular_fibers"] = rat(sf.delta);
        j["NL0"] = rat(grr / 3);
        csv << "grr," << to_string(grr) << "\nsingular_fibers," << to_string(sf.delta) << '\n';
        if (fam.name == "dv-pencil" && (euler != -14712 || grr != -30 || sf.delta != 640)) {
            emit(out, o, j, csv.str());
            err << "Chern numbers differ from the reference values\n";
            return kExitMismatch;
        }
    } else if (fam.ambient.has_pencil_line) {
        j["grr"] = rat(grr_hodge_degree(fam));
        csv << "grr," << to_string(grr_hodge_degree(fam)) << '\n';
    }
    emit(out, o, j, csv.str());
    return kExitOk;
}

int cmd_bps(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.gmax < 0 || o.mmax < 1) throw DomainError("--gmax must be >= 0 and --mmax >= 1");
    if (!o.bps_input.empty()) {
        std::ifstream in(o.bps_input);
        if (!in) throw DomainError("cannot open " + o.bps_input);
        GenusMultipleTable t = read_table_csv(in);
        GenusMultipleTable r;
        if (o.bps_direction == "gw-to-gv") r = gv_from_gw(t, o.gmax, o.mmax);
        else if (o.bps_direction == "gv-to-gw") r = gw_from_gv(t, o.gmax, o.mmax);
        else if (o.bps_direction == "gw-to-rtilde") r = rtilde_table(t, o.gmax, o.mmax);
        else throw DomainError("unknown --direction " + o.bps_direction);
        write_table_csv(out, r);
        return kExitOk;
    }
    // Self-test: round trips on a pseudo-random table.
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
    GenusMultipleTable r;
    for (long g = 0; g <= o.gmax; ++g)
        for (long m = 1; m <= o.mmax; ++m) r[{g, m}] = make_rational(num(rng), den(rng));
    GenusMultipleTable R = gw_from_gv(r, o.gmax, o.mmax);
    bool gv_ok = gv_from_gw(R, o.gmax, o.mmax) == r;
    bool mc_ok = gw_from_rtilde(rtilde_table(R, o.gmax, o.mmax), o.gmax, o.mmax) == R;
    bool lemma_ok = true;
    for (long g = 0; g <= o.gmax; ++g)
        for (long m = 1; m <= o.mmax; ++m)
            if (rtilde_from_gw(R, g, m) != rtilde_from_gv(r, g, m)) lemma_ok = false;
    bool pass = gv_ok && mc_ok && lemma_ok;
    json j = {{"gv_round_trip", gv_ok}, {"rtilde_round_trip", mc_ok}, {"rtilde_identity", lemma_ok}, {"pass", pass}};
    std::ostringstream csv;
    csv << "check,pass\ngv_round_trip," << gv_ok << "\nrtilde_round_trip," << mc_ok << "\nrtilde_identity,"
        << lemma_ok << '\n';
    emit(out, o, j, csv.str());
    if (!pass) {
        err << "bps self-test failed\n";
        return kExitError;
    }
    return kExitOk;
}

int cmd_hecke(const Options& o, std::ostream& out, std::ostream&) {
    if (o.hecke_input.empty()) throw DomainError("hecke needs --input");
    std::ifstream in(o.hecke_input);
    if (!in) throw DomainError("cannot open " + o.hecke_input);
    json src = json::parse(in);
    HilbDoubleSeries f;
    for (const auto& entry : src.at("coefficients"))
        f[{entry.at(0).get<long>(), entry.at(1).get<long>()}] = parse_rational(entry.at(2).get<std::string>());
    HilbDoubleSeries t = hecke_T(o.hecke_m, o.hecke_ell, f);
    json rows = json::array();
    std::ostringstream csv;
    csv << "d,r,value\n";
    for (const auto& [key, v] : t) {
        rows.push_back(json::array({key.first, key.second, rat(v)}));
        csv << key.first << ',' << key.second << ',' << to_string(v) << '\n';
    }
    json j = {{"m", o.hecke_m}, {"ell", o.hecke_ell}, {"coefficients", rows}};
    emit(out, o, j, csv.str());
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Noether-Lefschetz and Gromov-Witten computations for K3^[2]-type fibrations", "nlgw"};
    app.set_config("--config", "", "TOML/INI configuration file; command-line flags take precedence");
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--workers", o.workers, "Worker threads (default: NLGW_WORKERS or hardware)");

    auto* nl_dv = app.add_subcommand("nl-dv", "Noether-Lefschetz series of the Debarre-Voisin pencil");
    nl_dv->add_option("--terms", o.terms, "Emit NL(D) for D < terms")->check(CLI::PositiveNumber);

    auto* nl_cubic = app.add_subcommand("nl-cubic", "Noether-Lefschetz series of the cubic fourfold pencil");
    nl_cubic->add_option("--precision", o.precision, "Series precision B (>= 25)");
    nl_cubic->add_option("--nl3", o.nl3, "NL(3), the number of nodal fibers");

    auto* hls = app.add_subcommand("hls", "Classify Noether-Lefschetz divisors of the first type");
    hls->add_option("--p", o.p, "Discriminant prime (11 or 3)");
    hls->add_option("--emax", o.emax, "Largest e to classify");
    hls->add_option("--e", o.e, "Classify a single e");

    auto* gwnl = app.add_subcommand("check-gwnl", "Verify the GW/NL relation degree by degree");
    gwnl->add_option("--family", o.family, "dv-pencil or fano-pencil");
    gwnl->add_option("--dmax", o.dmax, "Largest fiber degree")->check(CLI::PositiveNumber);
    gwnl->add_option("--mode", o.mode, "proven-only, conjectural or hybrid")
        ->check(CLI::IsMember({"proven-only", "conjectural", "hybrid"}));
    gwnl->add_flag("--extract", o.extract, "Also solve for unknown NL numbers or imprimitive invariants");

    auto* mirror = app.add_subcommand("mirror", "I-function coefficients and mirror map");
    mirror->add_option("--family", o.family, "Family tag");
    mirror->add_option("--degree", o.degree, "Fiber degree");

    auto* chern = app.add_subcommand("chern", "Euler number, Hodge degree and singular fiber count");
    chern->add_option("--family", o.family, "Family tag");

    auto* bps = app.add_subcommand("bps", "Gopakumar-Vafa conversions (self-test without --input)");
    bps->add_option("--input", o.bps_input, "CSV table g,m,value");
    bps->add_option("--direction", o.bps_direction, "gw-to-gv, gv-to-gw or gw-to-rtilde");
    bps->add_option("--gmax", o.gmax, "Largest genus");
    bps->add_option("--mmax", o.mmax, "Largest multiple");

    auto* hecke = app.add_subcommand("hecke", "Formal Hecke operator on a double series");
    hecke->add_option("--input", o.hecke_input, "JSON {\"coefficients\": [[d, r, \"c\"], ...]}");
    hecke->add_option("--m", o.hecke_m, "Index m")->check(CLI::PositiveNumber);
    hecke->add_option("--ell", o.hecke_ell, "Weight parameter l");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitError;
    }
    if (o.workers) o.workers = worker_count(o.workers);

    try {
        if (*nl_dv) return cmd_nl_dv(o, out, err);
        if (*nl_cubic) return cmd_nl_cubic(o, out, err);
        if (*hls) return cmd_hls(o, out, err);
        if (*gwnl) return cmd_check_gwnl(o, out, err);
        if (*mirror) return cmd_mirror(o, out, err);
        if (*chern) return cmd_chern(o, out, err);
        if (*bps) return cmd_bps(o, out, err);
        if (*hecke) return cmd_hecke(o, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace nlgw
