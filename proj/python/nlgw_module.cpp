#include "nlgw/bps.hpp"
#include "nlgw/cli.hpp"
#include "nlgw/cohoring.hpp"
#include "nlgw/gwnl.hpp"
#include "nlgw/nlforms.hpp"
#include "nlgw/redgw.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace nlgw;

namespace {

py::object frac(const Rational& x) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(to_string(x));
}

Rational from_py(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

py::dict series_dict(const HeegnerSeries& phi, long terms) {
    py::dict d;
    for (long D = 0; D < terms && D <= phi.max_D(); ++D) d[py::int_(D)] = frac(phi.nl(D));
    return d;
}

GenusMultipleTable table_from(const py::dict& t) {
    GenusMultipleTable out;
    for (const auto& [k, v] : t) {
        auto key = k.cast<std::pair<long, long>>();
        out[key] = from_py(v);
    }
    return out;
}

py::dict table_to(const GenusMultipleTable& t) {
    py::dict d;
    for (const auto& [k, v] : t) d[py::make_tuple(k.first, k.second)] = frac(v);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Noether-Lefschetz and Gromov-Witten computations for K3^[2]-type pencils";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<TruncationError>(m, "TruncationError", PyExc_IndexError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

    m.def("dv_nl_series", [](long terms) { return series_dict(dv_phi(std::max<long>(terms, 1)), terms); },
          py::arg("terms") = 45, "NL(D) of the Debarre-Voisin pencil for D < terms");
    m.def("solve_dv_from_constraints",
          [](long B) { return series_dict(solve_dv_from_constraints(B), B + 1); }, py::arg("B") = 44);
    m.def(
        "cubic_nl_series",
        [](long B, py::object nl3) {
            return series_dict(solve_cubic_form(grr_hodge_degree(fano_pencil_family()) / 3, from_py(nl3), B), B + 1);
        },
        py::arg("B") = 44, py::arg("nl3") = 192);
    m.def("plus_space_dimension", [](long p, long B) { return plus_space_basis(p, 11, B).size(); }, py::arg("p"),
          py::arg("B") = 44);
    m.def(
        "hls_report",
        [](long p, long emax) {
            HeegnerSeries phi = p == 11 ? dv_phi(std::max<long>(emax + 1, 45)) : cubic_pencil_series(std::max<long>(emax + 3, 44));
            py::list out;
            for (const auto& h : hls_report(phi, emax)) {
                py::dict r;
                r["e"] = h.e;
                r["status"] = to_string(h.status);
                r["C"] = frac(h.C);
                r["NL"] = frac(h.nl);
                out.append(r);
            }
            return out;
        },
        py::arg("p") = 11, py::arg("emax") = 30);
    m.def(
        "chern",
        [](const std::string& family) {
            FamilySpec fam = family_by_name(family);
            py::dict d;
            Rational e = euler_characteristic(fam);
            d["euler"] = frac(e);
            if (fam.ambient.has_pencil_line) d["grr"] = frac(grr_hodge_degree(fam));
            if (fam.ambient.has_pencil_line && fam.dimension() == 5) d["singular_fibers"] = frac(singular_fiber_count(e).delta);
            return d;
        },
        py::arg("family"));
    m.def(
        "prim_tables",
        [](py::object s_max) {
            PrimTables t = prim_tables(from_py(s_max));
            py::dict f, g;
            for (const auto& [k, v] : t.f1) f[py::int_(k)] = frac(v);
            for (const auto& [k, v] : t.g1) g[py::int_(k)] = frac(v);
            return py::make_tuple(f, g);
        },
        py::arg("s_max"), "(f, g) keyed by 4s");
    m.def(
        "mc_assemble",
        [](long mult, py::object s) {
            Rational sr = from_py(s);
            Rational top = sr > 0 ? sr : Rational(0);
            FGPair pr = mc_assemble(prim_tables(top + 1), mult, sr);
            return py::make_tuple(frac(pr.F), frac(pr.G));
        },
        py::arg("m"), py::arg("s"));
    m.def(
        "uniruled_mc",
        [](long mult, py::object s, long r) {
            Rational sr = from_py(s);
            return frac(uniruled_mc(prim_tables(sr > 0 ? sr + 1 : Rational(1)).g1, mult, sr, r));
        },
        py::arg("m"), py::arg("s"), py::arg("r"));
    m.def(
        "check_gwnl",
        [](const std::string& family, long dmax, const std::string& mode) {
            PipelineData data;
            {
                py::gil_scoped_release release;
                data = run_pipeline(family, dmax);
            }
            return check_gwnl(data, parse_mode(mode)).to_json().dump();
        },
        py::arg("family"), py::arg("dmax"), py::arg("mode") = "proven-only", "GW/NL report as a JSON string");
    m.def("sin_kernel_coeffs", [](long g, long order) {
        py::list out;
        for (const auto& c : sin_kernel_coeffs(g, order)) out.append(frac(c));
        return out;
    });
    m.def("gv_from_gw", [](const py::dict& R, long g_max, long m_max) { return table_to(gv_from_gw(table_from(R), g_max, m_max)); });
    m.def("gw_from_gv", [](const py::dict& r, long g_max, long m_max) { return table_to(gw_from_gv(table_from(r), g_max, m_max)); });
    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
