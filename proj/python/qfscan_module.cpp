#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfscan/bounds.hpp"
#include "qfscan/bt_orbital.hpp"
#include "qfscan/fields.hpp"
#include "qfscan/ingest.hpp"
#include "qfscan/lattices.hpp"
#include "qfscan/lfun.hpp"
#include "qfscan/scan.hpp"
#include "qfscan/sigma.hpp"
#include "qfscan/volumes.hpp"

namespace py = pybind11;
using namespace qfscan;

namespace {

GroupKind group_from_str(const std::string& s) {
    if (s == "SL2" || s == "sl2") return GroupKind::SL2;
    if (s == "GL2" || s == "gl2") return GroupKind::GL2;
    throw DomainError("group must be 'SL2' or 'GL2'");
}

py::dict report_dict(const BoundReport& r) {
    py::dict d;
    d["check_label"] = r.label;
    d["disc"] = r.disc;
    d["group"] = group_name(r.group);
    d["computed"] = r.computed.value;
    d["abs_error"] = r.computed.abs_error;
    d["bound"] = r.bound.value;
    d["ratio"] = r.ratio;
    d["pass"] = r.pass;
    d["applicable"] = r.applicable;
    if (!r.note.empty()) d["note"] = r.note;
    return d;
}

fields::FieldInvariants inv_of(i64 D) { return fields::field_invariants(D); }

}  // namespace

PYBIND11_MODULE(_qfscan, m) {
    m.doc() = "exact quadratic-field invariants, L-values, lattice counts and bound checks";

    py::register_exception<Error>(m, "QfscanError");

    m.def("is_fundamental", &fields::is_fundamental, py::arg("D"));
    m.def(
        "list_fundamental_discriminants",
        [](i64 dmin, i64 dmax, int r1, int r2) {
            return fields::list_fundamental_discriminants(dmin, dmax, Signature{r1, r2});
        },
        py::arg("dmin"), py::arg("dmax"), py::arg("r1"), py::arg("r2"));
    m.def("kronecker_chi", &fields::kronecker_chi, py::arg("D"), py::arg("n"));
    m.def("class_number", &fields::class_number, py::arg("D"));
    m.def(
        "fundamental_unit",
        [](i64 D) {
            auto u = fields::fundamental_unit(D);
            py::dict d;
            d["x"] = u.x.get_str();
            d["y"] = u.y.get_str();
            d["regulator"] = u.regulator.value;
            d["regulator_error"] = u.regulator.abs_error;
            d["norm_sign"] = u.norm_sign;
            return d;
        },
        py::arg("D"));
    m.def("different_norm_product", &fields::different_norm_product, py::arg("D"));
    m.def(
        "field_invariants",
        [](i64 D) {
            auto inv = inv_of(D);
            py::dict d;
            d["D"] = inv.D;
            d["signature"] = py::make_tuple(inv.sig.r1, inv.sig.r2);
            d["h"] = inv.h;
            d["R"] = inv.R.value;
            d["w"] = inv.w;
            d["L1"] = inv.L1.value;
            d["L1_error"] = inv.L1.abs_error;
            d["zeta2"] = inv.zeta2.value;
            d["zeta2_error"] = inv.zeta2.abs_error;
            d["provenance"] = inv.provenance;
            return d;
        },
        py::arg("D"));

    m.def(
        "dirichlet_L",
        [](i64 D, double s, double tol) {
            auto r = lfun::dirichlet_L(D, s, tol);
            return py::make_tuple(r.value, r.abs_error);
        },
        py::arg("D"), py::arg("s"), py::arg("tol") = 1e-9);
    m.def(
        "zeta_F_at_2",
        [](i64 D, double tol) {
            auto r = lfun::zeta_F_at_2(D, tol);
            return py::make_tuple(r.value, r.abs_error);
        },
        py::arg("D"), py::arg("tol") = 1e-9);

    m.def(
        "vol_quotient",
        [](const std::string& g, i64 D) {
            return volumes::vol_quotient(group_from_str(g), inv_of(D)).value;
        },
        py::arg("group"), py::arg("D"));
    m.def(
        "vol_Kf",
        [](const std::string& g, i64 D) { return volumes::vol_Kf(group_from_str(g), D).value(); },
        py::arg("group"), py::arg("D"));
    m.def(
        "nu_F",
        [](const std::string& g, i64 D) {
            return volumes::nu_F(group_from_str(g), inv_of(D)).value;
        },
        py::arg("group"), py::arg("D"));

    m.def(
        "first_minimum",
        [](i64 D, double scale) {
            return lattices::first_minimum(
                lattices::ring_lattice(D, Rational((i64)std::llround(scale * 64), 64)));
        },
        py::arg("D"), py::arg("scale") = 1.0);
    m.def(
        "count_ball",
        [](i64 D, double R, double scale) {
            return lattices::count_ball(
                lattices::ring_lattice(D, Rational((i64)std::llround(scale * 64), 64)),
                Rational((i64)std::llround(R * 64), 64));
        },
        py::arg("D"), py::arg("R"), py::arg("scale") = 1.0);
    m.def("min_nonrational_norm_sq", &lattices::min_nonrational_norm_sq, py::arg("D"));

    m.def("tree_ball_size", &bt_orbital::ball_size, py::arg("p"), py::arg("depth"));
    m.def(
        "count_fixed_vertices",
        [](i64 g00, i64 g01, i64 g10, i64 g11, i64 p, int depth) {
            bt_orbital::Mat2 g{{{g00, g01}, {g10, g11}}};
            auto fc = bt_orbital::count_fixed_vertices(g, p, depth);
            if (fc.split_signal) throw DomainError("split element: fixed set infinite");
            return fc.count;
        },
        py::arg("g00"), py::arg("g01"), py::arg("g10"), py::arg("g11"), py::arg("p"),
        py::arg("depth"));
    m.def("orbital_closed_form", &bt_orbital::orbital_closed_form, py::arg("q"),
          py::arg("d_gamma"), py::arg("ramified") = false);
    m.def(
        "centered_elliptic",
        [](i64 p, int conductor, int variant) {
            auto g = bt_orbital::centered_elliptic(p, conductor, variant);
            return py::make_tuple(g.e[0][0], g.e[0][1], g.e[1][0], g.e[1][1]);
        },
        py::arg("p"), py::arg("conductor"), py::arg("variant") = 0);

    m.def(
        "spectral_remainder_bound",
        [](const std::string& g, i64 D) {
            return report_dict(bounds::spectral_remainder_bound(inv_of(D), group_from_str(g)));
        },
        py::arg("group"), py::arg("D"));

    m.def(
        "run_scan",
        [](const std::string& group, int r1, int r2, i64 dmin, i64 dmax, double R, double rho,
           const std::string& out_dir, int jobs) {
            scan::ScanConfig cfg;
            cfg.group = group_from_str(group);
            cfg.sig = Signature{r1, r2};
            cfg.dmin = dmin;
            cfg.dmax = dmax;
            cfg.R = R;
            cfg.rho = rho;
            cfg.out_dir = out_dir;
            cfg.jobs = jobs;
            auto res = scan::run_scan_collect(cfg);
            py::list reports;
            for (const auto& r : res.reports)
                if (r.applicable) reports.append(report_dict(r));
            py::dict d;
            d["exit_code"] = res.exit_code;
            d["reports"] = reports;
            if (res.decay) d["decay_slope"] = res.decay->slope;
            return d;
        },
        py::arg("group") = "SL2", py::arg("r1") = 0, py::arg("r2") = 1, py::arg("dmin") = -50,
        py::arg("dmax") = -3, py::arg("R") = 5.0, py::arg("rho") = 8.0, py::arg("out_dir") = "",
        py::arg("jobs") = 1);
}
