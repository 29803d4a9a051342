#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qfscan/arith.hpp"
#include "qfscan/bounds.hpp"
#include "qfscan/bt_orbital.hpp"
#include "qfscan/fields.hpp"
#include "qfscan/ingest.hpp"
#include "qfscan/lattices.hpp"
#include "qfscan/lfun.hpp"
#include "qfscan/scan.hpp"
#include "qfscan/sigma.hpp"
#include "qfscan/volumes.hpp"

using namespace qfscan;

namespace {

Signature parse_signature(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("signature must be r1,r2");
    return Signature{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

GroupKind parse_group(const std::string& s) {
    if (s == "SL2" || s == "sl2") return GroupKind::SL2;
    if (s == "GL2" || s == "gl2") return GroupKind::GL2;
    throw ConfigError("group must be SL2 or GL2");
}

void print_report(const BoundReport& r) {
    if (!r.applicable) {
        std::printf("%-24s  out-of-domain (%s)\n", r.label.c_str(), r.note.c_str());
        return;
    }
    std::printf("%-24s  computed %.10g (+-%.2g)  bound %.10g  ratio %.3g  %s%s\n",
                r.label.c_str(), r.computed.value, r.computed.abs_error, r.bound.value, r.ratio,
                r.pass ? "pass" : "FAIL", r.note.empty() ? "" : (" [" + r.note + "]").c_str());
}

int cmd_field(i64 D, bool as_json) {
    auto inv = fields::field_invariants(D);
    if (as_json) {
        std::printf(
            "{\"D\": %lld, \"signature\": [%d,%d], \"h\": %lld, \"R\": %.15g, \"w\": %d, "
            "\"L1\": %.15g, \"L1_err\": %.3g, \"zeta2\": %.15g, \"zeta2_err\": %.3g, "
            "\"provenance\": \"%s\"}\n",
            inv.D, inv.sig.r1, inv.sig.r2, inv.h, inv.R.value, inv.w, inv.L1.value,
            inv.L1.abs_error, inv.zeta2.value, inv.zeta2.abs_error, inv.provenance.c_str());
        return 0;
    }
    std::printf("D = %lld  signature (%d,%d)\n", inv.D, inv.sig.r1, inv.sig.r2);
    std::printf("h = %lld   w = %d\n", inv.h, inv.w);
    if (D > 0) {
        auto u = fields::fundamental_unit(D);
        std::printf("fundamental unit (x + y sqrt(D))/2: x = %s, y = %s  (norm %+d)\n",
                    u.x.get_str().c_str(), u.y.get_str().c_str(), u.norm_sign);
        std::printf("regulator = %.15g (+-%.2g)\n", u.regulator.value, u.regulator.abs_error);
    }
    std::printf("L(1,chi_D) = %.15g (+-%.2g)\n", inv.L1.value, inv.L1.abs_error);
    std::printf("zeta_F(2)  = %.15g (+-%.2g)\n", inv.zeta2.value, inv.zeta2.abs_error);
    std::printf("different norm product = %lld (|D| = %lld)\n",
                fields::different_norm_product(D), inv.absD());
    for (auto g : {GroupKind::SL2, GroupKind::GL2}) {
        auto vq = volumes::vol_quotient(g, inv);
        auto kf = volumes::vol_Kf(g, D);
        auto nu = volumes::nu_F(g, inv);
        std::printf("%s: vol(quotient) = %.10g   vol(K_f) = |D|^{%d/%d} = %.10g   nu_F = %.10g\n",
                    group_name(g), vq.value, kf.num, kf.den, kf.value(), nu.value);
    }
    return 0;
}

int cmd_orbital(i64 p, int dgamma, bool ramified, const std::string& dot_path) {
    if (ramified) {
        std::printf("ramified path (experimental)\n");
        for (int variant = 0; variant < 3; ++variant) {
            auto g = bt_orbital::ramified_elliptic(p, dgamma, variant);
            int depth = 2 * dgamma + 2;
            auto fc = bt_orbital::count_fixed_vertices(g, p, depth);
            i64 cf = bt_orbital::orbital_closed_form(p, dgamma, true);
            std::printf("gamma = [[%lld,%lld],[%lld,%lld]]  fixed(depth %d) = %llu  closed form = %lld  %s\n",
                        g.e[0][0], g.e[0][1], g.e[1][0], g.e[1][1], depth, fc.count, cf,
                        (i64)fc.count == cf ? "match" : "MISMATCH");
        }
        return 0;
    }
    for (int variant = 0; variant < 3; ++variant) {
        auto g = bt_orbital::centered_elliptic(p, dgamma, variant);
        int depth = dgamma + 2;
        auto fc = bt_orbital::count_fixed_vertices(g, p, depth);
        i64 cf = bt_orbital::orbital_closed_form(p, dgamma, false);
        std::printf("gamma = [[%lld,%lld],[%lld,%lld]]  fixed(depth %d) = %llu  closed form = %lld  %s\n",
                    g.e[0][0], g.e[0][1], g.e[1][0], g.e[1][1], depth, fc.count, cf,
                    (i64)fc.count == cf ? "match" : "MISMATCH");
        if (!dot_path.empty() && variant == 0) {
            std::ofstream out(dot_path);
            out << bt_orbital::fixed_subtree_dot(g, p, depth);
            std::printf("fixed subtree written to %s\n", dot_path.c_str());
        }
    }
    return 0;
}

int cmd_lattice(i64 D, double R) {
    auto L = lattices::ring_lattice(D);
    Rational Rq((i64)std::llround(R * 64), 64);
    std::printf("O_F lattice for D = %lld, scale 1\n", D);
    std::printf("lambda_1 (squared norm) = %.10g\n", lattices::first_minimum(L));
    std::printf("|a|_{A_F} = %.10g\n", L.idele_norm().to_double());
    std::printf("count ||X||_r <= %.6g: %llu\n", Rq.to_double(), lattices::count_ball(L, Rq));
    auto rep = lattices::check_point_count_bounds(L, Rq);
    print_report(rep);
    auto mn = lattices::min_nonrational_norm(D, 1e9);
    std::printf("min nonrational ||x||_r = %.10g\n", mn ? *mn : -1.0);
    return rep.pass ? 0 : 1;
}

int cmd_sigma0(double R, const std::string& group, const std::string& sig_str) {
    auto set = sigma::sigma0_set(R, parse_group(group), parse_signature(sig_str));
    std::printf("%s\n", sigma::sigma0_json(set).c_str());
    return 0;
}

int cmd_bounds(i64 D, const std::string& group, double R, double rho) {
    auto inv = fields::field_invariants(D);
    GroupKind g = parse_group(group);
    bounds::HarnessConstants hc;  // code-pinned defaults (single-field mode)
    auto T = bounds::truncation_threshold(inv, rho);
    auto sig0 = bounds::classify_sigma0(inv, R, g);
    std::printf("D = %lld  %s  R = %g  rho = %g  varpi(T) = %.6g\n", D, group_name(g), R, rho,
                T.varpi());
    std::printf("Sigma_0(F): %zu reg.ell, %zu reg.split, %zu unip\n", sig0.reg_ell.size(),
                sig0.reg_split.size(), sig0.unip.size());
    std::vector<BoundReport> reps;
    reps.push_back(volumes::quot_meas_check(g, inv));
    reps.push_back(bounds::reg_split_bound(inv, T, sig0.reg_split, R, g, rho, hc.C_split));
    reps.push_back(bounds::unip_bound(inv, T, g, R, rho, hc.C_unip));
    reps.push_back(bounds::geometric_remainder(inv, T, g, sig0, R, rho, hc.C_geom));
    reps.push_back(bounds::interpolation_constant_report(inv, g, sig0, R, rho, hc));
    reps.push_back(bounds::spectral_remainder_bound(inv, g));
    int rc = 0;
    for (const auto& r : reps) {
        print_report(r);
        if (r.applicable && !r.pass) rc = 1;
    }
    return rc;
}

int cmd_ingest(const std::string& path) {
    auto res = ingest::ingest_field_table(path);
    std::printf("accepted %zu record(s)\n", res.fields.size());
    for (const auto& f : res.fields)
        std::printf("  %s: degree %d, disc %lld, sig (%d,%d), h %lld, R %.10g, w %d\n",
                    f.label.c_str(), f.degree, f.disc, f.r1, f.r2, f.h, f.R, f.w);
    for (const auto& r : res.rejects) std::fprintf(stderr, "rejected: %s\n", r.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic-field bound verification toolkit"};
    app.require_subcommand(1);

    // scan
    auto* sc = app.add_subcommand("scan", "scan a range of fundamental discriminants");
    std::string group = "SL2", sig_str = "0,1", out_dir;
    i64 dmin = -50, dmax = -3;
    double radius = 5.0, rho = 8.0, tol = 1e-9;
    int jobs = 1;
    sc->add_option("--group", group, "SL2 or GL2");
    sc->add_option("--signature", sig_str, "r1,r2");
    sc->add_option("--dmin", dmin, "lower end of the discriminant range");
    sc->add_option("--dmax", dmax, "upper end of the discriminant range");
    sc->add_option("--radius", radius, "test-function cap radius R");
    sc->add_option("--rho", rho, "regularity slope (alpha(T) = rho log|D|)");
    sc->add_option("--tol", tol, "certified-evaluation tolerance");
    sc->add_option("--out", out_dir, "output directory for scan.csv / scan.json");
    sc->add_option("--jobs", jobs, "parallel field workers");

    // field
    auto* fc = app.add_subcommand("field", "invariants of one field");
    std::string field_d;
    bool field_json = false;
    fc->add_option("disc", field_d, "fundamental discriminant")->required();
    fc->add_flag("--json", field_json, "JSON output");

    // orbital
    auto* oc = app.add_subcommand("orbital", "fixed-vertex counts vs closed form");
    i64 orb_p = 3;
    int orb_d = 1;
    bool orb_ram = false;
    std::string orb_dot;
    oc->add_option("p", orb_p, "prime")->required();
    oc->add_option("dgamma", orb_d, "conductor parameter d_gamma")->required();
    oc->add_flag("--ramified", orb_ram, "ramified closed form (experimental)");
    oc->add_option("--dot", orb_dot, "write fixed subtree in dot format");

    // lattice
    auto* lc = app.add_subcommand("lattice", "ring lattice ball counts");
    std::string lat_d;
    double lat_r = 2.0;
    lc->add_option("disc", lat_d, "fundamental discriminant")->required();
    lc->add_option("radius", lat_r, "ball radius R")->required();

    // sigma0
    auto* gc = app.add_subcommand("sigma0", "universal coefficient set");
    double sig_r = 1.5;
    std::string s0_group = "SL2", s0_sig = "0,1";
    gc->add_option("radius", sig_r, "support radius R")->required();
    gc->add_option("--group", s0_group, "SL2 or GL2");
    gc->add_option("--signature", s0_sig, "r1,r2");

    // bounds
    auto* bc = app.add_subcommand("bounds", "bound reports for one field");
    std::string bnd_d, bnd_group = "SL2";
    double bnd_r = 5.0, bnd_rho = 8.0;
    bc->add_option("disc", bnd_d, "fundamental discriminant")->required();
    bc->add_option("--group", bnd_group, "SL2 or GL2");
    bc->add_option("--radius", bnd_r, "cap radius R");
    bc->add_option("--rho", bnd_rho, "regularity slope");

    // ingest
    auto* ic = app.add_subcommand("ingest", "validate a JSON-lines field table");
    std::string ingest_path;
    ic->add_option("path", ingest_path, "JSONL file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc->parsed()) {
            scan::ScanConfig cfg;
            cfg.group = parse_group(group);
            cfg.sig = parse_signature(sig_str);
            cfg.dmin = dmin;
            cfg.dmax = dmax;
            cfg.R = radius;
            cfg.rho = rho;
            cfg.tol = tol;
            cfg.out_dir = out_dir;
            cfg.jobs = jobs;
            return scan::run_scan(cfg);
        }
        if (fc->parsed()) return cmd_field(std::stoll(field_d), field_json);
        if (oc->parsed()) return cmd_orbital(orb_p, orb_d, orb_ram, orb_dot);
        if (lc->parsed()) return cmd_lattice(std::stoll(lat_d), lat_r);
        if (gc->parsed()) return cmd_sigma0(sig_r, s0_group, s0_sig);
        if (bc->parsed()) return cmd_bounds(std::stoll(bnd_d), bnd_group, bnd_r, bnd_rho);
        if (ic->parsed()) return cmd_ingest(ingest_path);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
