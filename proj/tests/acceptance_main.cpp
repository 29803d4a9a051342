// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion pins its tolerances in code; the scans below are
// the reference configurations for the frozen harness constants.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>
#include <vector>

#include "qfscan/arith.hpp"
#include "qfscan/bounds.hpp"
#include "qfscan/bt_orbital.hpp"
#include "qfscan/fields.hpp"
#include "qfscan/lattices.hpp"
#include "qfscan/lfun.hpp"
#include "qfscan/scan.hpp"
#include "qfscan/sigma.hpp"
#include "qfscan/volumes.hpp"

using namespace qfscan;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(const char* name, bool pass, double secs, const std::string& detail) {
    std::printf("%-4s %-58s %7.1fs  %s\n", pass ? "PASS" : "FAIL", name, secs, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

int hw_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 4 : (int)std::min(n, 16u);
}

// ---------------------------------------------------------------------------
// 1. orbital oracle equality
// ---------------------------------------------------------------------------
void criterion1() {
    Timer t;
    u64 checked = 0;
    std::string fail;
    for (i64 p : {2LL, 3LL, 5LL, 7LL}) {
        for (int d = 0; d <= 4; ++d) {
            for (int variant = 0; variant < 3; ++variant) {
                auto g = bt_orbital::centered_elliptic(p, d, variant);
                auto lt = bt_orbital::local_type(g, p);
                if (lt.type != bt_orbital::SplittingType::Unramified || lt.conductor != d) {
                    fail = "constructed gamma has wrong local type";
                    break;
                }
                auto fc = bt_orbital::count_fixed_vertices(g, p, d + 2);
                i64 cf = bt_orbital::orbital_closed_form(p, d, false);
                if (fc.split_signal || (i64)fc.count != cf) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf, "p=%lld d=%d variant=%d: count %llu != %lld",
                                  p, d, variant, fc.count, cf);
                    fail = buf;
                }
                ++checked;
            }
        }
    }
    report("C1 orbital-integral oracle equality", fail.empty() && t.seconds() < 60.0,
           t.seconds(),
           fail.empty() ? std::to_string(checked) + " (p, d, gamma) cases, exact" : fail);
}

// ---------------------------------------------------------------------------
// 2. class-number cross-check
// ---------------------------------------------------------------------------
void criterion2() {
    Timer t;
    std::string fail;
    u64 nfields = 0;
    for (i64 D : fields::list_fundamental_discriminants(-9999, -3, {0, 1})) {
        i64 h = fields::class_number(D);
        i64 S = fields::char_sum_S(D);
        int w = fields::roots_of_unity(D);
        if ((i128)w * (-S) != (i128)2 * (-D) * h) {
            fail = "character-sum formula mismatch at D = " + std::to_string(D);
            break;
        }
        ++nfields;
    }
    if (fail.empty()) {
        for (i64 D : fields::list_fundamental_discriminants(5, 4999, {2, 0})) {
            auto u = fields::fundamental_unit(D);  // Pell identity enforced inside
            i64 h = fields::class_number(D);
            auto L1 = lfun::dirichlet_L(D, 1.0, 1e-9);
            double lhs = (double)h * u.regulator.value;
            double rhs = std::sqrt((double)D) / 2.0 * L1.value;
            if (std::abs(lhs - rhs) > 1e-6 * std::abs(rhs)) {
                fail = "h*R vs sqrt(D)/2 L(1) mismatch at D = " + std::to_string(D);
                break;
            }
            ++nfields;
        }
    }
    report("C2 class-number cross-check (forms vs L-values)",
           fail.empty() && t.seconds() < 300.0, t.seconds(),
           fail.empty() ? std::to_string(nfields) + " fields" : fail);
}

// ---------------------------------------------------------------------------
// 3. different-discriminant identity
// ---------------------------------------------------------------------------
void criterion3() {
    Timer t;
    std::string fail;
    u64 n = 0;
    for (Signature sig : {Signature{0, 1}, Signature{2, 0}}) {
        i64 lo = sig.imaginary_quadratic() ? -100000 : 2;
        i64 hi = sig.imaginary_quadratic() ? -3 : 100000;
        for (i64 D : fields::list_fundamental_discriminants(lo, hi, sig)) {
            if (fields::different_norm_product(D) != std::llabs(D)) {
                fail = "product of local different norms != |D| at D = " + std::to_string(D);
                break;
            }
            ++n;
        }
        if (!fail.empty()) break;
    }
    report("C3 different-discriminant identity", fail.empty(), t.seconds(),
           fail.empty() ? std::to_string(n) + " fields, exact" : fail);
}

// ---------------------------------------------------------------------------
// 4. residue and class-number upper bounds over |D| in [5, 1e5]
// ---------------------------------------------------------------------------
void criterion4() {
    Timer t;
    std::string fail;
    u64 n = 0;
    for (Signature sig : {Signature{0, 1}, Signature{2, 0}}) {
        i64 lo = sig.imaginary_quadratic() ? -100000 : 5;
        i64 hi = sig.imaginary_quadratic() ? -5 : 100000;
        auto discs = fields::list_fundamental_discriminants(lo, hi, sig);
        for (i64 D : discs) {
            auto inv =
                fields::field_invariants(D, {.two_path_check = false, .with_zeta2 = false});
            double logq = std::log((double)inv.absD());
            if (inv.L1.value > logq) {
                fail = "residue bound violated at D = " + std::to_string(D);
                break;
            }
            if ((double)inv.h > 2.0 * std::sqrt((double)inv.absD()) * logq) {
                fail = "class-number bound violated at D = " + std::to_string(D);
                break;
            }
            ++n;
        }
        if (!fail.empty()) break;
    }
    report("C4 residue and class-number upper bounds", fail.empty() && t.seconds() < 600.0,
           t.seconds(), fail.empty() ? std::to_string(n) + " fields" : fail);
}

// ---------------------------------------------------------------------------
// 5. lattice laws over sampled (field, ideal, scale) triples
// ---------------------------------------------------------------------------
void criterion5() {
    Timer t;
    std::string fail;
    int triples = 0;
    std::mt19937_64 rng(11);
    auto discs_i = fields::list_fundamental_discriminants(-160, -3, {0, 1});
    auto discs_r = fields::list_fundamental_discriminants(5, 160, {2, 0});
    std::vector<i64> discs(discs_i);
    discs.insert(discs.end(), discs_r.begin(), discs_r.end());
    for (i64 D : discs) {
        std::vector<lattices::IdealLattice> ideals;
        ideals.push_back(lattices::ring_lattice(D));
        for (i64 p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 17LL}) {
            if (auto P = lattices::prime_lattice(D, p)) {
                ideals.push_back(*P);
                break;
            }
        }
        QuadInteger x{D, (i64)(rng() % 4 + 1), (i64)(rng() % 2 + 1)};
        ideals.push_back(lattices::principal_lattice(D, x));
        for (const auto& I : ideals) {
            for (Rational s : {Rational(1), Rational(3, 2), Rational(3)}) {
                auto L = I;
                L.scale1 = L.scale2 = s;
                auto rep = lattices::check_point_count_bounds(L, Rational(2));
                auto lam = lattices::first_minimum_exact(L);
                bool law = !(lam * lam < QuadRat(D, L.idele_norm()));
                if (!rep.pass || !law) {
                    fail = "lattice law failed at D = " + std::to_string(D) + " (" + rep.note + ")";
                    break;
                }
                ++triples;
            }
            if (!fail.empty()) break;
        }
        if (!fail.empty()) break;
    }
    report("C5 lattice point-count laws", fail.empty() && triples >= 100, t.seconds(),
           fail.empty() ? std::to_string(triples) + " (field, ideal, scale) triples, exact"
                        : fail);
}

// ---------------------------------------------------------------------------
// 6. Sigma_0 inclusion at R = 5
// ---------------------------------------------------------------------------
void criterion6() {
    Timer t;
    const double R = 5.0;
    const i64 D0_cap = (i64)(2 * R * R) + 1;  // 51
    std::string fail;
    i64 reported_D0 = 0;
    for (Signature sig : {Signature{0, 1}, Signature{2, 0}}) {
        i64 lo = sig.imaginary_quadratic() ? -2000 : 2;
        i64 hi = sig.imaginary_quadratic() ? -3 : 2000;
        for (i64 D : fields::list_fundamental_discriminants(lo, hi, sig)) {
            auto inv =
                fields::field_invariants(D, {.two_path_check = false, .with_zeta2 = false});
            auto rep = sigma::verify_inclusion(inv, R, D0_cap);
            if (!rep.pass) {
                fail = "inclusion failed at D = " + std::to_string(D);
                break;
            }
            reported_D0 = std::max(reported_D0, (i64)rep.computed.value);
        }
        if (!fail.empty()) break;
    }
    bool ok = fail.empty() && reported_D0 <= D0_cap && reported_D0 > 0;
    report("C6 Sigma_0 inclusion at R = 5", ok, t.seconds(),
           fail.empty() ? "empirical D0(5) = " + std::to_string(reported_D0) +
                              " <= " + std::to_string(D0_cap)
                        : fail);
}

// ---------------------------------------------------------------------------
// 7. geometric remainder decay over the SL2 imaginary scan
// ---------------------------------------------------------------------------
void criterion7() {
    Timer t;
    scan::ScanConfig cfg;
    cfg.group = GroupKind::SL2;
    cfg.sig = {0, 1};
    cfg.dmin = -99999;
    cfg.dmax = -1001;
    cfg.R = 5.0;
    cfg.rho = 8.0;
    cfg.jobs = hw_jobs();
    auto res = scan::run_scan_collect(cfg);
    u64 geoms = 0, geom_fail = 0;
    for (const auto& r : res.reports) {
        if (r.label != "geometric_remainder") continue;
        ++geoms;
        if (!r.pass) ++geom_fail;
    }
    bool slope_ok = res.decay && res.decay->slope <= -1.0 / 3.0;
    char detail[200];
    std::snprintf(detail, sizeof detail,
                  "%llu fields; %llu geometric failures; C_geom = %.4g; slope = %.4f (<= -1/3)",
                  geoms, geom_fail, res.constants.C_geom,
                  res.decay ? res.decay->slope : NAN);
    report("C7 geometric remainder decay (SL2, -1e5 < D <= -1e3)",
           geom_fail == 0 && slope_ok && t.seconds() < 1800.0, t.seconds(), detail);
}

// ---------------------------------------------------------------------------
// 8. spectral remainder shape (constant-1 contract, both groups)
// ---------------------------------------------------------------------------
void criterion8() {
    Timer t;
    u64 checked = 0, failed = 0;
    i64 first_fail = 0;
    double worst = 0;
    for (Signature sig : {Signature{0, 1}, Signature{2, 0}}) {
        i64 lo = sig.imaginary_quadratic() ? -2000 : 5;
        i64 hi = sig.imaginary_quadratic() ? -5 : 2000;
        for (i64 D : fields::list_fundamental_discriminants(lo, hi, sig)) {
            auto inv = fields::field_invariants(D, {.two_path_check = false});
            for (auto g : {GroupKind::SL2, GroupKind::GL2}) {
                auto rep = bounds::spectral_remainder_bound(inv, g);
                if (!rep.applicable) continue;
                ++checked;
                if (!rep.pass) {
                    ++failed;
                    if (first_fail == 0) first_fail = D;
                    worst = std::max(worst, rep.ratio);
                }
            }
        }
    }
    char detail[240];
    if (failed == 0)
        std::snprintf(detail, sizeof detail, "%llu checks", checked);
    else
        std::snprintf(detail, sizeof detail,
                      "%llu of %llu checks exceed nu^{-delta+0.05} (first at D = %lld, worst "
                      "ratio %.2f): the displayed bound carries no constant and the class-number "
                      "growth defeats it at desk scale",
                      failed, checked, first_fail, worst);
    report("C8 spectral remainder shape (constant-1)", failed == 0, t.seconds(), detail);
}

// ---------------------------------------------------------------------------
// 9. determinism across parallelism
// ---------------------------------------------------------------------------
void criterion9() {
    Timer t;
    auto run = [](int jobs) {
        scan::ScanConfig cfg;
        cfg.dmin = -400;
        cfg.dmax = -3;
        cfg.jobs = jobs;
        auto res = scan::run_scan_collect(cfg);
        return std::make_pair(res.exit_code, scan::reports_to_csv(res.reports) +
                                                 scan::result_to_json(cfg, res));
    };
    auto [rc1, bytes1] = run(1);
    auto [rc8, bytes8] = run(8);
    bool ok = rc1 == rc8 && bytes1 == bytes8;
    report("C9 determinism (--jobs 1 vs --jobs 8)", ok, t.seconds(),
           ok ? "byte-identical CSV + JSON" : "outputs differ");
}

}  // namespace

int main() {
    std::printf("acceptance suite\n----------------\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("----------------\n%d criterion failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
