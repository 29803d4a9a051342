#include "qfscan/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfscan/bt_orbital.hpp"
#include "qfscan/lattices.hpp"
#include "qfscan/volumes.hpp"

namespace qfscan::bounds {

namespace {
constexpr double kPi = std::numbers::pi;

void require_regular(const TruncationParam& T, const fields::FieldInvariants& inv, double rho) {
    if (!T.regular_for(rho, inv.absD()))
        throw RegularityError("truncation parameter not suitably regular: alpha(T) < rho log|D|");
}

// volume of {x in R^r : ||x||_r <= R}
double ball_volume(Signature sig, double R) {
    return sig.r2 == 1 ? kPi * R * R / 2.0 : kPi * R * R;
}

}  // namespace

TruncationParam truncation_threshold(const fields::FieldInvariants& inv, double rho) {
    if (rho <= 0) throw DomainError("truncation_threshold: rho > 0 required");
    double alpha = rho * std::max(1.0, inv.log_absD());
    return TruncationParam{alpha / 2.0};
}

double torus_truncated_bound(const TruncationParam& T, GroupKind g, double x_norm) {
    if (x_norm < 1.0)
        throw DomainError("torus_truncated_bound: ||(1,x)||_{A_F} >= 1 for all x");
    return delta_torus(g) * (T.varpi() + std::log(x_norm));
}

SigmaOfF classify_sigma0(const fields::FieldInvariants& inv, double R, GroupKind g) {
    auto set = sigma::sigma0_set(R, g, inv.sig);
    SigmaOfF out;
    for (auto& p : set) {
        auto k = sigma::classify(inv, p);
        if (!k) continue;  // coefficients not in O_F
        p.kind = k;
        switch (*k) {
            case sigma::Kind::RegEll: out.reg_ell.push_back(p); break;
            case sigma::Kind::RegSplit: out.reg_split.push_back(p); break;
            case sigma::Kind::Unip: out.unip.push_back(p); break;
        }
    }
    return out;
}

CertifiedReal reg_split_value(const fields::FieldInvariants& inv, const TruncationParam& T,
                              const std::vector<sigma::PolynomialClass>& split_set, double R,
                              GroupKind g) {
    // surrogate f_inf: indicator cap of radius R, sup = 1: the archimedean
    // integral becomes the ball volume times the extremal log factor
    double volR = ball_volume(inv.sig, R);
    double mG = g == GroupKind::SL2 ? 2.0 : 1.0;  // conjugacy classes per split polynomial
    double total = 0.0;
    for (const auto& p : split_set) {
        QuadInteger disc = p.disc_in(inv.D);
        auto s = sigma::sqrt_in_field(inv.D, disc);
        if (!s) throw InternalConsistencyError("reg_split_value: polynomial not split");
        // gamma1 - gamma2 = s; |.|_r = |N(s)| >= 1 for nonzero integral s
        i128 ns = s->norm();
        double Nabs = std::abs((double)ns);
        double log_r = std::log(std::max(1.0, Nabs));
        // per-place log factor, maximized over the x-ball
        double logfac = 0.0;
        auto slot = [&](double sv, double xmax, bool complex_slot) {
            auto norm1x = [&](double x) { return complex_slot ? sv + x : std::sqrt(sv * sv + x * x); };
            logfac += std::max(std::abs(std::log(norm1x(0.0))), std::abs(std::log(norm1x(xmax))));
        };
        if (inv.D < 0) {
            // one complex place: |s|_C = sigma(s) conj = N-like value: |N(s)| since complex
            slot(Nabs, R * R / 2.0, true);
        } else {
            auto v = lattices::minkowski_embed(inv.D, *s);
            slot(std::abs(v.re[0]), R, false);
            slot(std::abs(v.re[1]), R, false);
        }
        total += (1.0 + log_r) * volR * (1.0 + logfac);
    }
    double v = T.varpi() * mG * total;
    return {v, std::abs(v) * 1e-12};
}

double unip_value(const TruncationParam& T, GroupKind g, double R) {
    if (R <= 0) throw DomainError("unip_value: R > 0 required");
    const int d = 2;
    // central elements landing in the support cap
    double n_z = R >= 2.0 * std::sqrt(2.0) ? 2.0 : 1.0;
    double twoR2d = std::pow(2.0 * R, 2 * d);
    double logC = std::log(std::pow(R, 2 * d));  // emptiness threshold C = R^{2d}
    double interval = std::max(0.0, T.varpi() - logC) / (double)beta_G(g);
    return n_z * twoR2d * interval;
}

CertifiedReal reg_ell_sum(GroupKind g, const fields::FieldInvariants& inv,
                          const std::vector<sigma::PolynomialClass>& ell_set,
                          const std::vector<ingest::IngestedField>* quartics) {
    CertifiedReal total(0.0, 0.0);
    for (const auto& p : ell_set) {
        const ingest::IngestedField* quartic = nullptr;
        // a quartic table entry keyed by... callers pass tables for specific checks;
        // per-class lookup is by matching home field handled upstream, so use the
        // first entry only when the caller supplies exactly one
        if (quartics && quartics->size() == 1) quartic = &(*quartics)[0];
        total = total + bt_orbital::elliptic_class_value(g, inv, p, quartic, nullptr);
    }
    return total;
}

BoundReport reg_split_bound(const fields::FieldInvariants& inv, const TruncationParam& T,
                            const std::vector<sigma::PolynomialClass>& split_set, double R,
                            GroupKind g, double rho, double C) {
    require_regular(T, inv, rho);
    CertifiedReal value = reg_split_value(inv, T, split_set, R, g);
    // measure ratio vol(O^)vol(T0...)/vol(G...) = res / (|D| zeta_F(2))
    CertifiedReal ratio = inv.L1 / (CertifiedReal((double)inv.absD(), 0.0) * inv.zeta2);
    CertifiedReal normalized = value * ratio;
    int d = inv.sig.degree();
    double shape = C / (double)inv.absD() * std::pow(inv.log_absD(), d - 1) * T.varpi();
    return BoundReport::make("reg_split", normalized, CertifiedReal(shape, shape * 1e-14), inv.D,
                             g);
}

BoundReport unip_bound(const fields::FieldInvariants& inv, const TruncationParam& T, GroupKind g,
                       double R, double rho, double C) {
    require_regular(T, inv, rho);
    double value = unip_value(T, g, R);
    CertifiedReal ratio =
        inv.L1 / (csqrt(CertifiedReal((double)inv.absD(), 0.0)) * inv.zeta2);  // vol(F\A)=1
    CertifiedReal normalized = CertifiedReal(value, value * 1e-14) * ratio;
    int d = inv.sig.degree();
    double shape =
        C / std::sqrt((double)inv.absD()) * std::pow(inv.log_absD(), d - 1) * T.varpi();
    return BoundReport::make("unip", normalized, CertifiedReal(shape, shape * 1e-14), inv.D, g);
}

CertifiedReal geometric_remainder_value(const fields::FieldInvariants& inv,
                                        const TruncationParam& T, GroupKind g,
                                        const SigmaOfF& sig0, double R,
                                        const std::vector<ingest::IngestedField>* quartics) {
    CertifiedReal volq = volumes::vol_quotient(g, inv);
    CertifiedReal ell = reg_ell_sum(g, inv, sig0.reg_ell, quartics) / volq;
    CertifiedReal split = reg_split_value(inv, T, sig0.reg_split, R, g) *
                          (inv.L1 / (CertifiedReal((double)inv.absD(), 0.0) * inv.zeta2));
    double uv = unip_value(T, g, R);
    CertifiedReal unip = CertifiedReal(uv, uv * 1e-14) *
                         (inv.L1 / (csqrt(CertifiedReal((double)inv.absD(), 0.0)) * inv.zeta2));
    return ell + split + unip;
}

BoundReport geometric_remainder(const fields::FieldInvariants& inv, const TruncationParam& T,
                                GroupKind g, const SigmaOfF& sig0, double R, double rho, double C,
                                const std::vector<ingest::IngestedField>* quartics) {
    require_regular(T, inv, rho);
    CertifiedReal value = geometric_remainder_value(inv, T, g, sig0, R, quartics);
    int d = inv.sig.degree();
    double shape = C / std::sqrt((double)inv.absD()) * std::pow(inv.log_absD(), 2 * d) * T.varpi();
    return BoundReport::make("geometric_remainder", value, CertifiedReal(shape, shape * 1e-14),
                             inv.D, g);
}

double interp_constant(double t1, double y1, double t2, double y2) {
    if (t1 == t2) throw DomainError("interp_constant: degenerate T pair");
    return (y1 * t2 - y2 * t1) / (t2 - t1);
}

BoundReport interpolation_constant_report(const fields::FieldInvariants& inv, GroupKind g,
                                          const SigmaOfF& sig0, double R, double rho,
                                          const HarnessConstants& hc) {
    TruncationParam T1 = truncation_threshold(inv, rho);
    TruncationParam T2{2.0 * T1.t};
    CertifiedReal r1 = geometric_remainder_value(inv, T1, g, sig0, R, nullptr);
    CertifiedReal r2 = geometric_remainder_value(inv, T2, g, sig0, R, nullptr);
    double b = interp_constant(T1.t, r1.value, T2.t, r2.value);
    // exponential-approximation correction radius a1 |D|^{-1} e^{-alpha/2} varpi at both nodes
    double q = (double)inv.absD();
    double corr = hc.approx_a1 / q *
                  (std::exp(-T1.alpha() / 2.0) * T1.varpi() + std::exp(-T2.alpha() / 2.0) * T2.varpi());
    CertifiedReal est(std::abs(b), corr + r1.abs_error * 2 + r2.abs_error);
    int d = inv.sig.degree();
    double shape = hc.C_interp / std::sqrt(q) * std::pow(inv.log_absD(), 2 * d + 1);
    return BoundReport::make("interpolation_T0", est, CertifiedReal(shape, shape * 1e-14), inv.D,
                             g);
}

BoundReport spectral_remainder_bound(const fields::FieldInvariants& inv, GroupKind g) {
    double q = (double)inv.absD();
    CertifiedReal volq = volumes::vol_quotient(g, inv);
    auto kf = volumes::vol_Kf(g, inv.D);
    double ha = std::pow((double)inv.h, a_G(g));
    CertifiedReal computed = CertifiedReal(ha * (1.0 + std::log(q)), ha * 1e-12) *
                             (CertifiedReal(kf.value(), kf.value() * 1e-15) / volq);
    CertifiedReal nu = volumes::nu_F(g, inv);
    double expo = -delta_spectral(g) + 0.05;
    double bound = std::pow(nu.value, expo);
    double bound_err = std::abs(bound) * (std::abs(expo) * nu.abs_error / nu.value + 1e-14);
    return BoundReport::make("spectral_remainder", computed, CertifiedReal(bound, bound_err),
                             inv.D, g);
}

DecayFit decay_fit_xy(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 2) throw DomainError("decay_fit: need at least 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = (double)xy.size();
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw DomainError("decay_fit: degenerate abscissae");
    DecayFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

DecayFit decay_fit(const std::vector<BoundReport>& geom_reports, double rho) {
    std::vector<std::pair<double, double>> xy;
    double lo = 1e300, hi = 0;
    for (const auto& r : geom_reports) {
        if (!r.applicable || r.computed.value <= 0) continue;
        double q = (double)(r.disc < 0 ? -r.disc : r.disc);
        double varpi = rho * std::max(1.0, std::log(q)) / 2.0;
        xy.push_back({std::log(q), std::log(r.computed.value / varpi)});
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    // two decades with endpoint slack: fundamental |D| in (1e3, 1e5] spans 99.7x
    if (xy.size() < 10 || hi < 95.0 * lo)
        throw DomainError("decay_fit: need >= 10 fields spanning >= 2 decades of |D|");
    return decay_fit_xy(xy);
}

}  // namespace qfscan::bounds
