#include "qfscan/volumes.hpp"

#include <cmath>
#include <numbers>

namespace qfscan::volumes {

namespace {
// zeta(4) = pi^4 / 90
const double kZeta4 = std::pow(std::numbers::pi, 4) / 90.0;
}

ExactPower vol_Kf(GroupKind g, i64 D) {
    if (!fields::is_fundamental(D)) throw DomainError("vol_Kf: D not fundamental");
    i64 q = D < 0 ? -D : D;
    return g == GroupKind::GL2 ? ExactPower{q, -3, 2} : ExactPower{q, -1, 1};
}

CertifiedReal vol_quotient(GroupKind g, const fields::FieldInvariants& inv) {
    CertifiedReal sqrtD = csqrt(CertifiedReal((double)inv.absD(), 0.0));
    CertifiedReal v = sqrtD * inv.zeta2;
    if (g == GroupKind::GL2) v = v * inv.L1;
    return v;
}

CertifiedReal nu_F(GroupKind g, const fields::FieldInvariants& inv) {
    double q = (double)inv.absD();
    if (g == GroupKind::SL2) return CertifiedReal(std::pow(q, 1.5), 1e-11 * std::pow(q, 1.5)) * inv.zeta2;
    return CertifiedReal(q * q, 0.0) * inv.zeta2 * inv.L1;
}

namespace {

BoundReport quot_meas_impl(GroupKind g, const fields::FieldInvariants& inv, bool ohat_variant) {
    const char* label = ohat_variant ? "quot_meas_ohat" : "quot_meas";
    i64 q = inv.absD();
    if (q < 5)
        return BoundReport::out_of_domain(label, inv.D, g, "stated only for |D| >= 5");
    CertifiedReal sqrtD = csqrt(CertifiedReal((double)q, 0.0));
    CertifiedReal denom = ohat_variant ? CertifiedReal((double)q, 0.0) * inv.zeta2
                                       : sqrtD * inv.zeta2;
    CertifiedReal ratio = inv.L1 / denom;
    int d = inv.sig.degree();
    double shape = ohat_variant ? 1.0 / (double)q : 1.0 / std::sqrt((double)q);
    // zeta(2d)^{-d} |D|^{-1/2 or -1} (log |D|)^{d-1}
    double b = std::pow(kZeta4, -(double)d) * shape * std::pow(inv.log_absD(), d - 1);
    return BoundReport::make(label, ratio, CertifiedReal(b, std::abs(b) * 1e-14), inv.D, g);
}

}  // namespace

BoundReport quot_meas_check(GroupKind g, const fields::FieldInvariants& inv) {
    return quot_meas_impl(g, inv, false);
}

BoundReport quot_meas_check_ohat(GroupKind g, const fields::FieldInvariants& inv) {
    return quot_meas_impl(g, inv, true);
}

}  // namespace qfscan::volumes
