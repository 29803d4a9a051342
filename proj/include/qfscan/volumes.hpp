#pragma once

#include "qfscan/fields.hpp"
#include "qfscan/types.hpp"

namespace qfscan::volumes {

// |D|^(-num/den), kept symbolic so |D|^{-3/2} stays exact until a report needs it
struct ExactPower {
    i64 base;
    int num;  // negative exponent numerator
    int den;
    double value() const { return std::pow((double)base, (double)num / den); }
};

// vol(K_f^F): |D|^{-3/2} for GL2, |D|^{-1} for SL2
ExactPower vol_Kf(GroupKind g, i64 D);

// vol(G(F)\G(A_F)^1): |D|^{1/2} zeta_F(2) * (res zeta_F for GL2)
CertifiedReal vol_quotient(GroupKind g, const fields::FieldInvariants& inv);

// nu_F = vol_quotient / vol_Kf = |D|^2 zeta_F(2) res (GL2) / |D|^{3/2} zeta_F(2) (SL2)
CertifiedReal nu_F(GroupKind g, const fields::FieldInvariants& inv);

// Lemma-shaped quotient measure check (|D| >= 5): both ratio variants against
// zeta(2d)^{-d} |D|^{-1/2 resp. -1} (log|D|)^{d-1}
BoundReport quot_meas_check(GroupKind g, const fields::FieldInvariants& inv);
// the |D|^{-1} variant as its own report
BoundReport quot_meas_check_ohat(GroupKind g, const fields::FieldInvariants& inv);

}  // namespace qfscan::volumes
