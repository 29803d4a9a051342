#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "qfscan/types.hpp"

namespace qfscan::fields {

bool is_fundamental(i64 D);

// Fundamental discriminants D in [dmin, dmax] with the sign dictated by sig,
// ascending by |D|.  Only degree-2 signatures are computed locally.
std::vector<i64> list_fundamental_discriminants(i64 dmin, i64 dmax, Signature sig);

// Kronecker symbol (D|n); DomainError for n = 0.
int kronecker_chi(i64 D, u64 n);

// Wide class number of the field of discriminant D (forms for D < 0,
// form cycles + Pell sign for D > 0).
i64 class_number(i64 D);

// Narrow class number for D > 0 (count of cycles of reduced indefinite forms).
i64 narrow_class_number(i64 D);

struct FundamentalUnit {
    mpz_class x, y;          // unit = (x + y sqrt(D))/2, x^2 - D y^2 = +-4
    CertifiedReal regulator;  // log of the unit
    int norm_sign;            // (x^2 - D y^2)/4 in {+1, -1}
};
FundamentalUnit fundamental_unit(i64 D);

// prod over ramified v of N(partial_v), from the local ramification data;
// equals |D| (that equality is the test).
i64 different_norm_product(i64 D);

int roots_of_unity(i64 D);

// S = sum_{a=1}^{|D|-1} a * chi_D(a) for D < 0 (exact; h = -w S / (2|D|))
i64 char_sum_S(i64 D);

struct FieldInvariants {
    i64 D = 0;
    Signature sig;
    i64 h = 0;
    CertifiedReal R;   // 0 for imaginary quadratic
    int w = 2;
    CertifiedReal L1;     // L(1, chi_D) = res_{s=1} zeta_F
    CertifiedReal zeta2;  // zeta_F(2)
    std::string provenance = "computed";

    CertifiedReal R_eff() const { return D < 0 ? CertifiedReal(1.0, 0.0) : R; }
    double log_absD() const { return std::log((double)(D < 0 ? -D : D)); }
    i64 absD() const { return D < 0 ? -D : D; }
};

struct InvariantOptions {
    bool two_path_check = true;  // independent L(1) route + consistency gate
    bool with_zeta2 = true;
};

FieldInvariants field_invariants(i64 D, InvariantOptions opt = {});

}  // namespace qfscan::fields
