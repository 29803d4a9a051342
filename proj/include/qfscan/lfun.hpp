#pragma once

#include "qfscan/types.hpp"

namespace qfscan::lfun {

// L(s, chi_D) with certified absolute error <= tol.
//  s = 1: exact finite formulas (character sum for D < 0, log-sin sum for D > 0).
//  s >= 3/2: truncated Dirichlet series, tail bound sum_{n>N} n^-s <= N^{1-s}/(s-1).
//  s in (1, 3/2): UnsupportedRegimeError.
CertifiedReal dirichlet_L(i64 D, double s, double tol);

// zeta_F(2) = zeta(2) * L(2, chi_D); finite Hurwitz/trigamma formula, error <= tol.
CertifiedReal zeta_F_at_2(i64 D, double tol);

// res_{s=1} zeta_F = L(1, chi_D)
CertifiedReal residue_zeta_F(i64 D);

// L(2, chi_D) alone (same route as zeta_F_at_2)
CertifiedReal L2_chi(i64 D);

// truncated Euler product over primes <= pmax for L(2, chi_D), with its own
// certified tail bound (sanity cross-check)
CertifiedReal euler_product_L2(i64 D, i64 pmax);

}  // namespace qfscan::lfun
