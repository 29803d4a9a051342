#include "qfscan/lfun.hpp"

#include <cmath>
#include <numbers>

#include "qfscan/arith.hpp"
#include "qfscan/fields.hpp"

namespace qfscan::lfun {

namespace {

constexpr double kPi = std::numbers::pi;

CertifiedReal L1_imaginary(i64 D) {
    i64 q = -D;
    i64 S = fields::char_sum_S(D);
    double v = kPi * (double)(-S) / std::pow((double)q, 1.5);
    return {v, std::abs(v) * 1e-14 + 1e-300};
}

// L(1, chi_D) = -(1/sqrt D) sum_{a=1}^{D-1} chi(a) log sin(pi a / D), D > 0
CertifiedReal L1_real(i64 D) {
    auto chi = arith::chi_table(D);
    long double acc = 0.0L;
    for (i64 a = 1; a < D; ++a) {
        if (chi[a] == 0) continue;
        long double t = logl(sinl((long double)kPi * a / D));
        acc += chi[a] > 0 ? t : -t;
    }
    double v = (double)(-acc / sqrtl((long double)D));
    double err = (double)D * (std::log((double)D) + 2.0) * 1e-18 + std::abs(v) * 1e-14;
    return {v, err};
}

}  // namespace

CertifiedReal dirichlet_L(i64 D, double s, double tol) {
    if (tol <= 0) throw DomainError("dirichlet_L: tol must be positive");
    if (!fields::is_fundamental(D)) throw DomainError("dirichlet_L: D not fundamental");
    if (s == 1.0) {
        CertifiedReal r = D < 0 ? L1_imaginary(D) : L1_real(D);
        if (r.abs_error > tol)
            throw InternalConsistencyError("dirichlet_L: s=1 formula cannot meet tol");
        return r;
    }
    if (s < 1.5) throw UnsupportedRegimeError(
        "dirichlet_L: s in (1, 3/2) not certified (conditional convergence)");
    // truncated series; tail <= N^{1-s}/(s-1) <= tol/2
    double Nreal = std::pow(2.0 / ((s - 1.0) * tol), 1.0 / (s - 1.0));
    u64 N = (u64)std::ceil(std::max(16.0, Nreal));
    while (std::pow((double)N, 1.0 - s) / (s - 1.0) > tol / 2) N *= 2;
    if (N > (u64)6e9) throw SizeGuardError("dirichlet_L: truncation point too large for tol");
    i64 q = D < 0 ? -D : D;
    auto chi = arith::chi_table(D);
    // Kahan summation
    double sum = 0.0, comp = 0.0;
    if (s == 2.0) {
        for (u64 n = 1; n <= N; ++n) {
            int c = chi[n % (u64)q];
            if (!c) continue;
            double term = (c > 0 ? 1.0 : -1.0) / ((double)n * (double)n);
            double y = term - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    } else {
        for (u64 n = 1; n <= N; ++n) {
            int c = chi[n % (u64)q];
            if (!c) continue;
            double term = (c > 0 ? 1.0 : -1.0) * std::pow((double)n, -s);
            double y = term - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    double tail = std::pow((double)N, 1.0 - s) / (s - 1.0);
    double round_err = 4e-16 * std::log((double)N + 1.0) + 1e-14;
    return {sum, tail + round_err};
}

CertifiedReal L2_chi(i64 D) {
    // L(2, chi) = q^{-2} sum_{a=1}^{q-1} chi(a) psi_1(a/q)
    i64 q = D < 0 ? -D : D;
    auto chi = arith::chi_table(D);
    long double acc = 0.0L, comp = 0.0L;
    double dq = (double)q;
    for (i64 a = 1; a < q; ++a) {
        if (!chi[a]) continue;
        long double term = (long double)arith::trigamma((double)a / dq);
        if (chi[a] < 0) term = -term;
        long double y = term - comp;
        long double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    double v = (double)(acc / ((long double)q * q));
    // per-term trigamma relative error 1e-14 contributes <= zeta(2)*1e-14 after
    // the q^-2 normalization; accumulated rounding is far below that
    double err = 2e-13 + std::abs(v) * 1e-13;
    return {v, err};
}

CertifiedReal zeta_F_at_2(i64 D, double tol) {
    if (tol <= 0) throw DomainError("zeta_F_at_2: tol must be positive");
    CertifiedReal zeta2(kPi * kPi / 6.0, 1e-15);
    CertifiedReal r = zeta2 * L2_chi(D);
    if (r.abs_error > tol)
        throw InternalConsistencyError("zeta_F_at_2: cannot certify requested tol");
    return r;
}

CertifiedReal residue_zeta_F(i64 D) { return dirichlet_L(D, 1.0, 1e-12); }

CertifiedReal euler_product_L2(i64 D, i64 pmax) {
    auto ps = arith::primes_upto(pmax);
    double prod = 1.0;
    for (int32_t p : *ps) {
        if ((i64)p > pmax) break;
        int c = arith::kronecker(D, (u64)p);
        if (!c) continue;
        prod /= 1.0 - (double)c / ((double)p * p);
    }
    // |log L - log prod| <= sum_{p > pmax} 2 p^-2 <= 2/pmax
    double tail = 2.0 / (double)pmax;
    double err = std::abs(prod) * (std::exp(tail) - 1.0 + 1e-13);
    return {prod, err};
}

}  // namespace qfscan::lfun
