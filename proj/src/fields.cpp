#include "qfscan/fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qfscan/arith.hpp"
#include "qfscan/exact.hpp"
#include "qfscan/lfun.hpp"

namespace qfscan::fields {

namespace {

bool squarefree(i64 n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

}  // namespace

bool is_fundamental(i64 D) {
    if (D == 0 || D == 1) return false;
    i64 m4 = ((D % 4) + 4) % 4;
    if (m4 == 1) return squarefree(D);
    if (m4 == 0) {
        i64 m = D / 4;
        i64 r = ((m % 4) + 4) % 4;
        return (r == 2 || r == 3) && squarefree(m);
    }
    return false;
}

std::vector<i64> list_fundamental_discriminants(i64 dmin, i64 dmax, Signature sig) {
    if (sig.degree() != 2)
        throw UnsupportedDegreeError("computed fields have degree 2; degree " +
                                     std::to_string(sig.degree()) + " is ingestion-only");
    if (dmin > dmax) throw DomainError("dmin > dmax");
    std::vector<i64> out;
    for (i64 D = dmin; D <= dmax; ++D) {
        if (sig.real_quadratic() && D <= 0) continue;
        if (sig.imaginary_quadratic() && D >= 0) continue;
        if (is_fundamental(D)) out.push_back(D);
    }
    std::sort(out.begin(), out.end(),
              [](i64 a, i64 b) { return std::llabs(a) < std::llabs(b); });
    return out;
}

int kronecker_chi(i64 D, u64 n) { return arith::kronecker(D, n); }

int roots_of_unity(i64 D) { return D == -3 ? 6 : D == -4 ? 4 : 2; }

// ---------------------------------------------------------------------------
// Class numbers via binary quadratic forms.
// ---------------------------------------------------------------------------

namespace {

i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)); }

// D < 0: reduced primitive forms (a,b,c), |b| <= a <= c, b >= 0 if |b|=a or a=c.
i64 imaginary_form_count(i64 D) {
    i64 q = -D;
    i64 h = 0;
    for (i64 b = (q & 1); 3 * b * b <= q; b += 2) {
        i64 N4 = b * b + q;  // 4ac
        if (N4 % 4 != 0) continue;
        i64 N = N4 / 4;
        for (i64 a = std::max<i64>(b, 1); a * a <= N; ++a) {
            if (N % a) continue;
            i64 c = N / a;
            if (gcd3(a, b, c) != 1) continue;
            h += (b == 0 || b == a || a == c) ? 1 : 2;
        }
    }
    return h;
}

struct Form {
    i64 a, b, c;
    bool operator<(const Form& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
};

// D > 0: (a,b,c) reduced iff 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
std::vector<Form> reduced_indefinite_forms(i64 D) {
    std::vector<Form> out;
    i64 s = isqrt_floor((u64)D);
    for (i64 b = 1 + ((D & 1) ^ 1); b <= s; b += 2) {
        i64 N4 = D - b * b;  // = -4ac > 0
        if (N4 <= 0 || N4 % 4 != 0) continue;
        i64 N = N4 / 4;  // |a c|
        // window sqrt(D) - b < 2|a| < sqrt(D) + b, tested exactly:
        //   sqrtD - b < 2a  <=>  D < (2a + b)^2
        //   2a < sqrtD + b  <=>  2a <= b or (2a - b)^2 < D
        for (i64 aa = std::max<i64>(1, (s - b) / 2); aa <= N; ++aa) {
            i64 two_a = 2 * aa;
            bool left = (i64)(two_a + b) * (two_a + b) > D;
            bool right = (two_a <= b) || ((i64)(two_a - b) * (two_a - b) < D);
            if (!left || !right) {
                if (left && !right) break;  // 2a grew past the window
                continue;
            }
            if (N % aa) continue;
            i64 cc = N / aa;
            // ac = -N: forms (a, b, -c) and (-a, b, c)
            if (gcd3(aa, b, cc) == 1) {
                out.push_back({aa, b, -cc});
                out.push_back({-aa, b, cc});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// reduction-step permutation rho on reduced indefinite forms
Form rho(const Form& f, i64 D, i64 s /* floor(sqrt D) */) {
    i64 a2 = f.c;
    i64 m = 2 * std::llabs(a2);
    // b' = the unique value = -b (mod 2|c|) inside (sqrt D - 2|c|, sqrt D)
    i64 b2 = ((-f.b) % m + m) % m;
    i64 d = ((s - b2) % m + m) % m;
    b2 = s - d;
    if (b2 <= 0) throw InternalConsistencyError("rho produced nonpositive b");
    i64 c2 = (b2 * b2 - D) / (4 * a2);
    return {a2, b2, c2};
}

i64 indefinite_cycle_count(i64 D) {
    auto forms = reduced_indefinite_forms(D);
    i64 s = isqrt_floor((u64)D);
    std::map<Form, int> index;
    for (size_t i = 0; i < forms.size(); ++i) index[forms[i]] = (int)i;
    std::vector<char> seen(forms.size(), 0);
    i64 cycles = 0;
    for (size_t i = 0; i < forms.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        Form f = forms[i];
        while (true) {
            auto it = index.find(f);
            if (it == index.end()) throw InternalConsistencyError("rho left the reduced set");
            if (seen[it->second]) break;
            seen[it->second] = 1;
            f = rho(f, D, s);
        }
    }
    return cycles;
}

}  // namespace

i64 narrow_class_number(i64 D) {
    if (D <= 0 || !is_fundamental(D)) throw DomainError("narrow_class_number: need fundamental D > 0");
    return indefinite_cycle_count(D);
}

i64 class_number(i64 D) {
    if (!is_fundamental(D)) throw DomainError("class_number: D not fundamental");
    if (D < 0) return imaginary_form_count(D);
    i64 hplus = indefinite_cycle_count(D);
    int ns = fundamental_unit(D).norm_sign;
    if (ns == -1) return hplus;
    if (hplus % 2 != 0)
        throw InternalConsistencyError("narrow class number odd with norm +1 unit");
    return hplus / 2;
}

// ---------------------------------------------------------------------------
// Continued fractions: fundamental unit and regulator.
// alpha_0 = (P0 + sqrt(D))/2 with P0 = D mod 2; states (P,Q) with Q | D - P^2.
// The product of (P_k + sqrt(D))/Q_k over one period is the fundamental unit.
// ---------------------------------------------------------------------------

FundamentalUnit fundamental_unit(i64 D) {
    if (D <= 0 || !is_fundamental(D)) throw DomainError("fundamental_unit: need fundamental D > 0");
    i64 s = isqrt_floor((u64)D);
    i64 P = (D & 1), Q = 2;
    std::map<std::pair<i64, i64>, int> seen;
    std::vector<std::pair<i64, i64>> states;
    int cycle_start = -1;
    while (true) {
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen[key] = (int)states.size();
        states.push_back(key);
        if (Q <= 0) throw InternalConsistencyError("continued fraction: nonpositive Q");
        i64 a = (P + s) / Q;  // floor((P + sqrt D)/Q), Q > 0
        i64 P2 = a * Q - P;
        i64 Q2 = (D - P2 * P2) / Q;
        P = P2;
        Q = Q2;
        if ((int)states.size() > 10'000'000) throw SizeGuardError("continued fraction too long");
    }
    // unit = prod over the cycle of (P_k + sqrt D)/Q_k, accumulated exactly
    mpz_class up = 1, uq = 0, den = 1;  // (up + uq sqrt D)/den
    long double logsum = 0.0L;
    long double sqrtD = sqrtl((long double)D);
    for (size_t k = cycle_start; k < states.size(); ++k) {
        auto [Pk, Qk] = states[k];
        mpz_class np = up * (long)Pk + uq * (long)D;
        mpz_class nq = up + uq * (long)Pk;
        up = np;
        uq = nq;
        den *= (long)Qk;
        mpz_class g = gcd(gcd(up, uq), den);
        if (g > 1) {
            up /= g;
            uq /= g;
            den /= g;
        }
        logsum += logl(((long double)Pk + sqrtD) / (long double)Qk);
    }
    // normalize to (x + y sqrt D)/2
    mpz_class x = up * 2, y = uq * 2;
    if (x % den != 0 || y % den != 0)
        throw InternalConsistencyError("fundamental unit not in (x + y sqrt D)/2 form");
    x /= den;
    y /= den;
    mpz_class pell = x * x - (long)D * y * y;
    if (pell != 4 && pell != -4)
        throw InternalConsistencyError("Pell identity x^2 - D y^2 = +-4 violated");
    FundamentalUnit u;
    u.x = x;
    u.y = y;
    u.norm_sign = pell == 4 ? 1 : -1;
    double err = 4e-19 * (double)(states.size() - cycle_start) *
                     std::max(1.0, (double)logsum) +
                 1e-15;
    u.regulator = CertifiedReal((double)logsum, err);
    return u;
}

i64 different_norm_product(i64 D) {
    if (!is_fundamental(D)) throw DomainError("different_norm_product: D not fundamental");
    i64 q = D < 0 ? -D : D;
    i64 prod = 1;
    // odd ramified primes are tame: N(partial_v) = p
    i64 m = q;
    int v2 = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++v2;
    }
    for (auto [p, e] : arith::factor(m)) {
        (void)e;
        prod *= p;
    }
    // p = 2: wild, local different exponent = v_2(D)
    for (int i = 0; i < v2; ++i) prod *= 2;
    return prod;
}

i64 char_sum_S(i64 D) {
    if (D >= 0) throw DomainError("char_sum_S: need D < 0");
    i64 q = -D;
    auto chi = arith::chi_table(D);
    i64 S = 0;
    for (i64 a = 1; a < q; ++a) S += a * (i64)chi[a];
    return S;
}

FieldInvariants field_invariants(i64 D, InvariantOptions opt) {
    if (!is_fundamental(D)) throw DomainError("field_invariants: D not fundamental");
    i64 q = D < 0 ? -D : D;
    if (q < 3) throw DomainError("field_invariants: need |D| >= 3");
    FieldInvariants inv;
    inv.D = D;
    inv.sig = signature_of_disc(D);
    inv.w = roots_of_unity(D);
    const double pi = std::numbers::pi;
    if (D < 0) {
        inv.h = imaginary_form_count(D);
        i64 S = char_sum_S(D);
        // finite character sum: L(1) = pi * (-S) / |D|^{3/2}
        double L1s = pi * (double)(-S) / std::pow((double)q, 1.5);
        CertifiedReal L1_sum(L1s, std::abs(L1s) * 1e-14 + 1e-300);
        if (opt.two_path_check) {
            // exact integer identity h = -w S / (2|D|) (class number formula)
            if ((i128)inv.w * (-S) != (i128)2 * q * inv.h)
                throw InternalConsistencyError(
                    "class number formula mismatch at D = " + std::to_string(D));
        }
        inv.R = CertifiedReal(0.0, 0.0);
        inv.L1 = L1_sum;
    } else {
        inv.h = class_number(D);
        auto u = fundamental_unit(D);
        inv.R = u.regulator;
        CertifiedReal sqrtD = csqrt(CertifiedReal((double)D, 0.0));
        CertifiedReal L1_cnf = (2.0 * (double)inv.h) * inv.R / sqrtD;
        if (opt.two_path_check) {
            CertifiedReal L1_ind = lfun::dirichlet_L(D, 1.0, 1e-10);
            double gap = std::abs(L1_cnf.value - L1_ind.value);
            if (gap > 1e-9 + L1_cnf.abs_error + L1_ind.abs_error)
                throw InternalConsistencyError("L(1) two-path disagreement at D = " +
                                               std::to_string(D));
        }
        inv.L1 = L1_cnf;
    }
    if (opt.with_zeta2) inv.zeta2 = lfun::zeta_F_at_2(D, 1e-9);
    return inv;
}

}  // namespace qfscan::fields
