#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qfscan {

using i64 = long long;
using i128 = __int128_t;
using u64 = unsigned long long;

// ---------------------------------------------------------------------------
// Errors. Each failure mode named in the module contracts gets its own type
// so callers (and tests) can tell them apart.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
struct UnsupportedDegreeError : Error {
    using Error::Error;
};
struct UnsupportedRegimeError : Error {
    using Error::Error;
};
struct SizeGuardError : Error {
    using Error::Error;
};
struct InternalConsistencyError : Error {
    using Error::Error;
};
struct RegularityError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct NotInFieldError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Signature (r1, r2), degree d = r1 + 2 r2.
// ---------------------------------------------------------------------------

struct Signature {
    int r1 = 0;
    int r2 = 0;

    constexpr int degree() const { return r1 + 2 * r2; }
    constexpr bool real_quadratic() const { return r1 == 2 && r2 == 0; }
    constexpr bool imaginary_quadratic() const { return r1 == 0 && r2 == 1; }
    bool operator==(const Signature&) const = default;
};

inline Signature signature_of_disc(i64 D) {
    return D > 0 ? Signature{2, 0} : Signature{0, 1};
}

// ---------------------------------------------------------------------------
// Group dispatch. The two exponent packs used throughout.
// ---------------------------------------------------------------------------

enum class GroupKind { GL2, SL2 };

inline const char* group_name(GroupKind g) { return g == GroupKind::GL2 ? "GL2" : "SL2"; }

// character-count exponent in the spectral term (h_F^{a_G})
inline int a_G(GroupKind g) { return g == GroupKind::GL2 ? 2 : 1; }
// modulus exponent in the unipotent substitution (delta_0(t(b)) = |b|^{beta_G})
inline int beta_G(GroupKind g) { return g == GroupKind::GL2 ? 1 : 2; }
// torus truncation factor
inline double delta_torus(GroupKind g) { return g == GroupKind::GL2 ? 2.0 : 1.0; }
// spectral remainder exponent (remainder << nu^{-delta+eps})
inline double delta_spectral(GroupKind g) { return g == GroupKind::GL2 ? 0.5 : 2.0 / 3.0; }
// overall effective exponent from the introduction (nu^{1-delta'+eps})
inline double delta_overall(GroupKind g) { return g == GroupKind::GL2 ? 0.25 : 1.0 / 3.0; }
// vol(K_f) = |D|^{-e}
inline double vol_Kf_exponent(GroupKind g) { return g == GroupKind::GL2 ? 1.5 : 1.0; }

// ---------------------------------------------------------------------------
// CertifiedReal: (value, certified absolute error), conservative propagation.
// ---------------------------------------------------------------------------

struct CertifiedReal {
    double value = 0.0;
    double abs_error = 0.0;

    CertifiedReal() = default;
    CertifiedReal(double v, double e = 0.0) : value(v), abs_error(e) {}

    static CertifiedReal exact(double v) { return {v, 0.0}; }

    double lo() const { return value - abs_error; }
    double hi() const { return value + abs_error; }
    bool contains(double x) const { return lo() <= x && x <= hi(); }
};

namespace detail {
inline double ulp_slack(double v) { return std::abs(v) * 2.3e-16 + 1e-300; }
}  // namespace detail

inline CertifiedReal operator+(CertifiedReal a, CertifiedReal b) {
    double v = a.value + b.value;
    return {v, a.abs_error + b.abs_error + detail::ulp_slack(v)};
}
inline CertifiedReal operator-(CertifiedReal a, CertifiedReal b) {
    double v = a.value - b.value;
    return {v, a.abs_error + b.abs_error + detail::ulp_slack(v)};
}
inline CertifiedReal operator*(CertifiedReal a, CertifiedReal b) {
    double v = a.value * b.value;
    double e = std::abs(a.value) * b.abs_error + std::abs(b.value) * a.abs_error +
               a.abs_error * b.abs_error + detail::ulp_slack(v);
    return {v, e};
}
inline CertifiedReal operator/(CertifiedReal a, CertifiedReal b) {
    if (b.value == 0.0 || std::abs(b.value) <= b.abs_error)
        throw DomainError("certified division by interval containing zero");
    double v = a.value / b.value;
    double denom = std::abs(b.value) - b.abs_error;
    double e = (a.abs_error + std::abs(v) * b.abs_error) / denom + detail::ulp_slack(v);
    return {v, e};
}
inline CertifiedReal operator*(double c, CertifiedReal a) { return CertifiedReal(c) * a; }
inline CertifiedReal operator*(CertifiedReal a, double c) { return a * CertifiedReal(c); }

inline CertifiedReal csqrt(CertifiedReal a) {
    if (a.value < 0) throw DomainError("certified sqrt of negative value");
    double v = std::sqrt(a.value);
    // sqrt is concave: the low side dominates, |sqrt(c) - sqrt(c-e)| = e/(sqrt c + sqrt(c-e))
    double lo_root = std::sqrt(std::max(0.0, a.lo()));
    double e = (v + lo_root) > 0 ? a.abs_error / (v + lo_root) : 0.0;
    return {v, e + detail::ulp_slack(v)};
}
inline CertifiedReal clog(CertifiedReal a) {
    if (a.lo() <= 0) throw DomainError("certified log of non-positive interval");
    double v = std::log(a.value);
    double e = a.abs_error / a.lo();
    return {v, e + detail::ulp_slack(v)};
}

// ---------------------------------------------------------------------------
// QuadInteger: a + b*omega with omega = (D + sqrt(D))/2, the standard
// generator of O_F for a fundamental discriminant D.  trace(omega) = D,
// norm(omega) = D(D-1)/4.
// ---------------------------------------------------------------------------

struct QuadInteger {
    i64 D = 0;  // fundamental discriminant of the home ring
    i64 a = 0;
    i64 b = 0;

    bool is_rational() const { return b == 0; }

    i128 trace() const { return 2 * (i128)a + (i128)b * D; }
    i128 norm() const {
        // N(a + b omega) = a^2 + a b D + b^2 D(D-1)/4
        i128 quarter = (i128)D * (D - 1) / 4;
        return (i128)a * a + (i128)a * b * D + (i128)b * b * quarter;
    }
    QuadInteger conj() const {
        // conjugate of a + b omega is (a + bD) - b omega
        return {D, a + b * D, -b};
    }
    QuadInteger operator+(const QuadInteger& o) const { return {D, a + o.a, b + o.b}; }
    QuadInteger operator-(const QuadInteger& o) const { return {D, a - o.a, b - o.b}; }
    QuadInteger operator-() const { return {D, -a, -b}; }
    QuadInteger operator*(const QuadInteger& o) const {
        // omega^2 = D*omega - D(D-1)/4
        i64 n4 = D * (D - 1) / 4;
        return {D, a * o.a - b * o.b * n4, a * o.b + b * o.a + b * o.b * D};
    }
    bool operator==(const QuadInteger&) const = default;
};

inline QuadInteger quad_rational(i64 D, i64 n) { return {D, n, 0}; }
// the element u + v*sqrt(D) with u, v integers (v*sqrt(D) = v*(2*omega - D)/2; needs parity fix)
// represent x = (p + q*sqrt(D))/2 with p = q*D mod 2: x = (p - q*D)/2 + q*omega
inline QuadInteger quad_half(i64 D, i64 p, i64 q) {
    // (p + q*sqrt(D))/2, valid when p and q*D have equal parity
    if (((p - q * D) % 2 + 2) % 2 != 0) throw DomainError("quad_half: parity mismatch");
    return {D, (p - q * D) / 2, q};
}

// ---------------------------------------------------------------------------
// BoundReport: one verified inequality.
// ---------------------------------------------------------------------------

struct BoundReport {
    std::string label;
    CertifiedReal computed;
    CertifiedReal bound;
    double ratio = 0.0;
    bool pass = false;
    i64 disc = 0;
    GroupKind group = GroupKind::SL2;
    bool applicable = true;       // false: out-of-domain (e.g. |D| < 5 gates)
    bool experimental = false;    // excluded from scan exit-code aggregation
    std::string note;

    static BoundReport make(std::string label, CertifiedReal computed, CertifiedReal bound,
                            i64 disc, GroupKind g) {
        BoundReport r;
        r.label = std::move(label);
        r.computed = computed;
        r.bound = bound;
        r.disc = disc;
        r.group = g;
        r.pass = computed.value - computed.abs_error <= bound.value + bound.abs_error;
        r.ratio = bound.value != 0.0 ? computed.value / bound.value
                                     : (computed.value == 0.0 ? 0.0 : INFINITY);
        return r;
    }
    static BoundReport out_of_domain(std::string label, i64 disc, GroupKind g, std::string why) {
        BoundReport r;
        r.label = std::move(label);
        r.disc = disc;
        r.group = g;
        r.applicable = false;
        r.pass = true;
        r.note = std::move(why);
        return r;
    }
};

}  // namespace qfscan
