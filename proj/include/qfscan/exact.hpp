#pragma once

#include <cstdlib>
#include <numeric>
#include <string>

#include "qfscan/types.hpp"

namespace qfscan {

// Exact rational arithmetic on __int128.  Values in the lattice/ball checks
// stay tiny (scales with small denominators, Gram entries bounded by |D| and
// R^2), so overflow is a guarded internal error rather than a real path.

inline i128 iabs(i128 x) { return x < 0 ? -x : x; }

inline i128 igcd(i128 a, i128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline void check_mul(i128 a, i128 b) {
    if (a != 0 && iabs(b) > iabs((i128)1 << 100) / (iabs(a) + 1))
        throw SizeGuardError("exact rational overflow guard");
}

struct Rational {
    i128 num = 0;
    i128 den = 1;

    Rational() = default;
    Rational(i64 n) : num(n), den(1) {}
    Rational(i128 n, i128 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw DomainError("rational with zero denominator");
        if (den < 0) {
            den = -den;
            num = -num;
        }
        i128 g = igcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    Rational operator+(const Rational& o) const {
        check_mul(num, o.den);
        check_mul(o.num, den);
        return Rational(num * o.den + o.num * den, den * o.den);
    }
    Rational operator-(const Rational& o) const {
        check_mul(num, o.den);
        check_mul(o.num, den);
        return Rational(num * o.den - o.num * den, den * o.den);
    }
    Rational operator*(const Rational& o) const {
        check_mul(num, o.num);
        check_mul(den, o.den);
        return Rational(num * o.num, den * o.den);
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw DomainError("rational division by zero");
        check_mul(num, o.den);
        check_mul(den, o.num);
        return Rational(num * o.den, den * o.num);
    }
    Rational operator-() const { return Rational(-num, den); }
    int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const Rational& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const Rational& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const Rational& o) const { return (*this - o).sign() >= 0; }

    double to_double() const { return (double)num / (double)den; }
};

inline i128 ifloor(const Rational& r) {
    i128 q = r.num / r.den;
    if (r.num % r.den != 0 && r.num < 0) --q;
    return q;
}

// Elements of Q(sqrt(D)) as u + v*sqrt(D) with rational u, v; exact sign.
struct QuadRat {
    i64 D = 1;
    Rational u;
    Rational v;

    QuadRat() = default;
    QuadRat(i64 D_, Rational u_, Rational v_ = Rational(0)) : D(D_), u(u_), v(v_) {}

    QuadRat operator+(const QuadRat& o) const { return {D, u + o.u, v + o.v}; }
    QuadRat operator-(const QuadRat& o) const { return {D, u - o.u, v - o.v}; }
    QuadRat operator*(const QuadRat& o) const {
        return {D, u * o.u + v * o.v * Rational(D), u * o.v + v * o.u};
    }
    QuadRat scale(const Rational& c) const { return {D, u * c, v * c}; }

    // sign of u + v*sqrt(D), D > 0 (exact)
    int sign() const {
        if (D <= 0) {
            if (v.sign() != 0) throw DomainError("sign of non-real quadratic value");
            return u.sign();
        }
        int su = u.sign(), sv = v.sign();
        if (sv == 0) return su;
        if (su == 0) return sv;
        if (su == sv) return su;
        // compare u^2 vs v^2 D; sign decided by the larger magnitude side
        Rational lhs = u * u, rhs = v * v * Rational(D);
        int c = (lhs - rhs).sign();
        if (c == 0) return 0;
        // |u| dominates iff u^2 > v^2 D
        return c > 0 ? su : sv;
    }
    bool operator<=(const QuadRat& o) const { return (*this - o).sign() <= 0; }
    bool operator<(const QuadRat& o) const { return (*this - o).sign() < 0; }
    bool operator>(const QuadRat& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const QuadRat& o) const { return (*this - o).sign() >= 0; }
    bool is_zero() const { return u.sign() == 0 && v.sign() == 0; }

    double to_double() const {
        if (v.sign() == 0) return u.to_double();
        return u.to_double() + v.to_double() * std::sqrt((double)D);
    }
};

inline i64 isqrt_floor(u64 n) {
    if (n == 0) return 0;
    u64 r = (u64)std::sqrt((double)n);
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return (i64)r;
}

inline i128 isqrt_floor128(i128 n) {
    if (n < 0) throw DomainError("isqrt of negative");
    if (n == 0) return 0;
    i128 r = (i128)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(i128 n, i128* root = nullptr) {
    if (n < 0) return false;
    i128 r = isqrt_floor128(n);
    if (root) *root = r;
    return r * r == n;
}

inline std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    if (neg) v = -v;
    std::string s;
    while (v) {
        s.push_back(char('0' + (int)(v % 10)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

}  // namespace qfscan
