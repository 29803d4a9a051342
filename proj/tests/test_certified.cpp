#include <doctest.h>

#include <cmath>
#include <random>

#include "qfscan/exact.hpp"
#include "qfscan/types.hpp"

using namespace qfscan;

namespace {

// sample concrete values inside an interval
double pick(const CertifiedReal& a, double t) { return a.lo() + t * (a.hi() - a.lo()); }

}  // namespace

TEST_CASE("certified interval arithmetic is conservative") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> val(-50.0, 50.0);
    std::uniform_real_distribution<double> err(0.0, 0.25);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 5000; ++t) {
        CertifiedReal a(val(rng), err(rng));
        CertifiedReal b(val(rng), err(rng));
        double xa = pick(a, unit(rng)), xb = pick(b, unit(rng));
        CHECK((a + b).contains(xa + xb));
        CHECK((a - b).contains(xa - xb));
        CHECK((a * b).contains(xa * xb));
        if (std::abs(b.value) > b.abs_error + 1.0) CHECK((a / b).contains(xa / xb));
        if (a.lo() > 0.1) {
            CHECK(csqrt(a).contains(std::sqrt(xa)));
            CHECK(clog(a).contains(std::log(xa)));
        }
    }
    CHECK_THROWS_AS(CertifiedReal(1.0, 0.0) / CertifiedReal(0.0, 0.1), DomainError);
    CHECK_THROWS_AS(clog(CertifiedReal(0.5, 0.6)), DomainError);
    CHECK_THROWS_AS(csqrt(CertifiedReal(-1.0, 0.0)), DomainError);
}

TEST_CASE("exact rationals and quadratic values") {
    Rational a(3, 4), b(5, 6);
    CHECK(a + b == Rational(19, 12));
    CHECK(a * b == Rational(5, 8));
    CHECK(a / b == Rational(9, 10));
    CHECK(Rational(-6, -8) == Rational(3, 4));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(ifloor(Rational(-7, 2)) == -4);
    CHECK_THROWS_AS(Rational(1, 0), DomainError);

    // sign of u + v sqrt(D) decided exactly near cancellation
    QuadRat x(5, Rational(-9), Rational(4));   // -9 + 4 sqrt 5 = -0.0557...
    CHECK(x.sign() == -1);
    QuadRat y(5, Rational(9), Rational(-4));
    CHECK(y.sign() == 1);
    QuadRat z(2, Rational(-7, 5), Rational(1));  // sqrt 2 - 1.4 > 0
    CHECK(z.sign() == 1);
    CHECK(QuadRat(7, Rational(0), Rational(0)).sign() == 0);
    // rational-only sign works for any D, including negative markers
    CHECK(QuadRat(-4, Rational(-2), Rational(0)).sign() == -1);

    // multiplication stays exact: (1 + sqrt 5)(1 - sqrt 5) = -4
    QuadRat g(5, Rational(1), Rational(1)), gc(5, Rational(1), Rational(-1));
    QuadRat prod = g * gc;
    CHECK(prod.u == Rational(-4));
    CHECK(prod.v == Rational(0));
}

TEST_CASE("integer square root helpers") {
    for (u64 n : {0ULL, 1ULL, 2ULL, 3ULL, 4ULL, 24ULL, 25ULL, 26ULL, 999999ULL}) {
        i64 r = isqrt_floor(n);
        CHECK((u64)(r * r) <= n);
        CHECK((u64)((r + 1) * (r + 1)) > n);
    }
    i128 root = 0;
    CHECK(is_perfect_square((i128)144, &root));
    CHECK(root == 12);
    CHECK_FALSE(is_perfect_square((i128)145));
    CHECK_FALSE(is_perfect_square((i128)-4));
}
