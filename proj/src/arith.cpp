#include "qfscan/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace qfscan::arith {

int kronecker(i64 a, u64 n) {
    if (n == 0) throw DomainError("kronecker: n = 0");
    int result = 1;
    // 2-part of n: (a|2) = 0 for even a, else +1 iff a = +-1 mod 8
    if ((n & 1) == 0) {
        if ((a & 1) == 0) return 0;
        int t = 0;
        while ((n & 1) == 0) {
            n >>= 1;
            t ^= 1;
        }
        if (t) {
            i64 m = ((a % 8) + 8) % 8;
            if (m == 3 || m == 5) result = -result;
        }
    }
    if (n == 1) return result;
    // Jacobi (a|n) for odd n > 1; periodic in a mod n
    u64 ua = (u64)(((a % (i64)n) + (i64)n) % (i64)n);
    u64 un = n;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            u64 m = un % 8;
            if (m == 3 || m == 5) result = -result;
        }
        std::swap(ua, un);
        if ((ua & 3) == 3 && (un & 3) == 3) result = -result;
        ua %= un;
    }
    return un == 1 ? result : 0;
}

namespace {
std::shared_ptr<const std::vector<int32_t>> g_primes =
    std::make_shared<const std::vector<int32_t>>();
i64 g_sieved_upto = 0;
std::mutex g_prime_mutex;
}  // namespace

std::shared_ptr<const std::vector<int32_t>> primes_upto(i64 n) {
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    if (n > g_sieved_upto) {
        i64 limit = std::max<i64>(n, std::max<i64>(2 * g_sieved_upto, 1 << 16));
        if (limit > (i64)2e8) throw SizeGuardError("prime sieve limit exceeded");
        std::vector<bool> comp(limit + 1, false);
        auto ps = std::make_shared<std::vector<int32_t>>();
        for (i64 i = 2; i <= limit; ++i) {
            if (!comp[i]) {
                ps->push_back((int32_t)i);
                for (i64 j = i * i; j <= limit; j += i) comp[j] = true;
            }
        }
        g_primes = std::move(ps);
        g_sieved_upto = limit;
    }
    return g_primes;
}

std::vector<int8_t> chi_table(i64 D) {
    i64 q = D < 0 ? -D : D;
    if (q < 2) throw DomainError("chi_table: |D| >= 2 required");
    if (q > (i64)5e7) throw SizeGuardError("chi_table: modulus too large");
    std::vector<int8_t> chi(q, 0);
    chi[1] = 1;
    // smallest prime factor sieve over [2, q)
    std::vector<int32_t> spf(q, 0);
    {
        auto ps = primes_upto(q);
        for (int32_t p : *ps) {
            if ((i64)p >= q) break;
            for (i64 j = p; j < q; j += p)
                if (!spf[j]) spf[j] = p;
        }
    }
    for (i64 n = 2; n < q; ++n) {
        i64 p = spf[n];
        if (p == n)
            chi[n] = (int8_t)kronecker(D, (u64)n);
        else
            chi[n] = (int8_t)(chi[p] * chi[n / p]);
    }
    return chi;
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw DomainError("valuation of 0");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
    if (n <= 0) throw DomainError("factor: need n > 0");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

double trigamma(double x) {
    if (x <= 0) throw DomainError("trigamma: need x > 0");
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    // asymptotic series with Bernoulli numbers
    double inv = 1.0 / x, inv2 = inv * inv;
    double s = inv + 0.5 * inv2;
    double t = inv * inv2;  // 1/x^3
    s += t * (1.0 / 6.0);
    t *= inv2;
    s -= t * (1.0 / 30.0);
    t *= inv2;
    s += t * (1.0 / 42.0);
    t *= inv2;
    s -= t * (1.0 / 30.0);
    t *= inv2;
    s += t * (5.0 / 66.0);
    t *= inv2;
    s -= t * (691.0 / 2730.0);
    return acc + s;
}

}  // namespace qfscan::arith
