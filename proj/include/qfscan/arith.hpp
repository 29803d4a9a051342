#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qfscan/types.hpp"

namespace qfscan::arith {

// Kronecker symbol (a|n), n >= 1.  n = 0 is a domain error.
int kronecker(i64 a, u64 n);

// primes up to at least n (cached snapshot; safe under concurrent growth)
std::shared_ptr<const std::vector<int32_t>> primes_upto(i64 n);

// chi_D(k) for k in [0, |D|); built multiplicatively, O(|D|) after the prime list
std::vector<int8_t> chi_table(i64 D);

// v_p(n)
int valuation(i64 n, i64 p);

// factorization of n > 0 by trial division (small n only)
std::vector<std::pair<i64, int>> factor(i64 n);

// trigamma psi_1(x) = sum_{k>=0} 1/(x+k)^2, x > 0; relative error ~ 1e-14
double trigamma(double x);

}  // namespace qfscan::arith
