#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace zp {

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Prime-power parts q_i = p_i^k_i of n, ascending by prime.
std::vector<std::uint64_t> prime_power_parts(std::uint64_t n);

bool is_prime_power(std::uint64_t n);

/// True iff no prime p has p^b | n.
bool is_bth_power_free(std::uint64_t n, unsigned b);

}  // namespace zp
