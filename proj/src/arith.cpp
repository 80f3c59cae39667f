#include "zp/arith.hpp"

#include "zp/error.hpp"

namespace zp {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::Precondition, "cannot factor 0");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> prime_power_parts(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto [p, k] : factorize(n)) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    out.push_back(q);
  }
  return out;
}

bool is_prime_power(std::uint64_t n) { return n >= 2 && factorize(n).size() == 1; }

bool is_bth_power_free(std::uint64_t n, unsigned b) {
  if (b < 2) throw Error(ErrorCode::Precondition, "b must be at least 2");
  if (n == 0) return false;
  for (auto [p, k] : factorize(n)) {
    if (k >= b) return false;
  }
  return true;
}

}  // namespace zp
