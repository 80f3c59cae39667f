#pragma once

// Shared fixtures for the test binaries. Random inputs come from raw
// mt19937_64 output so the streams are identical on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "zp/elemdiv.hpp"
#include "zp/symplectic.hpp"

namespace zp::testing {

using Rng = std::mt19937_64;

inline std::uint64_t pick(Rng& rng, std::uint64_t n) { return rng() % n; }

inline long pick_range(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline RatMatrix ints(std::size_t rows, std::size_t cols, const std::vector<long>& v) {
  return RatMatrix::from_ints(rows, cols, v);
}

inline SimilitudeElement elem(std::string_view text) { return SimilitudeElement::parse(text); }

inline SimilitudeElement diag_elem(const std::vector<long>& d) {
  std::vector<Rat> r(d.begin(), d.end());
  return SimilitudeElement(RatMatrix::diagonal(r));
}

/// Product of `len` uniformly chosen standard generators.
inline SimilitudeElement random_gamma_word(std::size_t g, std::size_t len, Rng& rng) {
  static thread_local std::vector<GeneratorSet> cache;
  while (cache.size() < g) cache.push_back(standard_generators(cache.size() + 1));
  const GeneratorSet& gens = cache[g - 1];
  SimilitudeElement x = SimilitudeElement::identity(g);
  for (std::size_t i = 0; i < len; ++i) x = x * gens[pick(rng, gens.size())];
  return x;
}

struct DivisorChain {
  std::vector<long> a;
  std::vector<long> b;
  long nu;
};

/// Every chain a_1 | ... | a_g | b_g with a_i b_i = nu, for nu in [1, nu_max].
inline std::vector<DivisorChain> all_chains(std::size_t g, long nu_max) {
  std::vector<DivisorChain> out;
  for (long nu = 1; nu <= nu_max; ++nu) {
    std::vector<long> a;
    auto rec = [&](auto&& self) -> void {
      if (a.size() == g) {
        const long ag = a.back();
        if ((nu / ag) % ag != 0) return;
        DivisorChain c{a, {}, nu};
        for (long ai : a) c.b.push_back(nu / ai);
        out.push_back(c);
        return;
      }
      for (long d = 1; d <= nu; ++d) {
        if (nu % d != 0) continue;
        if (!a.empty() && d % a.back() != 0) continue;
        a.push_back(d);
        self(self);
        a.pop_back();
      }
    };
    rec(rec);
  }
  return out;
}

inline SimilitudeElement chain_delta(const DivisorChain& c) {
  std::vector<long> d = c.a;
  d.insert(d.end(), c.b.begin(), c.b.end());
  return diag_elem(d);
}

struct BuiltInput {
  SimilitudeElement m;
  DivisorChain chain;
};

/// The 500-case κ₀δ₀λ₀ suite: g alternates 1, 2; words of length <= 12; nu <= 36.
inline std::vector<BuiltInput> elemdiv_suite(std::uint64_t seed = 20240601, std::size_t count = 500) {
  Rng rng(seed);
  const auto chains1 = all_chains(1, 36);
  const auto chains2 = all_chains(2, 36);
  std::vector<BuiltInput> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t g = 1 + i % 2;
    const auto& pool = g == 1 ? chains1 : chains2;
    const DivisorChain& c = pool[pick(rng, pool.size())];
    const auto kappa = random_gamma_word(g, pick(rng, 13), rng);
    const auto lambda = random_gamma_word(g, pick(rng, 13), rng);
    out.push_back({kappa * chain_delta(c) * lambda, c});
  }
  return out;
}

}  // namespace zp::testing
