#pragma once

// Independent reference computations. Nothing here calls into the library's
// algorithms; inputs are plain integer or rational tables.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace zp::oracle {

using IntTable = std::vector<std::vector<mpz_class>>;
using RatTable = std::vector<std::vector<mpq_class>>;

/// Laplace expansion along the first row.
template <class T>
T cofactor_det(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  if (n == 1) return m[0][0];
  T total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<T>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<T> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    const T term = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : T(-term);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1},
/// D_k = gcd of all k×k minors.
inline std::vector<mpz_class> minor_gcd_chain(const IntTable& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  const std::size_t r = std::min(rows, cols);
  std::vector<mpz_class> det_div(r + 1, 0);
  det_div[0] = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(rows, k, rs);
    subsets(cols, k, cs);
    mpz_class g = 0;
    for (const auto& ri : rs) {
      for (const auto& ci : cs) {
        IntTable sub(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[ri[i]][ci[j]];
        mpz_class d = cofactor_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    }
    det_div[k] = g;
  }
  std::vector<mpz_class> out;
  for (std::size_t k = 1; k <= r; ++k) {
    if (det_div[k] == 0) {
      out.push_back(0);
    } else {
      out.push_back(det_div[k] / det_div[k - 1]);
    }
  }
  return out;
}

/// max(denominator, |det · denominator^n|) evaluated entry by entry.
inline mpz_class complexity_formula(const RatTable& m) {
  mpz_class den = 1;
  for (const auto& row : m)
    for (const auto& x : row) den = std::max(den, mpz_class(x.get_den()));
  const mpq_class det = cofactor_det(m);
  mpq_class scaled = det;
  for (std::size_t i = 0; i < m.size(); ++i) scaled *= den;
  const mpq_class mag = abs(scaled);
  if (mag.get_den() != 1) return -1;  // formula is integral on similitudes
  return std::max(den, mpz_class(mag.get_num()));
}

/// Sublattices of Z² of index n, counted through their HNF bases
/// rows (a, b), (0, d) with ad = n, 0 <= b < d. With cyclic_only, keeps those
/// with Z²/L cyclic (gcd(a, b, d) = 1).
inline std::uint64_t count_z2_sublattices(std::uint64_t n, bool cyclic_only) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a <= n; ++a) {
    if (n % a) continue;
    const std::uint64_t d = n / a;
    for (std::uint64_t b = 0; b < d; ++b) {
      if (cyclic_only && std::gcd(std::gcd(a, b), d) != 1) continue;
      ++count;
    }
  }
  return count;
}

/// Lagrangian (2-dimensional isotropic) subspaces of F_p^4 for the form
/// x1 y3 + x2 y4 - x3 y1 - x4 y2, by enumerating spanning pairs.
inline std::uint64_t count_lagrangians_fp4(unsigned p) {
  auto form = [p](const std::vector<unsigned>& x, const std::vector<unsigned>& y) {
    const long v = static_cast<long>(x[0] * y[2] + x[1] * y[3]) - static_cast<long>(x[2] * y[0] + x[3] * y[1]);
    return ((v % static_cast<long>(p)) + p) % p;
  };
  std::vector<std::vector<unsigned>> vecs;
  const unsigned total = p * p * p * p;
  for (unsigned code = 1; code < total; ++code) {
    std::vector<unsigned> v(4);
    unsigned c = code;
    for (auto& e : v) {
      e = c % p;
      c /= p;
    }
    vecs.push_back(v);
  }
  std::set<std::vector<unsigned>> planes;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    for (std::size_t j = i + 1; j < vecs.size(); ++j) {
      if (form(vecs[i], vecs[j]) != 0) continue;
      std::set<unsigned> span;
      for (unsigned s = 0; s < p; ++s) {
        for (unsigned t = 0; t < p; ++t) {
          unsigned code = 0, mul = 1;
          for (std::size_t k = 0; k < 4; ++k) {
            code += ((s * vecs[i][k] + t * vecs[j][k]) % p) * mul;
            mul *= p;
          }
          span.insert(code);
        }
      }
      if (span.size() != static_cast<std::size_t>(p) * p) continue;
      planes.insert(std::vector<unsigned>(span.begin(), span.end()));
    }
  }
  return planes.size();
}

/// |SL_2(Z/q)| by counting all q^4 matrices with ad - bc ≡ 1.
inline std::uint64_t brute_sl2_order(unsigned q) {
  std::uint64_t count = 0;
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      for (unsigned c = 0; c < q; ++c)
        for (unsigned d = 0; d < q; ++d)
          if ((a * d + q * q - (b * c) % (q * q)) % q == 1 % q) ++count;
  return count;
}

/// |Sp_4(F_2)| by testing MᵀJM = J on all 2^16 matrices.
inline std::uint64_t brute_sp4_f2_order() {
  std::uint64_t count = 0;
  for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
    unsigned m[4][4];
    for (int i = 0; i < 16; ++i) m[i / 4][i % 4] = (bits >> i) & 1u;
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      for (int j = 0; j < 4 && ok; ++j) {
        // (MᵀJM)_ij = sum_k M_ki (JM)_kj, (JM)_kj = M_{k+2,j} for k < 2, -M_{k-2,j} otherwise.
        unsigned s = 0;
        for (int k = 0; k < 4; ++k) s += m[k][i] * (k < 2 ? m[k + 2][j] : m[k - 2][j]);
        const unsigned want = (j == i + 2 || i == j + 2) ? 1u : 0u;
        if ((s & 1u) != want) ok = false;
      }
    }
    if (ok) ++count;
  }
  return count;
}

/// min |∂X|/|X| over 0 < |X| <= n/2 for an adjacency list with multiplicity.
inline double brute_edge_expansion(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  double best = 1e300;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (2 * size > n) continue;
    std::size_t cut = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!((mask >> v) & 1u)) continue;
      for (std::size_t w : adj[v])
        if (!((mask >> w) & 1u)) ++cut;
    }
    best = std::min(best, static_cast<double>(cut) / static_cast<double>(size));
  }
  return best;
}

/// Cayley graph of SL_2(Z/q) for S, S^-1, T, T^-1, built from a fresh enumeration.
inline std::vector<std::vector<std::size_t>> sl2_cayley_adjacency(unsigned q) {
  using M = std::array<unsigned, 4>;
  auto mul = [q](const M& x, const M& y) {
    return M{(x[0] * y[0] + x[1] * y[2]) % q, (x[0] * y[1] + x[1] * y[3]) % q, (x[2] * y[0] + x[3] * y[2]) % q,
             (x[2] * y[1] + x[3] * y[3]) % q};
  };
  std::vector<M> elems;
  for (unsigned code = 0; code < q * q * q * q; ++code) {
    M m{code % q, (code / q) % q, (code / (q * q)) % q, code / (q * q * q)};
    if ((m[0] * m[3] + q * q - (m[1] * m[2]) % (q * q)) % q == 1 % q) elems.push_back(m);
  }
  const std::vector<M> gens{M{0, q - 1, 1, 0}, M{0, 1, q - 1, 0}, M{1, 1, 0, 1}, M{1, q - 1, 0, 1}};
  std::vector<std::vector<std::size_t>> adj(elems.size());
  for (std::size_t v = 0; v < elems.size(); ++v) {
    for (const auto& s : gens) {
      const M w = mul(elems[v], s);
      adj[v].push_back(static_cast<std::size_t>(std::find(elems.begin(), elems.end(), w) - elems.begin()));
    }
  }
  return adj;
}

}  // namespace zp::oracle
