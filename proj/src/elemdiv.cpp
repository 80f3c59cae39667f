#include "zp/elemdiv.hpp"

#include <exception>
#include <optional>
#include <string>

#include "zp/error.hpp"

namespace zp {

namespace {

// Elementary moves in Sp_2g(Z). Indices are 0-based pair indices i, j < g;
// i' = g + i.
RatMatrix move_upper(std::size_t g, std::size_t i, std::size_t j, const Int& k) {
  RatMatrix m = RatMatrix::identity(2 * g);
  m(i, g + j) = Rat(k);
  if (i != j) m(j, g + i) = Rat(k);
  return m;
}

RatMatrix move_lower(std::size_t g, std::size_t i, std::size_t j, const Int& k) {
  RatMatrix m = RatMatrix::identity(2 * g);
  m(g + i, j) = Rat(k);
  if (i != j) m(g + j, i) = Rat(k);
  return m;
}

RatMatrix move_gl(std::size_t g, std::size_t i, std::size_t j, const Int& k) {
  RatMatrix m = RatMatrix::identity(2 * g);
  m(i, j) = Rat(k);
  m(g + j, g + i) = Rat(Int(-k));
  return m;
}

RatMatrix move_pair_swap(std::size_t g, std::size_t i) {
  RatMatrix m = RatMatrix::identity(2 * g);
  m(i, i) = 0;
  m(g + i, g + i) = 0;
  m(i, g + i) = -1;
  m(g + i, i) = 1;
  return m;
}

RatMatrix move_perm(std::size_t g, std::size_t i, std::size_t j) {
  RatMatrix m = RatMatrix::identity(2 * g);
  for (std::size_t off : {std::size_t{0}, g}) {
    m(off + i, off + i) = 0;
    m(off + j, off + j) = 0;
    m(off + i, off + j) = 1;
    m(off + j, off + i) = 1;
  }
  return m;
}

// Invariant: input == kappa · cur · lambda.
class Reducer {
 public:
  explicit Reducer(const RatMatrix& m)
      : g_(m.rows() / 2), cur_(m), kappa_(RatMatrix::identity(2 * g_)), lambda_(RatMatrix::identity(2 * g_)) {}

  void run() {
    for (std::size_t p = 0; p < g_; ++p) reduce_pair(p);
  }

  const RatMatrix& current() const { return cur_; }
  const RatMatrix& kappa() const { return kappa_; }
  const RatMatrix& lambda() const { return lambda_; }

 private:
  void left(const RatMatrix& x, const RatMatrix& x_inv) {
    cur_ = x * cur_;
    kappa_ = kappa_ * x_inv;
  }
  void right(const RatMatrix& y, const RatMatrix& y_inv) {
    cur_ = cur_ * y;
    lambda_ = y_inv * lambda_;
  }

  const Int entry(std::size_t r, std::size_t c) const { return cur_(r, c).num(); }

  bool active(std::size_t idx, std::size_t p) const { return (idx % g_) >= p; }

  // Brings row r to row p by left moves.
  void row_to_pivot(std::size_t r, std::size_t p) {
    std::size_t i = r % g_;
    if (r >= g_) {
      auto s = move_pair_swap(g_, i);
      left(s, s.transpose());
    }
    if (i != p) {
      auto s = move_perm(g_, i, p);
      left(s, s);
    }
  }

  void col_to_pivot(std::size_t c, std::size_t p) {
    std::size_t i = c % g_;
    if (c >= g_) {
      auto s = move_pair_swap(g_, i);
      right(s, s.transpose());
    }
    if (i != p) {
      auto s = move_perm(g_, i, p);
      right(s, s);
    }
  }

  // row_r += k · row_p (plus harmless side effects inside the active block).
  void add_pivot_row_to(std::size_t r, std::size_t p, const Int& k) {
    const std::size_t j = r % g_;
    if (r < g_) {
      left(move_gl(g_, j, p, k), move_gl(g_, j, p, -k));
    } else {
      left(move_lower(g_, j, p, k), move_lower(g_, j, p, -k));
    }
  }

  // col_c += k · col_p.
  void add_pivot_col_to(std::size_t c, std::size_t p, const Int& k) {
    const std::size_t j = c % g_;
    if (c < g_) {
      right(move_gl(g_, p, j, k), move_gl(g_, p, j, -k));
    } else {
      right(move_upper(g_, p, j, k), move_upper(g_, p, j, -k));
    }
  }

  // row_p += row_r.
  void add_row_to_pivot(std::size_t r, std::size_t p) {
    const std::size_t j = r % g_;
    const Int one(1), minus_one(-1);
    if (r < g_) {
      left(move_gl(g_, p, j, one), move_gl(g_, p, j, minus_one));
    } else {
      left(move_upper(g_, p, j, one), move_upper(g_, p, j, minus_one));
    }
  }

  void reduce_pair(std::size_t p) {
    const std::size_t n = 2 * g_;
    const std::size_t pp = g_ + p;
    while (true) {
      // Smallest nonzero |entry| in the active block; ties by (row, col).
      bool found = false;
      std::size_t br = 0, bc = 0;
      Int best;
      for (std::size_t r = 0; r < n; ++r) {
        if (!active(r, p)) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (!active(c, p)) continue;
          const Int v = abs(entry(r, c));
          if (v == 0) continue;
          if (!found || v < best) {
            found = true;
            best = v;
            br = r;
            bc = c;
          }
        }
      }
      if (!found) throw Error(ErrorCode::NotSimilitude, "singular block during symplectic reduction");
      row_to_pivot(br, p);
      col_to_pivot(bc, p);

      bool clean = true;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == p || !active(r, p) || entry(r, p) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), entry(r, p).get_mpz_t(), entry(p, p).get_mpz_t());
        if (q != 0) add_pivot_row_to(r, p, -q);
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (c == p || !active(c, p) || entry(p, c) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), entry(p, c).get_mpz_t(), entry(p, p).get_mpz_t());
        if (q != 0) add_pivot_col_to(c, p, -q);
      }
      for (std::size_t r = 0; r < n && clean; ++r) {
        if (r != p && active(r, p) && entry(r, p) != 0) clean = false;
      }
      for (std::size_t c = 0; c < n && clean; ++c) {
        if (c != p && active(c, p) && entry(p, c) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t r = 0; r < n && divides; ++r) {
        if (!active(r, p) || r == p) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (!active(c, p)) continue;
          if (!mpz_divisible_p(entry(r, c).get_mpz_t(), entry(p, p).get_mpz_t())) {
            add_row_to_pivot(r, p);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }

    // Row p and column p are clear, so the symplectic relations clear row and column p'.
    for (std::size_t k = 0; k < n; ++k) {
      if (k != pp && (entry(pp, k) != 0 || entry(k, pp) != 0)) {
        throw Error(ErrorCode::NotSimilitude, "hyperbolic partner not isolated; input is not a similitude");
      }
    }
    if (entry(p, p) < 0) {
      auto s = move_pair_swap(g_, p);
      auto neg = s * s;
      left(neg, neg);
    }
  }

  std::size_t g_;
  RatMatrix cur_;
  RatMatrix kappa_;
  RatMatrix lambda_;
};

void require_integral_similitude(const SimilitudeElement& m) {
  if (!m.is_integral()) throw Error(ErrorCode::NonIntegral, "decomposition requires an integral matrix");
}

}  // namespace

std::pair<std::vector<Int>, std::vector<Int>> divisor_chain_from_snf(const SimilitudeElement& m) {
  require_integral_similitude(m);
  const std::size_t g = m.genus();
  const RatMatrix d = smith_normal_form(m.matrix()).D;
  std::vector<Int> a(g), b(g);
  for (std::size_t i = 0; i < g; ++i) {
    a[i] = d(i, i).num();
    b[i] = d(2 * g - 1 - i, 2 * g - 1 - i).num();
  }
  return {a, b};
}

bool is_valid_decomposition(const SimilitudeElement& m, const ElemDivForm& f) {
  const std::size_t g = m.genus();
  if (f.a.size() != g || f.b.size() != g) return false;
  if (!in_gamma(f.kappa, Int(1)) || !in_gamma(f.lambda, Int(1))) return false;
  if (f.kappa.matrix() * f.delta.matrix() * f.lambda.matrix() != m.matrix()) return false;
  if (f.delta.nu() != m.nu()) return false;
  const RatMatrix& d = f.delta.matrix();
  for (std::size_t r = 0; r < 2 * g; ++r) {
    for (std::size_t c = 0; c < 2 * g; ++c) {
      if (r == c) continue;
      if (!d(r, c).is_zero()) return false;
    }
  }
  const Rat& nu = m.nu();
  for (std::size_t i = 0; i < g; ++i) {
    if (f.a[i] <= 0 || f.b[i] <= 0) return false;
    if (d(i, i) != Rat(f.a[i]) || d(g + i, g + i) != Rat(f.b[i])) return false;
    if (Rat(Int(f.a[i] * f.b[i])) != nu) return false;
    if (i + 1 < g && !mpz_divisible_p(f.a[i + 1].get_mpz_t(), f.a[i].get_mpz_t())) return false;
  }
  return mpz_divisible_p(f.b[g - 1].get_mpz_t(), f.a[g - 1].get_mpz_t()) != 0;
}

ElemDivForm symplectic_elementary_divisors(const SimilitudeElement& m) {
  require_integral_similitude(m);
  const std::size_t g = m.genus();
  auto [a, b] = divisor_chain_from_snf(m);

  Reducer red(m.matrix());
  red.run();

  const RatMatrix& d = red.current();
  for (std::size_t i = 0; i < g; ++i) {
    if (d(i, i) != Rat(a[i]) || d(g + i, g + i) != Rat(b[i])) {
      throw Error(ErrorCode::Precondition, "symplectic reduction disagrees with the Smith chain");
    }
  }
  ElemDivForm form{SimilitudeElement(red.kappa()), SimilitudeElement(d), SimilitudeElement(red.lambda()),
                   std::move(a), std::move(b)};
  if (!is_valid_decomposition(m, form)) {
    throw Error(ErrorCode::Precondition, "decomposition failed verification");
  }
  return form;
}

Int complexity_N(const SimilitudeElement& m) {
  const Int den = denom(m.matrix());
  Int den_pow;
  mpz_pow_ui(den_pow.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(m.dim()));
  const Rat scaled = m.matrix().determinant() * Rat(den_pow);
  // det(den · M) is an integer.
  const Int v = abs(scaled.num());
  return std::max(den, v);
}

SimilitudeElement primitive_integral_representative(const SimilitudeElement& m) {
  Int l = 1;
  for (const auto& e : m.matrix().entries()) l = lcm(l, e.den());
  SimilitudeElement scaled(Rat(l) * m.matrix());
  return primitive_part(scaled).first;
}

Int min_complexity_double_coset(const SimilitudeElement& m) {
  const auto prim = primitive_integral_representative(m);
  const auto form = symplectic_elementary_divisors(prim);
  Int det = 1;
  for (std::size_t i = 0; i < form.a.size(); ++i) det *= form.a[i] * form.b[i];
  return det;
}

std::vector<ElemDivForm> decompose_batch_serial(const std::vector<SimilitudeElement>& inputs) {
  std::vector<ElemDivForm> out;
  out.reserve(inputs.size());
  for (const auto& m : inputs) out.push_back(symplectic_elementary_divisors(m));
  return out;
}

std::vector<ElemDivForm> decompose_batch(const std::vector<SimilitudeElement>& inputs) {
  std::vector<std::optional<ElemDivForm>> slots(inputs.size());
  std::exception_ptr failure;
  const long n = static_cast<long>(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      slots[i] = symplectic_elementary_divisors(inputs[i]);
    } catch (...) {
#pragma omp critical(zp_decompose_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<ElemDivForm> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace zp
