#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "zp/ratmat.hpp"

namespace zp {

/// Standard alternating form [[0, I_g], [-I_g, 0]].
RatMatrix standard_form(std::size_t g);

/// Returns nu with MᵀJM = nu·J, nu > 0.
/// Throws NotSimilitude / NegativeSimilitude.
Rat similitude_character(const RatMatrix& m);

/// A matrix certified to lie in GSp_2g(Q)+ with its similitude factor.
class SimilitudeElement {
 public:
  explicit SimilitudeElement(RatMatrix m);

  static SimilitudeElement identity(std::size_t g);
  static SimilitudeElement parse(std::string_view text) { return SimilitudeElement(RatMatrix::parse(text)); }

  std::size_t genus() const { return g_; }
  std::size_t dim() const { return 2 * g_; }
  const RatMatrix& matrix() const { return m_; }
  const Rat& nu() const { return nu_; }
  bool is_integral() const { return m_.is_integral(); }

  /// Inverse in GSp, computed as nu^-1 · J^-1 Mᵀ J.
  SimilitudeElement inverse() const;

  friend SimilitudeElement operator*(const SimilitudeElement& a, const SimilitudeElement& b);
  friend bool operator==(const SimilitudeElement& a, const SimilitudeElement& b) { return a.m_ == b.m_; }
  friend bool operator!=(const SimilitudeElement& a, const SimilitudeElement& b) { return !(a == b); }

 private:
  SimilitudeElement(std::size_t g, RatMatrix m, Rat nu) : g_(g), m_(std::move(m)), nu_(std::move(nu)) {}
  std::size_t g_;
  RatMatrix m_;
  Rat nu_;
};

/// True iff M is integral, nu = 1 and M ≡ I mod q (q = 1 tests membership in Sp_2g(Z)).
bool in_gamma(const SimilitudeElement& m, const Int& q);

/// Finite symmetric set of elements of Sp_2g(Z).
class GeneratorSet {
 public:
  /// Validates that every element lies in Sp_2g(Z) and that the set is closed under inverse.
  GeneratorSet(std::size_t g, std::vector<SimilitudeElement> elements);
  /// Appends missing inverses (in order, each right after its source).
  static GeneratorSet symmetric_closure(std::size_t g, const std::vector<SimilitudeElement>& elements);

  std::size_t genus() const { return g_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<SimilitudeElement>& elements() const { return elements_; }
  const SimilitudeElement& operator[](std::size_t i) const { return elements_[i]; }

 private:
  std::size_t g_;
  std::vector<SimilitudeElement> elements_;
};

/// Pinned generators of Sp_2g(Z).
///
/// g = 1: [S, S^-1, T, T^-1] with S = [[0,-1],[1,0]], T = [[1,1],[0,1]].
/// g >= 2: [J, J^-1], then T_B, T_B^-1 for B = E_ii (i = 1..g) followed by
/// B = E_ij + E_ji (i < j), then diag(U, U^-T), inverse for U = I + E_ij
/// over all ordered pairs i != j. Throws UnsupportedGenus for g = 0.
GeneratorSet standard_generators(std::size_t g);

/// (M / c, c) where c is the gcd of the entries of the integral matrix M.
std::pair<SimilitudeElement, Int> primitive_part(const SimilitudeElement& m);

}  // namespace zp
