#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "zp/symplectic.hpp"

namespace zp {

/// Full-rank lattice (1/scale) · rowspan_Z(basis) in Q^2g, basis in HNF.
class Lattice {
 public:
  Lattice(Int scale, RatMatrix basis);

  const Int& scale() const { return scale_; }
  const RatMatrix& basis() const { return basis_; }

  /// Canonical byte encoding; equal lattices have equal keys.
  std::string key() const;

  /// x · L for x in GL_2g(Z).
  Lattice act(const RatMatrix& x) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.scale_ == b.scale_ && a.basis_ == b.basis_;
  }

 private:
  Int scale_;
  RatMatrix basis_;
};

/// Canonical form of M^-1 · Z^2g.
Lattice lattice_from_matrix(const SimilitudeElement& m);

struct HeckeOptions {
  std::uint64_t cap = 10'000'000;
  bool parallel = true;
};

/// Orbit of Lattice(M) under Sp_2g(Z). words[i] lists generator indices; the
/// orbit element is g_{w_k} ··· g_{w_1} · L_0 for w = (w_1, ..., w_k).
struct LatticeOrbit {
  std::vector<Lattice> lattices;
  std::vector<std::vector<std::uint16_t>> words;
};

LatticeOrbit lattice_orbit(const SimilitudeElement& m, const HeckeOptions& opts = {});

/// [Γ : Γ_γ] as the size of the Γ-orbit of γ^-1 Z^2g.
std::uint64_t hecke_index(const SimilitudeElement& m, const HeckeOptions& opts = {});

/// Membership of x in Γ_γ = Γ ∩ γ^-1 Γ γ: γ x γ^-1 integral.
bool in_gamma_gamma(const SimilitudeElement& gamma, const SimilitudeElement& x);

/// y_1..y_k in Γ representing the right cosets Γ_γ \ Γ, k = hecke_index(M).
std::vector<SimilitudeElement> coset_representatives(const SimilitudeElement& m, const HeckeOptions& opts = {});

/// η_0..η_{q-1}: identity with ℓ at row g+1, column 1 (1-based).
/// Requires delta diagonal in elementary divisor normal form with a_1 = 1 and
/// q a prime power dividing nu(delta).
std::vector<SimilitudeElement> eta_coset_witnesses(const SimilitudeElement& delta, std::uint64_t q);

/// Checks η_k^-1 η_ℓ = η_{ℓ-k} with entry (g+1, 1) nonzero mod q for every k != ℓ.
bool eta_witnesses_distinct(const std::vector<SimilitudeElement>& witnesses, std::uint64_t q);

}  // namespace zp
