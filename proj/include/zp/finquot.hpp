#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zp/symplectic.hpp"

namespace zp {

/// Row-major residues of a 2g×2g matrix mod q (g <= 2, q <= 255); unused tail is zero.
using Residues = std::array<std::uint8_t, 16>;

struct ResiduesHash {
  std::size_t operator()(const Residues& r) const noexcept;
};

/// |Sp_2g(Z/qZ)|, multiplicative over prime powers.
Int group_order(std::size_t g, std::uint64_t q);

/// Sp_2g(Z/qZ) for g in {1, 2} and 2 <= q <= 255.
class FiniteSymplecticGroup {
 public:
  FiniteSymplecticGroup(std::size_t g, unsigned q);

  std::size_t genus() const { return g_; }
  std::size_t dim() const { return 2 * g_; }
  unsigned modulus() const { return q_; }
  Int order() const { return group_order(g_, q_); }

  Residues identity() const;
  Residues multiply(const Residues& a, const Residues& b) const;
  /// J^-1 aᵀ J.
  Residues inverse(const Residues& a) const;
  bool is_element(const Residues& a) const;
  /// Entrywise reduction of an integral matrix.
  Residues reduce(const RatMatrix& m) const;

  std::uint8_t at(const Residues& a, std::size_t i, std::size_t j) const { return a[i * dim() + j]; }
  std::string to_string(const Residues& a) const;

 private:
  std::size_t g_;
  unsigned q_;
};

/// Reduction Γ -> Sp_2g(Z/qZ). Rejects inputs outside Γ.
Residues reduce_mod(const SimilitudeElement& m, const FiniteSymplecticGroup& group);

/// Multiplicative order of an element.
std::uint64_t element_order(const FiniteSymplecticGroup& group, const Residues& a);

enum class WordPolicy {
  ShortestLex,         // generators tried in index order
  ShortestReverseLex,  // generators tried in reverse index order
};

struct ClosureOptions {
  std::uint64_t cap = 10'000'000;
  WordPolicy policy = WordPolicy::ShortestLex;
  bool parallel = true;
};

/// Open-addressing index from residues to positions in an external element store.
class ResidueIndex {
 public:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  std::uint32_t find(const Residues& key, const std::vector<Residues>& store) const;
  std::uint32_t find_hashed(const Residues& key, std::size_t hash, const std::vector<Residues>& store) const;
  /// Cache hint for a later find_hashed; with `deep`, also touches the stored element at the home slot.
  void prefetch(std::size_t hash, const std::vector<Residues>& store, bool deep) const;
  /// Inserts store[idx]; the key must be absent.
  void insert(std::uint32_t idx, const std::vector<Residues>& store);
  std::size_t size() const { return size_; }

 private:
  void grow(const std::vector<Residues>& store);
  std::vector<std::uint32_t> slots_;
  std::size_t size_ = 0;
};

/// BFS closure of π_q(gens) with one recorded word per element.
class GeneratedSubgroup {
 public:
  const FiniteSymplecticGroup& parent() const { return group_; }
  const GeneratorSet& generators() const { return gens_; }
  const std::vector<Residues>& generator_images() const { return images_; }
  std::size_t size() const { return elements_.size(); }
  /// BFS order; elements()[0] is the identity.
  const std::vector<Residues>& elements() const { return elements_; }

  bool contains(const Residues& r) const { return index_of(r).has_value(); }
  std::optional<std::size_t> index_of(const Residues& r) const;

  /// Generator indices w with element = g_{w_1} · g_{w_2} ··· g_{w_k}.
  std::vector<std::uint16_t> word(std::size_t idx) const;
  /// The word evaluated exactly over Z.
  SimilitudeElement lift(std::size_t idx) const;

 private:
  friend GeneratedSubgroup generated_subgroup(const GeneratorSet&, unsigned, const ClosureOptions&);
  friend GeneratedSubgroup generated_subgroup_serial(const GeneratorSet&, unsigned, const ClosureOptions&);
  GeneratedSubgroup(FiniteSymplecticGroup group, GeneratorSet gens);

  FiniteSymplecticGroup group_;
  GeneratorSet gens_;
  std::vector<Residues> images_;
  std::vector<Residues> elements_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint16_t> via_;
  ResidueIndex index_;
};

/// Level-synchronous closure with the product/lookup phase parallelised under OpenMP.
/// Produces the same element order and words as the serial reference.
GeneratedSubgroup generated_subgroup(const GeneratorSet& gens, unsigned q, const ClosureOptions& opts = {});
/// Queue-based reference closure.
GeneratedSubgroup generated_subgroup_serial(const GeneratorSet& gens, unsigned q, const ClosureOptions& opts = {});

enum class LiftMode {
  Residue,  // evaluate the Γ_γ predicate on the residue matrix (depends only on x mod nu)
  Word,     // evaluate it on the exact lift of the recorded word
};

struct QuotientOptions {
  ClosureOptions closure;
  LiftMode lift = LiftMode::Residue;
};

/// Elements of the subgroup whose lifts x satisfy γ x γ^-1 integral (q must equal nu(γ)).
std::uint64_t count_gamma_gamma_members(const GeneratedSubgroup& h, const SimilitudeElement& gamma,
                                        LiftMode lift = LiftMode::Residue, bool parallel = true);

/// [Sp_2g(Z/νZ) : π_ν(Γ_γ)] = [Γ : Γ_γ] for primitive integral γ with ν = ν(γ) >= 2.
std::uint64_t quotient_index_of_gamma_gamma(const SimilitudeElement& m, const QuotientOptions& opts = {});
/// Same index against a prebuilt closure of the standard generators mod nu(m).
std::uint64_t quotient_index_of_gamma_gamma(const GeneratedSubgroup& h, const SimilitudeElement& m,
                                            LiftMode lift = LiftMode::Residue, bool parallel = true);

struct SurjectivityResult {
  bool surjective;
  std::uint64_t closure_size;
  Int group_order;
};

/// Compares the closure of the standard generators mod q with |Sp_2g(Z/qZ)|.
SurjectivityResult surjectivity_check(std::size_t g, unsigned q, const ClosureOptions& opts = {});

struct ImageIndexRow {
  unsigned q;
  bool skipped = false;
  std::string reason;
  std::uint64_t subgroup_order = 0;
  Int group_order;
  Int index;
};

struct ImageIndexTable {
  std::vector<ImageIndexRow> rows;
  Int max_index;
};

/// index(q) = |Sp_2g(Z/qZ)| / |<π_q(gens)>| per modulus; rows over budget are skipped.
ImageIndexTable bounded_image_experiment(const GeneratorSet& gens, const std::vector<unsigned>& qs,
                                         const ClosureOptions& opts = {});

}  // namespace zp
