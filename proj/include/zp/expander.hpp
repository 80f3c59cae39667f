#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zp/arith.hpp"
#include "zp/finquot.hpp"

namespace zp {

/// r-regular multigraph given by a neighbour table: neighbor(v, s) is the
/// endpoint of the half-edge at v labelled by generator s.
class CayleyGraph {
 public:
  CayleyGraph(std::size_t n, std::size_t r, std::vector<std::uint32_t> table);

  std::size_t size() const { return n_; }
  std::size_t degree() const { return r_; }
  std::uint32_t neighbor(std::size_t v, std::size_t s) const { return table_[v * r_ + s]; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  /// Number of half-edges from v to w.
  std::size_t multiplicity(std::size_t v, std::size_t w) const;
  /// Adjacency counted with multiplicity is symmetric.
  bool is_symmetric() const;
  bool connected() const;
  /// Per-vertex degree counting multiplicity (constant r by construction).
  std::vector<std::size_t> degrees() const;
  /// Edges leaving the vertex set given by the membership mask.
  std::size_t boundary(const std::vector<std::uint8_t>& in_set) const;

 private:
  std::size_t n_;
  std::size_t r_;
  std::vector<std::uint32_t> table_;
};

/// Cay(H, gens): vertices are the elements of H in closure order, v ~ v·s.
/// Parallel over vertices.
CayleyGraph build_cayley(const GeneratedSubgroup& h, const GeneratorSet& gens, bool parallel = true);
CayleyGraph build_cayley_serial(const GeneratedSubgroup& h, const GeneratorSet& gens);
/// Uses the subgroup's own generators.
CayleyGraph build_cayley(const GeneratedSubgroup& h, bool parallel = true);

/// Cayley graph of Z/n with the given (symmetric) step multiset.
CayleyGraph cyclic_cayley(std::size_t n, const std::vector<long>& steps);

struct SpectralOptions {
  std::size_t dense_limit = 5000;
  double tolerance = 1e-8;
  std::size_t max_iterations = 100000;
  bool parallel = true;
};

struct SecondEigenpair {
  double lambda2;
  std::vector<double> vector;
  std::string method;  // "dense" or "lanczos"
};

/// Second-largest eigenvalue of A/r and an eigenvector orthogonal to the constants.
SecondEigenpair second_eigenpair(const CayleyGraph& graph, const SpectralOptions& opts = {});
/// Same quantity through the iterative solver regardless of size.
SecondEigenpair second_eigenpair_lanczos(const CayleyGraph& graph, const SpectralOptions& opts = {});

/// 1 - λ₂(A/r). Throws DisconnectedGraph.
double spectral_gap(const CayleyGraph& graph, const SpectralOptions& opts = {});

/// Every eigenvalue of A/r, ascending (dense solve).
std::vector<double> normalized_spectrum(const CayleyGraph& graph);

struct ExpansionResult {
  double sweep;                 // best sweep cut, an upper bound on min |∂X|/|X|
  std::optional<double> exact;  // full subset enumeration when n <= 20
  double lambda2;
};

ExpansionResult edge_expansion_sweep(const CayleyGraph& graph, const SpectralOptions& opts = {});
/// Best prefix/suffix cut of the vertices ordered by the given vector.
double sweep_cut(const CayleyGraph& graph, const std::vector<double>& order_by);
/// Exact min |∂X|/|X| over 0 < |X| <= n/2; n <= 20.
double exact_edge_expansion(const CayleyGraph& graph);

struct ScanRow {
  unsigned q;
  std::size_t n = 0;
  double gap = 0.0;
  double sweep = 0.0;
  std::optional<double> exact;
  std::string excluded_reason;
};

struct ScanOptions {
  ClosureOptions closure;
  SpectralOptions spectral;
  bool parallel = false;  // over moduli
};

/// One row per b-th-power-free q in [2, q_max].
std::vector<ScanRow> expander_scan(const GeneratorSet& gens, unsigned b, unsigned q_max, const ScanOptions& opts = {});

/// CSV with header q,n,gap,sweep,excluded_reason.
std::string scan_to_csv(const std::vector<ScanRow>& rows);

}  // namespace zp
