#pragma once

#include <vector>

#include "zp/symplectic.hpp"

namespace zp {

/// gamma = kappa · delta · lambda with delta = diag(a_1..a_g, b_1..b_g),
/// a_i b_i = nu, a_i | a_{i+1}, a_g | b_g. Only delta is canonical.
struct ElemDivForm {
  SimilitudeElement kappa;
  SimilitudeElement delta;
  SimilitudeElement lambda;
  std::vector<Int> a;
  std::vector<Int> b;
};

/// Symplectic elementary divisor decomposition of an integral positive similitude.
/// The result is verified (product, chain conditions, agreement with the Smith form)
/// before it is returned.
ElemDivForm symplectic_elementary_divisors(const SimilitudeElement& m);

/// The divisor chain predicted by the Smith form: a_i = d_i, b_i = d_{2g+1-i}.
std::pair<std::vector<Int>, std::vector<Int>> divisor_chain_from_snf(const SimilitudeElement& m);

/// True iff form satisfies every structural condition for the input m.
bool is_valid_decomposition(const SimilitudeElement& m, const ElemDivForm& form);

/// max(denom M, |det M · denom(M)^(2g)|).
Int complexity_N(const SimilitudeElement& m);

/// Scales M to its primitive integral representative and returns det(delta) of its decomposition.
Int min_complexity_double_coset(const SimilitudeElement& m);

/// Primitive integral matrix on the same line Q^× · M.
SimilitudeElement primitive_integral_representative(const SimilitudeElement& m);

/// Decomposes a batch; OpenMP-parallel over inputs, order preserved.
std::vector<ElemDivForm> decompose_batch(const std::vector<SimilitudeElement>& inputs);
std::vector<ElemDivForm> decompose_batch_serial(const std::vector<SimilitudeElement>& inputs);

}  // namespace zp
