#include "zp/symplectic.hpp"

#include <algorithm>

#include "zp/error.hpp"

namespace zp {

namespace {

std::size_t genus_of(const RatMatrix& m) {
  if (!m.is_square() || m.rows() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "similitude requires a square matrix of even dimension");
  }
  return m.rows() / 2;
}

RatMatrix transvection_upper(std::size_t g, std::size_t i, std::size_t j, long k) {
  RatMatrix m = RatMatrix::identity(2 * g);
  m(i, g + j) = k;
  if (i != j) m(j, g + i) = k;
  return m;
}

RatMatrix gl_block(std::size_t g, std::size_t i, std::size_t j, long k) {
  // diag(U, U^-T) with U = I + k E_ij.
  RatMatrix m = RatMatrix::identity(2 * g);
  m(i, j) = k;
  m(g + j, g + i) = -k;
  return m;
}

}  // namespace

RatMatrix standard_form(std::size_t g) {
  RatMatrix j(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    j(i, g + i) = 1;
    j(g + i, i) = -1;
  }
  return j;
}

Rat similitude_character(const RatMatrix& m) {
  const std::size_t g = genus_of(m);
  const RatMatrix j = standard_form(g);
  const RatMatrix form = m.transpose() * j * m;
  const Rat nu = form(0, g);
  for (std::size_t r = 0; r < 2 * g; ++r) {
    for (std::size_t c = 0; c < 2 * g; ++c) {
      if (form(r, c) != nu * j(r, c)) throw Error(ErrorCode::NotSimilitude, "MᵀJM is not a scalar multiple of J");
    }
  }
  if (nu.is_zero()) throw Error(ErrorCode::NotSimilitude, "degenerate matrix has similitude factor 0");
  if (nu.sign() < 0) throw Error(ErrorCode::NegativeSimilitude, "similitude factor " + nu.to_string() + " < 0");
  return nu;
}

SimilitudeElement::SimilitudeElement(RatMatrix m)
    : g_(genus_of(m)), m_(std::move(m)), nu_(similitude_character(m_)) {}

SimilitudeElement SimilitudeElement::identity(std::size_t g) {
  return SimilitudeElement(g, RatMatrix::identity(2 * g), Rat(1));
}

SimilitudeElement SimilitudeElement::inverse() const {
  const RatMatrix j = standard_form(g_);
  // J^-1 = -J
  RatMatrix inv = (Rat(-1) / nu_) * (j * m_.transpose() * j);
  return SimilitudeElement(g_, std::move(inv), Rat(1) / nu_);
}

SimilitudeElement operator*(const SimilitudeElement& a, const SimilitudeElement& b) {
  if (a.g_ != b.g_) throw Error(ErrorCode::DimensionMismatch, "genus mismatch in product");
  return SimilitudeElement(a.g_, a.m_ * b.m_, a.nu_ * b.nu_);
}

bool in_gamma(const SimilitudeElement& m, const Int& q) {
  if (!m.is_integral() || m.nu() != Rat(1)) return false;
  const RatMatrix& a = m.matrix();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Int d = a(i, j).num() - (i == j ? 1 : 0);
      if (q != 0 && d % q != 0) return false;
    }
  }
  return true;
}

GeneratorSet::GeneratorSet(std::size_t g, std::vector<SimilitudeElement> elements)
    : g_(g), elements_(std::move(elements)) {
  if (g == 0) throw Error(ErrorCode::UnsupportedGenus, "genus must be positive");
  for (const auto& e : elements_) {
    if (e.genus() != g) throw Error(ErrorCode::DimensionMismatch, "generator genus mismatch");
    if (!in_gamma(e, Int(1))) throw Error(ErrorCode::Precondition, "generator not in Sp_2g(Z)");
  }
  for (const auto& e : elements_) {
    const auto inv = e.inverse();
    if (std::find(elements_.begin(), elements_.end(), inv) == elements_.end()) {
      throw Error(ErrorCode::Precondition, "generator set is not symmetric");
    }
  }
}

GeneratorSet GeneratorSet::symmetric_closure(std::size_t g, const std::vector<SimilitudeElement>& elements) {
  std::vector<SimilitudeElement> out;
  for (const auto& e : elements) {
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    auto inv = e.inverse();
    if (std::find(out.begin(), out.end(), inv) == out.end()) out.push_back(std::move(inv));
  }
  return GeneratorSet(g, std::move(out));
}

GeneratorSet standard_generators(std::size_t g) {
  if (g == 0) throw Error(ErrorCode::UnsupportedGenus, "genus must be positive");
  std::vector<SimilitudeElement> gens;
  auto push_pair = [&](RatMatrix m) {
    SimilitudeElement e(std::move(m));
    auto inv = e.inverse();
    gens.push_back(std::move(e));
    gens.push_back(std::move(inv));
  };
  if (g == 1) {
    push_pair(RatMatrix::from_ints(2, 2, {0, -1, 1, 0}));
    push_pair(RatMatrix::from_ints(2, 2, {1, 1, 0, 1}));
    return GeneratorSet(g, std::move(gens));
  }
  push_pair(standard_form(g));
  for (std::size_t i = 0; i < g; ++i) push_pair(transvection_upper(g, i, i, 1));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) push_pair(transvection_upper(g, i, j, 1));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      if (i != j) push_pair(gl_block(g, i, j, 1));
  return GeneratorSet(g, std::move(gens));
}

std::pair<SimilitudeElement, Int> primitive_part(const SimilitudeElement& m) {
  if (!m.is_integral()) throw Error(ErrorCode::NonIntegral, "primitive_part requires an integral matrix");
  Int c = content(m.matrix());
  return {SimilitudeElement(Rat(Int(1), c) * m.matrix()), c};
}

}  // namespace zp
