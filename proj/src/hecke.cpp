#include "zp/hecke.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "zp/arith.hpp"
#include "zp/error.hpp"

namespace zp {

Lattice::Lattice(Int scale, RatMatrix basis) : scale_(std::move(scale)), basis_(std::move(basis)) {
  if (scale_ <= 0) throw Error(ErrorCode::Precondition, "lattice scale must be positive");
}

std::string Lattice::key() const { return scale_.get_str() + "|" + basis_.to_string(); }

Lattice Lattice::act(const RatMatrix& x) const {
  return Lattice(scale_, hermite_normal_form(basis_ * x.transpose()));
}

Lattice lattice_from_matrix(const SimilitudeElement& m) {
  const RatMatrix rows = m.matrix().inverse().transpose();
  Int scale = 1;
  for (const auto& e : rows.entries()) scale = lcm(scale, e.den());
  return Lattice(scale, hermite_normal_form(Rat(scale) * rows));
}

LatticeOrbit lattice_orbit(const SimilitudeElement& m, const HeckeOptions& opts) {
  const GeneratorSet gens = standard_generators(m.genus());
  const std::size_t r = gens.size();

  LatticeOrbit orbit;
  std::unordered_map<std::string, std::size_t> seen;
  orbit.lattices.push_back(lattice_from_matrix(m));
  orbit.words.emplace_back();
  seen.emplace(orbit.lattices.front().key(), 0);

  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const long count = static_cast<long>(frontier.size() * r);
    std::vector<std::optional<Lattice>> children(static_cast<std::size_t>(count));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16) if (opts.parallel)
    for (long t = 0; t < count; ++t) {
      try {
        const auto& src = orbit.lattices[frontier[static_cast<std::size_t>(t) / r]];
        children[static_cast<std::size_t>(t)] = src.act(gens[static_cast<std::size_t>(t) % r].matrix());
      } catch (...) {
#pragma omp critical(zp_orbit_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<std::size_t> next;
    for (std::size_t t = 0; t < children.size(); ++t) {
      std::string key = children[t]->key();
      if (seen.count(key)) continue;
      if (orbit.lattices.size() >= opts.cap) {
        throw Error(ErrorCode::OrbitBudgetExceeded, "lattice orbit exceeds cap " + std::to_string(opts.cap));
      }
      const std::size_t idx = orbit.lattices.size();
      seen.emplace(std::move(key), idx);
      auto word = orbit.words[frontier[t / r]];
      word.push_back(static_cast<std::uint16_t>(t % r));
      orbit.lattices.push_back(std::move(*children[t]));
      orbit.words.push_back(std::move(word));
      next.push_back(idx);
    }
    std::sort(next.begin(), next.end(), [&](std::size_t a, std::size_t b) {
      return orbit.lattices[a].key() < orbit.lattices[b].key();
    });
    frontier = std::move(next);
  }
  return orbit;
}

std::uint64_t hecke_index(const SimilitudeElement& m, const HeckeOptions& opts) {
  if (!m.is_integral()) throw Error(ErrorCode::NonIntegral, "hecke_index requires an integral matrix");
  return lattice_orbit(m, opts).lattices.size();
}

bool in_gamma_gamma(const SimilitudeElement& gamma, const SimilitudeElement& x) {
  if (!in_gamma(x, Int(1))) return false;
  return (gamma * x * gamma.inverse()).is_integral();
}

std::vector<SimilitudeElement> coset_representatives(const SimilitudeElement& m, const HeckeOptions& opts) {
  if (!m.is_integral()) throw Error(ErrorCode::NonIntegral, "coset_representatives requires an integral matrix");
  const GeneratorSet gens = standard_generators(m.genus());
  const LatticeOrbit orbit = lattice_orbit(m, opts);
  std::vector<SimilitudeElement> reps;
  reps.reserve(orbit.words.size());
  for (const auto& word : orbit.words) {
    // x = g_{w_k} ··· g_{w_1}, so x^-1 = g_{w_1}^-1 ··· g_{w_k}^-1.
    SimilitudeElement y = SimilitudeElement::identity(m.genus());
    for (auto w : word) y = y * gens[w].inverse();
    reps.push_back(std::move(y));
  }
  return reps;
}

std::vector<SimilitudeElement> eta_coset_witnesses(const SimilitudeElement& delta, std::uint64_t q) {
  const std::size_t g = delta.genus();
  const RatMatrix& d = delta.matrix();
  if (!delta.is_integral()) throw Error(ErrorCode::Precondition, "delta must be integral");
  for (std::size_t r = 0; r < 2 * g; ++r)
    for (std::size_t c = 0; c < 2 * g; ++c)
      if (r != c && !d(r, c).is_zero()) throw Error(ErrorCode::Precondition, "delta must be diagonal");
  for (std::size_t i = 0; i < g; ++i) {
    const Int a = d(i, i).num();
    const Int b = d(g + i, g + i).num();
    if (a <= 0 || b <= 0) throw Error(ErrorCode::Precondition, "delta entries must be positive");
    if (i + 1 < g && !mpz_divisible_p(d(i + 1, i + 1).num().get_mpz_t(), a.get_mpz_t())) {
      throw Error(ErrorCode::Precondition, "delta violates a_i | a_{i+1}");
    }
    if (i + 1 == g && !mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
      throw Error(ErrorCode::Precondition, "delta violates a_g | b_g");
    }
  }
  if (d(0, 0) != Rat(1)) throw Error(ErrorCode::Precondition, "eta witnesses need a_1 = 1");
  const Int nu = delta.nu().num();
  if (!is_prime_power(q) || !mpz_divisible_p(nu.get_mpz_t(), Int(static_cast<unsigned long>(q)).get_mpz_t())) {
    throw Error(ErrorCode::Precondition, "q must be a prime power dividing nu");
  }
  std::vector<SimilitudeElement> out;
  out.reserve(q);
  for (std::uint64_t l = 0; l < q; ++l) {
    RatMatrix eta = RatMatrix::identity(2 * g);
    eta(g, 0) = Rat(Int(static_cast<unsigned long>(l)));
    out.emplace_back(std::move(eta));
  }
  return out;
}

bool eta_witnesses_distinct(const std::vector<SimilitudeElement>& witnesses, std::uint64_t q) {
  if (witnesses.size() != q) return false;
  const Int mod(static_cast<unsigned long>(q));
  for (std::size_t k = 0; k < witnesses.size(); ++k) {
    const auto inv_k = witnesses[k].inverse();
    for (std::size_t l = 0; l < witnesses.size(); ++l) {
      if (k == l) continue;
      const auto prod = inv_k * witnesses[l];
      const std::size_t g = prod.genus();
      RatMatrix expected = RatMatrix::identity(2 * g);
      expected(g, 0) = Rat(static_cast<long>(l) - static_cast<long>(k));
      if (prod.matrix() != expected) return false;
      Int entry = prod.matrix()(g, 0).num();
      if (entry % mod == 0) return false;
    }
  }
  return true;
}

}  // namespace zp
