#include "zp/finquot.hpp"

#include <cstring>
#include <exception>

#include "zp/arith.hpp"
#include "zp/error.hpp"

namespace zp {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::vector<std::size_t> generator_order(std::size_t r, WordPolicy policy) {
  std::vector<std::size_t> order(r);
  for (std::size_t i = 0; i < r; ++i) order[i] = policy == WordPolicy::ShortestLex ? i : r - 1 - i;
  return order;
}

void check_budget(std::size_t g, unsigned q, std::uint64_t cap) {
  if (group_order(g, q) > Int(static_cast<unsigned long>(cap))) {
    throw Error(ErrorCode::ClosureBudgetExceeded, "|Sp_" + std::to_string(2 * g) + "(Z/" + std::to_string(q) +
                                                      ")| exceeds closure cap " + std::to_string(cap));
  }
}

// Chunk of BFS heads handled per parallel product/lookup phase.
constexpr std::size_t kChunk = 1 << 15;
constexpr long kPrefetch = 8;

}  // namespace

std::size_t ResiduesHash::operator()(const Residues& r) const noexcept {
  std::uint64_t lo, hi;
  std::memcpy(&lo, r.data(), 8);
  std::memcpy(&hi, r.data() + 8, 8);
  return static_cast<std::size_t>(mix64(lo ^ mix64(hi + 0x9e3779b97f4a7c15ULL)));
}

Int group_order(std::size_t g, std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::Precondition, "modulus must be at least 2");
  if (g == 0) throw Error(ErrorCode::UnsupportedGenus, "genus must be positive");
  Int total = 1;
  for (auto [prime, k] : factorize(q)) {
    const Int p(static_cast<unsigned long>(prime));
    Int part = ipow(p, (k - 1) * (2 * g * g + g)) * ipow(p, g * g);
    for (std::size_t i = 1; i <= g; ++i) part *= ipow(p, 2 * i) - 1;
    total *= part;
  }
  return total;
}

FiniteSymplecticGroup::FiniteSymplecticGroup(std::size_t g, unsigned q) : g_(g), q_(q) {
  if (g == 0 || g > 2) throw Error(ErrorCode::UnsupportedGenus, "finite quotients support g in {1, 2}");
  if (q < 2 || q > 255) throw Error(ErrorCode::Precondition, "modulus must lie in [2, 255]");
}

Residues FiniteSymplecticGroup::identity() const {
  Residues r{};
  for (std::size_t i = 0; i < dim(); ++i) r[i * dim() + i] = 1;
  return r;
}

Residues FiniteSymplecticGroup::multiply(const Residues& a, const Residues& b) const {
  const std::size_t n = dim();
  std::uint32_t acc[16] = {};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint32_t aik = a[i * n + k];
      if (!aik) continue;
      for (std::size_t j = 0; j < n; ++j) acc[i * n + j] += aik * b[k * n + j];
    }
  }
  Residues c{};
  for (std::size_t t = 0; t < n * n; ++t) c[t] = static_cast<std::uint8_t>(acc[t] % q_);
  return c;
}

Residues FiniteSymplecticGroup::inverse(const Residues& a) const {
  // For M = [[A, B], [C, D]], J^-1 Mᵀ J = [[Dᵀ, -Bᵀ], [-Cᵀ, Aᵀ]].
  const std::size_t n = dim();
  const std::size_t g = g_;
  Residues r{};
  auto neg = [&](std::uint8_t v) { return static_cast<std::uint8_t>(v == 0 ? 0 : q_ - v); };
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      r[i * n + j] = a[(g + j) * n + (g + i)];
      r[i * n + (g + j)] = neg(a[j * n + (g + i)]);
      r[(g + i) * n + j] = neg(a[(g + j) * n + i]);
      r[(g + i) * n + (g + j)] = a[j * n + i];
    }
  }
  return r;
}

bool FiniteSymplecticGroup::is_element(const Residues& a) const {
  const std::size_t n = dim();
  for (std::size_t t = n * n; t < 16; ++t)
    if (a[t] != 0) return false;
  for (std::size_t t = 0; t < n * n; ++t)
    if (a[t] >= q_) return false;
  return multiply(a, inverse(a)) == identity();
}

Residues FiniteSymplecticGroup::reduce(const RatMatrix& m) const {
  if (m.rows() != dim() || m.cols() != dim()) throw Error(ErrorCode::DimensionMismatch, "matrix size != 2g");
  if (!m.is_integral()) throw Error(ErrorCode::NonIntegral, "reduction needs an integral matrix");
  Residues r{};
  const Int mod(q_);
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      Int v;
      mpz_fdiv_r(v.get_mpz_t(), m(i, j).num().get_mpz_t(), mod.get_mpz_t());
      r[i * dim() + j] = static_cast<std::uint8_t>(v.get_ui());
    }
  }
  return r;
}

std::string FiniteSymplecticGroup::to_string(const Residues& a) const {
  std::string out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < dim(); ++j) {
      if (j) out += ',';
      out += std::to_string(at(a, i, j));
    }
  }
  return out;
}

Residues reduce_mod(const SimilitudeElement& m, const FiniteSymplecticGroup& group) {
  if (!in_gamma(m, Int(1))) throw Error(ErrorCode::Precondition, "reduce_mod requires an element of Sp_2g(Z)");
  return group.reduce(m.matrix());
}

std::uint64_t element_order(const FiniteSymplecticGroup& group, const Residues& a) {
  const Residues id = group.identity();
  Residues x = a;
  std::uint64_t k = 1;
  while (x != id) {
    x = group.multiply(x, a);
    ++k;
  }
  return k;
}

std::uint32_t ResidueIndex::find(const Residues& key, const std::vector<Residues>& store) const {
  return find_hashed(key, ResiduesHash{}(key), store);
}

std::uint32_t ResidueIndex::find_hashed(const Residues& key, std::size_t hash, const std::vector<Residues>& store) const {
  if (slots_.empty()) return kEmpty;
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t s = hash & mask;; s = (s + 1) & mask) {
    const std::uint32_t v = slots_[s];
    if (v == kEmpty || store[v] == key) return v;
  }
}

void ResidueIndex::prefetch(std::size_t hash, const std::vector<Residues>& store, bool deep) const {
  if (slots_.empty()) return;
  const std::uint32_t* slot = &slots_[hash & (slots_.size() - 1)];
  if (!deep) {
    __builtin_prefetch(slot);
    return;
  }
  if (*slot != kEmpty) __builtin_prefetch(&store[*slot]);
}

void ResidueIndex::insert(std::uint32_t idx, const std::vector<Residues>& store) {
  if (2 * (size_ + 1) > slots_.size()) grow(store);
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = ResiduesHash{}(store[idx]) & mask;
  while (slots_[s] != kEmpty) s = (s + 1) & mask;
  slots_[s] = idx;
  ++size_;
}

void ResidueIndex::grow(const std::vector<Residues>& store) {
  std::vector<std::uint32_t> old = std::move(slots_);
  slots_.assign(old.empty() ? 64 : old.size() * 2, kEmpty);
  const std::size_t mask = slots_.size() - 1;
  for (std::uint32_t v : old) {
    if (v == kEmpty) continue;
    std::size_t s = ResiduesHash{}(store[v]) & mask;
    while (slots_[s] != kEmpty) s = (s + 1) & mask;
    slots_[s] = v;
  }
}

GeneratedSubgroup::GeneratedSubgroup(FiniteSymplecticGroup group, GeneratorSet gens)
    : group_(group), gens_(std::move(gens)) {
  if (gens_.genus() != group_.genus()) throw Error(ErrorCode::DimensionMismatch, "generator genus mismatch");
  if (gens_.size() > 0xffff) throw Error(ErrorCode::Precondition, "too many generators");
  for (const auto& e : gens_.elements()) images_.push_back(reduce_mod(e, group_));
  elements_.push_back(group_.identity());
  parent_.push_back(ResidueIndex::kEmpty);
  via_.push_back(0);
  index_.insert(0, elements_);
}

std::optional<std::size_t> GeneratedSubgroup::index_of(const Residues& r) const {
  const auto v = index_.find(r, elements_);
  if (v == ResidueIndex::kEmpty) return std::nullopt;
  return v;
}

std::vector<std::uint16_t> GeneratedSubgroup::word(std::size_t idx) const {
  std::vector<std::uint16_t> w;
  while (idx != 0) {
    w.push_back(via_[idx]);
    idx = parent_[idx];
  }
  return {w.rbegin(), w.rend()};
}

SimilitudeElement GeneratedSubgroup::lift(std::size_t idx) const {
  SimilitudeElement x = SimilitudeElement::identity(group_.genus());
  for (auto w : word(idx)) x = x * gens_[w];
  return x;
}

GeneratedSubgroup generated_subgroup_serial(const GeneratorSet& gens, unsigned q, const ClosureOptions& opts) {
  GeneratedSubgroup h(FiniteSymplecticGroup(gens.genus(), q), gens);
  const auto order = generator_order(gens.size(), opts.policy);
  for (std::size_t head = 0; head < h.elements_.size(); ++head) {
    for (std::size_t gi : order) {
      Residues c = h.group_.multiply(h.elements_[head], h.images_[gi]);
      if (h.index_.find(c, h.elements_) != ResidueIndex::kEmpty) continue;
      if (h.elements_.size() >= opts.cap) {
        throw Error(ErrorCode::ClosureBudgetExceeded, "closure exceeds cap " + std::to_string(opts.cap));
      }
      h.elements_.push_back(c);
      h.parent_.push_back(static_cast<std::uint32_t>(head));
      h.via_.push_back(static_cast<std::uint16_t>(gi));
      h.index_.insert(static_cast<std::uint32_t>(h.elements_.size() - 1), h.elements_);
    }
  }
  return h;
}

GeneratedSubgroup generated_subgroup(const GeneratorSet& gens, unsigned q, const ClosureOptions& opts) {
  GeneratedSubgroup h(FiniteSymplecticGroup(gens.genus(), q), gens);
  const auto order = generator_order(gens.size(), opts.policy);
  const std::size_t r = order.size();
  if (r == 0) return h;

  std::vector<Residues> products;
  std::vector<std::size_t> hashes;
  std::vector<std::uint8_t> known;
  std::size_t head = 0;
  while (head < h.elements_.size()) {
    // Heads [head, stop) all sit before any element appended in this round,
    // so processing them in order reproduces the serial queue exactly.
    const std::size_t stop = std::min(h.elements_.size(), head + kChunk);
    const long count = static_cast<long>((stop - head) * r);
    products.resize(static_cast<std::size_t>(count));
    hashes.resize(static_cast<std::size_t>(count));
    known.resize(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (opts.parallel)
    for (long t = 0; t < count; ++t) {
      const std::size_t u = static_cast<std::size_t>(t);
      products[u] = h.group_.multiply(h.elements_[head + u / r], h.images_[order[u % r]]);
      hashes[u] = ResiduesHash{}(products[u]);
    }
    // The lookups are dominated by cache misses on the slot table and then
    // on the element store, so both are requested a few iterations ahead.
#pragma omp parallel for schedule(static) if (opts.parallel)
    for (long t = 0; t < count; ++t) {
      const std::size_t u = static_cast<std::size_t>(t);
      if (t + 2 * kPrefetch < count) h.index_.prefetch(hashes[u + 2 * kPrefetch], h.elements_, false);
      if (t + kPrefetch < count) h.index_.prefetch(hashes[u + kPrefetch], h.elements_, true);
      known[u] = h.index_.find_hashed(products[u], hashes[u], h.elements_) != ResidueIndex::kEmpty;
    }
    for (std::size_t u = 0; u < static_cast<std::size_t>(count); ++u) {
      if (known[u]) continue;
      const Residues& c = products[u];
      if (h.index_.find(c, h.elements_) != ResidueIndex::kEmpty) continue;
      if (h.elements_.size() >= opts.cap) {
        throw Error(ErrorCode::ClosureBudgetExceeded, "closure exceeds cap " + std::to_string(opts.cap));
      }
      h.elements_.push_back(c);
      h.parent_.push_back(static_cast<std::uint32_t>(head + u / r));
      h.via_.push_back(static_cast<std::uint16_t>(order[u % r]));
      h.index_.insert(static_cast<std::uint32_t>(h.elements_.size() - 1), h.elements_);
    }
    head = stop;
  }
  return h;
}

std::uint64_t count_gamma_gamma_members(const GeneratedSubgroup& h, const SimilitudeElement& gamma, LiftMode lift,
                                        bool parallel) {
  const FiniteSymplecticGroup& grp = h.parent();
  const std::size_t n = grp.dim();
  const long q = grp.modulus();
  if (!gamma.is_integral() || gamma.nu() != Rat(q)) {
    throw Error(ErrorCode::Precondition, "modulus must equal nu(gamma) for an integral gamma");
  }
  // γ^-1 = ν^-1 γ*, γ* = J^-1 γᵀ J integral; γ x γ^-1 integral iff γ x γ* ≡ 0 mod ν.
  const RatMatrix j = standard_form(grp.genus());
  const RatMatrix adj = Rat(-1) * (j * gamma.matrix().transpose() * j);
  long left[16] = {}, right[16] = {};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      Int a, b;
      mpz_fdiv_r_ui(a.get_mpz_t(), gamma.matrix()(i, k).num().get_mpz_t(), q);
      mpz_fdiv_r_ui(b.get_mpz_t(), adj(i, k).num().get_mpz_t(), q);
      left[i * n + k] = a.get_si();
      right[i * n + k] = b.get_si();
    }
  }
  auto residue_member = [&](const Residues& x) {
    long tmp[16] = {};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < n; ++c) tmp[i * n + c] += left[i * n + k] * x[k * n + c];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < n; ++c) {
        long s = 0;
        for (std::size_t k = 0; k < n; ++k) s += (tmp[i * n + k] % q) * right[k * n + c];
        if (s % q != 0) return false;
      }
    }
    return true;
  };

  const long size = static_cast<long>(h.size());
  std::uint64_t count = 0;
  if (lift == LiftMode::Residue) {
#pragma omp parallel for reduction(+ : count) schedule(static) if (parallel)
    for (long t = 0; t < size; ++t) count += residue_member(h.elements()[static_cast<std::size_t>(t)]) ? 1 : 0;
  } else {
    const auto gamma_inv = gamma.inverse();
    std::exception_ptr failure;
#pragma omp parallel for reduction(+ : count) schedule(dynamic, 64) if (parallel)
    for (long t = 0; t < size; ++t) {
      try {
        const auto x = h.lift(static_cast<std::size_t>(t));
        count += (gamma * x * gamma_inv).is_integral() ? 1 : 0;
      } catch (...) {
#pragma omp critical(zp_lift_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return count;
}

namespace {

unsigned checked_modulus(const SimilitudeElement& m) {
  if (!m.is_integral()) throw Error(ErrorCode::NonIntegral, "quotient index requires an integral matrix");
  if (content(m.matrix()) != 1) throw Error(ErrorCode::NotPrimitive, "entries share a common factor; primitivize first");
  const Int nu = m.nu().num();
  if (nu < 2) throw Error(ErrorCode::Precondition, "nu(gamma) must be at least 2");
  if (m.genus() > 2) throw Error(ErrorCode::UnsupportedGenus, "finite quotients support g in {1, 2}");
  if (nu > 255) throw Error(ErrorCode::ClosureBudgetExceeded, "nu exceeds the residue encoding range");
  return static_cast<unsigned>(nu.get_ui());
}

}  // namespace

std::uint64_t quotient_index_of_gamma_gamma(const SimilitudeElement& m, const QuotientOptions& opts) {
  const unsigned q = checked_modulus(m);
  check_budget(m.genus(), q, opts.closure.cap);
  const auto h = generated_subgroup(standard_generators(m.genus()), q, opts.closure);
  return quotient_index_of_gamma_gamma(h, m, opts.lift, opts.closure.parallel);
}

std::uint64_t quotient_index_of_gamma_gamma(const GeneratedSubgroup& h, const SimilitudeElement& m, LiftMode lift,
                                            bool parallel) {
  const unsigned q = checked_modulus(m);
  if (h.parent().modulus() != q || h.parent().genus() != m.genus()) {
    throw Error(ErrorCode::Precondition, "closure modulus must equal nu(gamma)");
  }
  const std::uint64_t members = count_gamma_gamma_members(h, m, lift, parallel);
  if (members == 0 || h.size() % members != 0) {
    throw Error(ErrorCode::Precondition, "image of Γ_γ does not divide the group order");
  }
  return h.size() / members;
}

SurjectivityResult surjectivity_check(std::size_t g, unsigned q, const ClosureOptions& opts) {
  check_budget(g, q, opts.cap);
  const auto h = generated_subgroup(standard_generators(g), q, opts);
  const Int expected = group_order(g, q);
  return {Int(static_cast<unsigned long>(h.size())) == expected, h.size(), expected};
}

ImageIndexTable bounded_image_experiment(const GeneratorSet& gens, const std::vector<unsigned>& qs,
                                         const ClosureOptions& opts) {
  ImageIndexTable table;
  table.max_index = 0;
  for (unsigned q : qs) {
    ImageIndexRow row;
    row.q = q;
    row.group_order = group_order(gens.genus(), q);
    try {
      check_budget(gens.genus(), q, opts.cap);
      const auto h = generated_subgroup(gens, q, opts);
      row.subgroup_order = h.size();
      row.index = row.group_order / Int(static_cast<unsigned long>(h.size()));
      if (row.index > table.max_index) table.max_index = row.index;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ClosureBudgetExceeded) throw;
      row.skipped = true;
      row.reason = std::string(code_string(e.code()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace zp
