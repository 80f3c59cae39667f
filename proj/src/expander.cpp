#include "zp/expander.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>

#include "zp/error.hpp"

namespace zp {

namespace {

void require_connected(const CayleyGraph& g) {
  if (!g.connected()) throw Error(ErrorCode::DisconnectedGraph, "graph is not connected");
}

std::vector<double> dense_normalized_adjacency(const CayleyGraph& g) {
  const std::size_t n = g.size();
  const double inv_r = 1.0 / static_cast<double>(g.degree());
  std::vector<double> a(n * n, 0.0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t s = 0; s < g.degree(); ++s) a[g.neighbor(v, s) * n + v] += inv_r;
  return a;
}

void project_out_constants(std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (auto& v : x) v -= mean;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void apply_normalized(const CayleyGraph& g, const std::vector<double>& x, std::vector<double>& y, bool parallel) {
  const long n = static_cast<long>(g.size());
  const std::size_t r = g.degree();
  const double inv_r = 1.0 / static_cast<double>(r);
#pragma omp parallel for schedule(static) if (parallel)
  for (long v = 0; v < n; ++v) {
    double s = 0.0;
    for (std::size_t k = 0; k < r; ++k) s += x[g.neighbor(static_cast<std::size_t>(v), k)];
    y[static_cast<std::size_t>(v)] = s * inv_r;
  }
}

// ||A x / r - lambda x|| for a unit vector x.
double residual(const CayleyGraph& g, const std::vector<double>& x, double lambda) {
  std::vector<double> y(x.size());
  apply_normalized(g, x, y, false);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
  return std::sqrt(s);
}

// Largest eigenpair of the symmetric tridiagonal matrix (diag, off).
std::pair<double, std::vector<double>> top_tridiagonal(const std::vector<double>& diag,
                                                       const std::vector<double>& off) {
  const lapack_int k = static_cast<lapack_int>(diag.size());
  std::vector<double> d = diag;
  std::vector<double> e(off.begin(), off.end());
  e.resize(static_cast<std::size_t>(std::max<lapack_int>(k, 1)));
  std::vector<double> w(static_cast<std::size_t>(k));
  std::vector<double> z(static_cast<std::size_t>(k));
  std::vector<lapack_int> isuppz(2);
  lapack_int m = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', k, d.data(), e.data(), 0.0, 0.0, k, k, 0.0, &m,
                                         w.data(), z.data(), k, isuppz.data());
  if (info != 0 || m != 1) throw Error(ErrorCode::NonConvergence, "tridiagonal eigensolve failed");
  return {w[0], z};
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

CayleyGraph::CayleyGraph(std::size_t n, std::size_t r, std::vector<std::uint32_t> table)
    : n_(n), r_(r), table_(std::move(table)) {
  if (n == 0 || r == 0) throw Error(ErrorCode::Precondition, "graph needs at least one vertex and one generator");
  if (table_.size() != n * r) throw Error(ErrorCode::DimensionMismatch, "neighbour table has wrong size");
  for (auto w : table_)
    if (w >= n) throw Error(ErrorCode::Precondition, "neighbour index out of range");
}

std::size_t CayleyGraph::multiplicity(std::size_t v, std::size_t w) const {
  std::size_t c = 0;
  for (std::size_t s = 0; s < r_; ++s) c += neighbor(v, s) == w;
  return c;
}

bool CayleyGraph::is_symmetric() const {
  for (std::size_t v = 0; v < n_; ++v)
    for (std::size_t s = 0; s < r_; ++s)
      if (multiplicity(v, neighbor(v, s)) != multiplicity(neighbor(v, s), v)) return false;
  return true;
}

bool CayleyGraph::connected() const {
  std::vector<std::uint8_t> seen(n_, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (std::size_t s = 0; s < r_; ++s) {
      const auto w = neighbor(v, s);
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_;
}

std::vector<std::size_t> CayleyGraph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (std::size_t v = 0; v < n_; ++v) deg[v] = r_;
  return deg;
}

std::size_t CayleyGraph::boundary(const std::vector<std::uint8_t>& in_set) const {
  std::size_t b = 0;
  for (std::size_t v = 0; v < n_; ++v) {
    if (!in_set[v]) continue;
    for (std::size_t s = 0; s < r_; ++s) b += !in_set[neighbor(v, s)];
  }
  return b;
}

CayleyGraph build_cayley_serial(const GeneratedSubgroup& h, const GeneratorSet& gens) {
  const auto& grp = h.parent();
  std::vector<Residues> images;
  for (const auto& e : gens.elements()) images.push_back(reduce_mod(e, grp));
  const std::size_t n = h.size();
  const std::size_t r = images.size();
  std::vector<std::uint32_t> table(n * r);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t s = 0; s < r; ++s) {
      const auto idx = h.index_of(grp.multiply(h.elements()[v], images[s]));
      if (!idx) throw Error(ErrorCode::Precondition, "generator image leaves the subgroup");
      table[v * r + s] = static_cast<std::uint32_t>(*idx);
    }
  }
  return CayleyGraph(n, r, std::move(table));
}

CayleyGraph build_cayley(const GeneratedSubgroup& h, const GeneratorSet& gens, bool parallel) {
  const auto& grp = h.parent();
  std::vector<Residues> images;
  for (const auto& e : gens.elements()) images.push_back(reduce_mod(e, grp));
  const long n = static_cast<long>(h.size());
  const std::size_t r = images.size();
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * r);
  bool escaped = false;
#pragma omp parallel for schedule(static) reduction(|| : escaped) if (parallel)
  for (long v = 0; v < n; ++v) {
    const std::size_t u = static_cast<std::size_t>(v);
    for (std::size_t s = 0; s < r; ++s) {
      const auto idx = h.index_of(grp.multiply(h.elements()[u], images[s]));
      if (!idx) {
        escaped = true;
        continue;
      }
      table[u * r + s] = static_cast<std::uint32_t>(*idx);
    }
  }
  if (escaped) throw Error(ErrorCode::Precondition, "generator image leaves the subgroup");
  return CayleyGraph(static_cast<std::size_t>(n), r, std::move(table));
}

CayleyGraph build_cayley(const GeneratedSubgroup& h, bool parallel) {
  return build_cayley(h, h.generators(), parallel);
}

CayleyGraph cyclic_cayley(std::size_t n, const std::vector<long>& steps) {
  std::vector<std::uint32_t> table;
  table.reserve(n * steps.size());
  const long nn = static_cast<long>(n);
  for (long v = 0; v < nn; ++v)
    for (long s : steps) table.push_back(static_cast<std::uint32_t>(((v + s) % nn + nn) % nn));
  return CayleyGraph(n, steps.size(), std::move(table));
}

SecondEigenpair second_eigenpair_lanczos(const CayleyGraph& g, const SpectralOptions& opts) {
  const std::size_t n = g.size();
  if (n < 2) throw Error(ErrorCode::Precondition, "spectral gap needs at least two vertices");
  const std::size_t max_steps = std::min<std::size_t>({n - 1, opts.max_iterations, 4000});

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> v(n);
  std::uint64_t state = 0x5eed5eedULL + n;
  for (auto& x : v) x = static_cast<double>(splitmix(state) >> 11) * 0x1.0p-53 - 0.5;
  project_out_constants(v);
  double nv = std::sqrt(dot(v, v));
  for (auto& x : v) x /= nv;
  basis.push_back(v);

  std::vector<double> w(n);
  const double residual_target = opts.tolerance * 1e-2;
  for (std::size_t j = 0; j < max_steps; ++j) {
    apply_normalized(g, basis[j], w, opts.parallel);
    project_out_constants(w);
    const double a = dot(w, basis[j]);
    alpha.push_back(a);
    for (std::size_t i = 0; i < n; ++i) w[i] -= a * basis[j][i];
    if (j > 0)
      for (std::size_t i = 0; i < n; ++i) w[i] -= beta[j - 1] * basis[j - 1][i];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double c = dot(w, b);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * b[i];
      }
    }
    const double bnorm = std::sqrt(dot(w, w));

    // An invariant subspace (bnorm ~ 0) makes the Ritz pair exact.
    const bool invariant = bnorm < 1e-13;
    if (invariant || j + 1 == max_steps || (j + 1) % 10 == 0) {
      auto [theta, s] = top_tridiagonal(alpha, beta);
      const double residual = bnorm * std::abs(s.back());
      if (invariant || residual < residual_target) {
        std::vector<double> ritz(n, 0.0);
        for (std::size_t k = 0; k < s.size(); ++k)
          for (std::size_t i = 0; i < n; ++i) ritz[i] += s[k] * basis[k][i];
        return {theta, std::move(ritz), "lanczos"};
      }
      if (j + 1 == max_steps) throw Error(ErrorCode::NonConvergence, "Lanczos did not converge within the step cap");
    }
    beta.push_back(bnorm);
    for (auto& x : w) x /= bnorm;
    basis.push_back(w);
  }
  throw Error(ErrorCode::NonConvergence, "Lanczos did not converge");
}

SecondEigenpair second_eigenpair(const CayleyGraph& g, const SpectralOptions& opts) {
  const std::size_t n = g.size();
  if (n < 2) throw Error(ErrorCode::Precondition, "spectral gap needs at least two vertices");
  if (n > opts.dense_limit) return second_eigenpair_lanczos(g, opts);

  auto a = dense_normalized_adjacency(g);
  const lapack_int nn = static_cast<lapack_int>(n);
  std::vector<double> w(n), z(2 * n);
  std::vector<lapack_int> isuppz(4);
  lapack_int m = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', nn, a.data(), nn, 0.0, 0.0, nn - 1, nn, 0.0,
                                         &m, w.data(), z.data(), nn, isuppz.data());
  if (info != 0 || m != 2) throw Error(ErrorCode::NonConvergence, "dense eigensolve failed");
  std::vector<double> x(z.begin(), z.begin() + static_cast<long>(n));
  if (residual(g, x, w[0]) > 1e-9) throw Error(ErrorCode::NonConvergence, "dense eigenvector failed the residual check");
  return {w[0], std::move(x), "dense"};
}

double spectral_gap(const CayleyGraph& g, const SpectralOptions& opts) {
  require_connected(g);
  return 1.0 - second_eigenpair(g, opts).lambda2;
}

std::vector<double> normalized_spectrum(const CayleyGraph& g) {
  auto a = dense_normalized_adjacency(g);
  const lapack_int nn = static_cast<lapack_int>(g.size());
  std::vector<double> w(g.size());
  const lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'U', nn, a.data(), nn, w.data());
  if (info != 0) throw Error(ErrorCode::NonConvergence, "dense eigensolve failed");
  return w;
}

double sweep_cut(const CayleyGraph& g, const std::vector<double>& order_by) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return order_by[a] < order_by[b]; });
  double best = std::numeric_limits<double>::infinity();
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<std::uint8_t> in(n, 0);
    long boundary = 0;
    for (std::size_t k = 0; k < n / 2; ++k) {
      const std::uint32_t v = dir == 0 ? order[k] : order[n - 1 - k];
      long out = 0, into = 0;
      for (std::size_t s = 0; s < g.degree(); ++s) {
        const auto w = g.neighbor(v, s);
        if (w == v) continue;
        if (in[w]) ++into; else ++out;
      }
      in[v] = 1;
      boundary += out - into;
      best = std::min(best, static_cast<double>(boundary) / static_cast<double>(k + 1));
    }
  }
  return best;
}

double exact_edge_expansion(const CayleyGraph& g) {
  const std::size_t n = g.size();
  if (n > 20) throw Error(ErrorCode::Precondition, "exact expansion limited to n <= 20");
  if (n < 2) throw Error(ErrorCode::Precondition, "expansion needs at least two vertices");
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const unsigned size = static_cast<unsigned>(__builtin_popcount(mask));
    if (2 * size > n) continue;
    unsigned boundary = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(mask >> v & 1u)) continue;
      for (std::size_t s = 0; s < g.degree(); ++s) boundary += !(mask >> g.neighbor(v, s) & 1u);
    }
    best = std::min(best, static_cast<double>(boundary) / size);
  }
  return best;
}

ExpansionResult edge_expansion_sweep(const CayleyGraph& g, const SpectralOptions& opts) {
  require_connected(g);
  const auto pair = second_eigenpair(g, opts);
  ExpansionResult out{sweep_cut(g, pair.vector), std::nullopt, pair.lambda2};
  if (g.size() <= 20) out.exact = exact_edge_expansion(g);
  return out;
}

std::vector<ScanRow> expander_scan(const GeneratorSet& gens, unsigned b, unsigned q_max, const ScanOptions& opts) {
  std::vector<unsigned> moduli;
  for (unsigned q = 2; q <= q_max; ++q)
    if (is_bth_power_free(q, b)) moduli.push_back(q);
  std::vector<ScanRow> rows(moduli.size());
  std::exception_ptr failure;
  const long count = static_cast<long>(moduli.size());
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (long i = 0; i < count; ++i) {
    ScanRow& row = rows[static_cast<std::size_t>(i)];
    row.q = moduli[static_cast<std::size_t>(i)];
    try {
      if (row.q > 255) throw Error(ErrorCode::ClosureBudgetExceeded, "modulus beyond residue encoding");
      const auto h = generated_subgroup(gens, row.q, opts.closure);
      row.n = h.size();
      if (h.size() < 2) {
        row.excluded_reason = "TRIVIAL_GROUP";
        continue;
      }
      const auto graph = build_cayley(h, gens, opts.closure.parallel);
      const auto exp = edge_expansion_sweep(graph, opts.spectral);
      row.gap = 1.0 - exp.lambda2;
      row.sweep = exp.sweep;
      row.exact = exp.exact;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ClosureBudgetExceeded || e.code() == ErrorCode::NonConvergence) {
        row.excluded_reason = std::string(code_string(e.code()));
      } else {
#pragma omp critical(zp_scan_failure)
        if (!failure) failure = std::current_exception();
      }
    } catch (...) {
#pragma omp critical(zp_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "q,n,gap,sweep,excluded_reason\n";
  for (const auto& r : rows) {
    out += std::to_string(r.q) + "," + std::to_string(r.n) + ",";
    if (r.excluded_reason.empty()) {
      out += format_double(r.gap) + "," + format_double(r.sweep) + ",";
    } else {
      out += ",," + r.excluded_reason;
    }
    out += "\n";
  }
  return out;
}

}  // namespace zp
