#include "zp/fundom.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>

#include "zp/elemdiv.hpp"
#include "zp/error.hpp"

namespace zp {

namespace {

constexpr int kMaxSteps = 10'000;

// Nearest integer; ties at half-integers (within tolerance) go toward zero.
long round_half_toward_zero(double x) {
  const double k = std::floor(x);
  const double frac = x - k;
  if (std::abs(frac - 0.5) <= kDomainTolerance) return static_cast<long>(x > 0 ? k : k + 1);
  return static_cast<long>(frac < 0.5 ? k : k + 1);
}

double to_double(const Rat& r) { return r.value().get_d(); }

RatMatrix sl2(const Int& a, const Int& b, const Int& c, const Int& d) {
  return RatMatrix(2, 2, {Rat(a), Rat(b), Rat(c), Rat(d)});
}

}  // namespace

HalfPlanePoint::HalfPlanePoint(double re, double im) : re_(re), im_(im) {
  if (!(im > 0.0) || !std::isfinite(re) || !std::isfinite(im)) {
    throw Error(ErrorCode::Precondition, "point must lie in the upper half-plane");
  }
}

HalfPlanePoint mobius(const RatMatrix& m, const HalfPlanePoint& tau) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "Möbius action needs a 2x2 matrix");
  const std::complex<double> z = tau.z();
  const std::complex<double> w =
      (to_double(m(0, 0)) * z + to_double(m(0, 1))) / (to_double(m(1, 0)) * z + to_double(m(1, 1)));
  return HalfPlanePoint(w.real(), w.imag());
}

bool in_fundamental_domain(const HalfPlanePoint& tau, double tol) {
  return std::abs(tau.re()) <= 0.5 + tol && std::abs(tau.z()) >= 1.0 - tol;
}

Reduction reduce_to_fundamental(const HalfPlanePoint& tau) {
  std::complex<double> z = tau.z();
  Int a = 1, b = 0, c = 0, d = 1;
  for (int step = 0; step < kMaxSteps; ++step) {
    const long n = round_half_toward_zero(z.real());
    if (n != 0) {
      z -= static_cast<double>(n);
      // T^-n · m
      a -= n * c;
      b -= n * d;
    }
    if (std::norm(z) < 1.0 - kDomainTolerance) {
      z = -1.0 / z;
      // S · m with S = [[0, -1], [1, 0]]
      Int na = -c, nb = -d;
      c = a;
      d = b;
      a = na;
      b = nb;
      continue;
    }
    SimilitudeElement move(sl2(a, b, c, d));
    return {mobius(move.matrix(), tau), std::move(move)};
  }
  throw Error(ErrorCode::NonConvergence, "fundamental-domain reduction exceeded step limit");
}

HeckeInstance::HeckeInstance(HalfPlanePoint t, SimilitudeElement g) : tau0(t), gamma(std::move(g)) {
  if (gamma.genus() != 1) throw Error(ErrorCode::UnsupportedGenus, "Hecke instances are genus 1");
  if (!gamma.is_integral()) throw Error(ErrorCode::NonIntegral, "gamma must be integral");
  if (content(gamma.matrix()) != 1) throw Error(ErrorCode::NotPrimitive, "gamma must be primitive");
}

PairRepresentative reduced_pair_representative(const HeckeInstance& inst) {
  const Reduction first = reduce_to_fundamental(inst.tau0);
  const Reduction second = reduce_to_fundamental(mobius(inst.gamma.matrix(), inst.tau0));
  SimilitudeElement gamma_prime = second.move * inst.gamma * first.move.inverse();
  Int h = height(gamma_prime.matrix());
  return {std::move(gamma_prime), std::move(h), min_complexity_double_coset(inst.gamma)};
}

HeightTable height_complexity_experiment(const HalfPlanePoint& tau0, const std::vector<SimilitudeElement>& family,
                                         bool parallel) {
  std::vector<std::optional<HeightRow>> slots(family.size());
  std::exception_ptr failure;
  const long count = static_cast<long>(family.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < count; ++i) {
    try {
      const auto rep = reduced_pair_representative(HeckeInstance(tau0, family[static_cast<std::size_t>(i)]));
      const double ratio = mpq_class(rep.height, rep.complexity).get_d();
      slots[static_cast<std::size_t>(i)] = HeightRow{static_cast<std::size_t>(i) + 1, rep.complexity, rep.height, ratio};
    } catch (...) {
#pragma omp critical(zp_height_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  HeightTable table;
  for (auto& s : slots) {
    table.max_ratio = std::max(table.max_ratio, s->ratio);
    table.rows.push_back(std::move(*s));
  }
  return table;
}

std::string height_table_to_csv(const HeightTable& table) {
  std::string out = "n,N,H,ratio\n";
  char buf[64];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%.12g", r.ratio);
    out += std::to_string(r.n) + "," + r.complexity.get_str() + "," + r.height.get_str() + "," + buf + "\n";
  }
  return out;
}

}  // namespace zp
