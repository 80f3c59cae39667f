#pragma once

#include <complex>
#include <string>
#include <vector>

#include "zp/symplectic.hpp"

namespace zp {

/// Point of the upper half-plane, im > 0.
class HalfPlanePoint {
 public:
  HalfPlanePoint(double re, double im);
  double re() const { return re_; }
  double im() const { return im_; }
  std::complex<double> z() const { return {re_, im_}; }

 private:
  double re_;
  double im_;
};

/// Boundary tolerance of the closed fundamental domain.
inline constexpr double kDomainTolerance = 1e-9;

/// (a tau + b) / (c tau + d) for a 2×2 matrix with positive determinant.
HalfPlanePoint mobius(const RatMatrix& m, const HalfPlanePoint& tau);

bool in_fundamental_domain(const HalfPlanePoint& tau, double tol = kDomainTolerance);

struct Reduction {
  HalfPlanePoint point;
  SimilitudeElement move;  // in SL_2(Z), point = move · tau
};

/// Gauss reduction into |Re| <= 1/2, |tau| >= 1. Throws NonConvergence after 10^4 steps.
Reduction reduce_to_fundamental(const HalfPlanePoint& tau);

/// s = (π(τ₀), π(γτ₀)) for a primitive integral γ of genus 1 with det > 0.
struct HeckeInstance {
  HeckeInstance(HalfPlanePoint tau0, SimilitudeElement gamma);
  HalfPlanePoint tau0;
  SimilitudeElement gamma;
};

struct PairRepresentative {
  SimilitudeElement gamma_prime;  // g₂ γ g₁⁻¹
  Int height;
  Int complexity;
};

PairRepresentative reduced_pair_representative(const HeckeInstance& inst);

struct HeightRow {
  std::size_t n;
  Int complexity;
  Int height;
  double ratio;
};

struct HeightTable {
  std::vector<HeightRow> rows;
  double max_ratio = 0.0;
};

/// One row per family member: N(s), H(γ′) and H/N. Parallel over instances.
HeightTable height_complexity_experiment(const HalfPlanePoint& tau0, const std::vector<SimilitudeElement>& family,
                                         bool parallel = true);

/// CSV with header n,N,H,ratio.
std::string height_table_to_csv(const HeightTable& table);

}  // namespace zp
