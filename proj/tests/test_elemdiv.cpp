#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "support.hpp"
#include "zp/elemdiv.hpp"
#include "zp/error.hpp"

using namespace zp;
using namespace zp::testing;

namespace {

std::vector<Int> to_ints(const std::vector<long>& v) { return {v.begin(), v.end()}; }

oracle::RatTable rat_table(const RatMatrix& m) {
  oracle::RatTable t(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t[i][j] = m(i, j).value();
  return t;
}

}  // namespace

TEST_CASE("elementary divisor examples") {
  const auto f1 = symplectic_elementary_divisors(diag_elem({1, 6}));
  CHECK(f1.a == to_ints({1}));
  CHECK(f1.b == to_ints({6}));
  CHECK(f1.delta == diag_elem({1, 6}));

  const auto m2 = elem("0,-1;6,0");
  const auto f2 = symplectic_elementary_divisors(m2);
  CHECK(f2.delta == diag_elem({1, 6}));
  CHECK(f2.kappa * f2.delta * f2.lambda == m2);
  CHECK(in_gamma(f2.kappa, 1));
  CHECK(in_gamma(f2.lambda, 1));

  const auto m3 = diag_elem({2, 1, 3, 6});
  const auto f3 = symplectic_elementary_divisors(m3);
  CHECK(f3.delta == diag_elem({1, 1, 6, 6}));
  CHECK(f3.kappa * f3.delta * f3.lambda == m3);
  CHECK(is_valid_decomposition(m3, f3));
}

TEST_CASE("elementary divisors reject bad input") {
  CHECK_THROWS_AS(symplectic_elementary_divisors(elem("1/2,0;0,2")), Error);
  CHECK_THROWS_AS(SimilitudeElement(RatMatrix::diagonal({1, 2, 3, 4})), Error);
}

TEST_CASE("decompositions recover the planted divisor chain") {
  const auto suite = elemdiv_suite(77, 200);
  for (const auto& in : suite) {
    const auto f = symplectic_elementary_divisors(in.m);
    CHECK(f.kappa * f.delta * f.lambda == in.m);
    CHECK(in_gamma(f.kappa, 1));
    CHECK(in_gamma(f.lambda, 1));
    CHECK(f.delta == chain_delta(in.chain));
    CHECK(is_valid_decomposition(in.m, f));

    std::vector<Int> ab = f.a;
    ab.insert(ab.end(), f.b.begin(), f.b.end());
    std::sort(ab.begin(), ab.end());
    oracle::IntTable t(in.m.dim(), std::vector<mpz_class>(in.m.dim()));
    for (std::size_t i = 0; i < in.m.dim(); ++i)
      for (std::size_t j = 0; j < in.m.dim(); ++j) t[i][j] = in.m.matrix()(i, j).num();
    CHECK(ab == oracle::minor_gcd_chain(t));
  }
}

TEST_CASE("validity check rejects tampered forms") {
  const auto m = diag_elem({2, 1, 3, 6});
  auto f = symplectic_elementary_divisors(m);
  auto broken = f;
  broken.a[0] = 2;
  CHECK_FALSE(is_valid_decomposition(m, broken));
  broken = f;
  broken.lambda = f.lambda * standard_generators(2)[2];
  CHECK_FALSE(is_valid_decomposition(m, broken));
}

TEST_CASE("decomposition works beyond genus two") {
  Rng rng(3);
  const auto chains = all_chains(3, 24);
  for (int t = 0; t < 20; ++t) {
    const auto& c = chains[pick(rng, chains.size())];
    const auto m = random_gamma_word(3, 10, rng) * chain_delta(c) * random_gamma_word(3, 10, rng);
    const auto f = symplectic_elementary_divisors(m);
    CHECK(f.delta == chain_delta(c));
  }
}

TEST_CASE("complexity N") {
  CHECK(complexity_N(diag_elem({1, 5})) == 5);
  CHECK(complexity_N(SimilitudeElement::identity(2)) == 1);
  CHECK(complexity_N(elem("1/2,0;0,2")) == 4);

  Rng rng(41);
  const auto chains = all_chains(2, 36);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_gamma_word(2, 8, rng) * chain_delta(chains[pick(rng, chains.size())]) *
                   random_gamma_word(2, 8, rng);
    CHECK(complexity_N(m) == m.matrix().determinant().num());
    const Int n_in = complexity_N(m);
    const auto k = random_gamma_word(2, 5, rng);
    const auto l = random_gamma_word(2, 5, rng);
    CHECK(complexity_N(k * m * l) == n_in);
    CHECK(complexity_N(m) == oracle::complexity_formula(rat_table(m.matrix())));
  }
}

TEST_CASE("minimal complexity over the double coset") {
  CHECK(min_complexity_double_coset(diag_elem({3, 3})) == 1);
  CHECK(min_complexity_double_coset(diag_elem({2, 4})) == 2);
  CHECK(min_complexity_double_coset(diag_elem({2, 1, 3, 6})) == 36);
  CHECK(min_complexity_double_coset(elem("1/2,0;0,1")) == 2);
  CHECK(primitive_integral_representative(elem("1/2,0;0,3/2")) == diag_elem({1, 3}));
}

TEST_CASE("batch decomposition matches the serial reference") {
  std::vector<SimilitudeElement> inputs;
  for (const auto& in : elemdiv_suite(5, 60)) inputs.push_back(in.m);
  const auto par = decompose_batch(inputs);
  const auto ser = decompose_batch_serial(inputs);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].delta == ser[i].delta);
    CHECK(par[i].kappa == ser[i].kappa);
    CHECK(par[i].lambda == ser[i].lambda);
  }
}
