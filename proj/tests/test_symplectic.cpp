#include <doctest.h>

#include "support.hpp"
#include "zp/error.hpp"
#include "zp/finquot.hpp"
#include "zp/symplectic.hpp"

using namespace zp;
using namespace zp::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Precondition;
}

Rat pow_rat(const Rat& x, std::size_t e) {
  Rat r(1);
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

TEST_CASE("similitude character") {
  CHECK(similitude_character(RatMatrix::identity(4)) == Rat(1));
  for (long p : {2, 3, 5, 7}) CHECK(similitude_character(RatMatrix::diagonal({1, p})) == Rat(p));
  CHECK(code_of([] { similitude_character(RatMatrix::diagonal({1, 2, 3, 4})); }) == ErrorCode::NotSimilitude);
  CHECK(code_of([] { similitude_character(RatMatrix::diagonal({1, -1})); }) == ErrorCode::NegativeSimilitude);
  CHECK(code_of([] { similitude_character(RatMatrix::diagonal({1, 0})); }) == ErrorCode::NotSimilitude);
  CHECK(code_of([] { similitude_character(RatMatrix::identity(3)); }) == ErrorCode::DimensionMismatch);
  CHECK(similitude_character(RatMatrix::parse("1/2,0;0,2")) == Rat(1));
}

TEST_CASE("in_gamma and congruence levels") {
  CHECK(in_gamma(SimilitudeElement::identity(2), 5));
  CHECK_FALSE(in_gamma(elem("1,1;0,1"), 2));
  CHECK(in_gamma(elem("1,4;0,1"), 4));
  CHECK_FALSE(in_gamma(elem("1,4;0,1"), 8));
  CHECK_FALSE(in_gamma(elem("1,0;0,2"), 1));
  CHECK_FALSE(in_gamma(elem("1/2,0;0,2"), 1));
}

TEST_CASE("standard generators") {
  const auto g1 = standard_generators(1);
  CHECK(g1.size() == 4);
  CHECK(g1[0].matrix() == RatMatrix::parse("0,-1;1,0"));
  CHECK(g1[2].matrix() == RatMatrix::parse("1,1;0,1"));
  for (std::size_t g = 1; g <= 3; ++g) {
    const auto gens = standard_generators(g);
    for (const auto& e : gens.elements()) {
      CHECK(e.nu() == Rat(1));
      CHECK(in_gamma(e, 1));
    }
  }
  CHECK(standard_generators(2).size() == 12);
  CHECK_THROWS_AS(standard_generators(0), Error);
  CHECK(generated_subgroup(g1, 2).size() == 6);
  CHECK(generated_subgroup(standard_generators(2), 2).size() == 720);
}

TEST_CASE("generator sets must be symmetric") {
  const auto t = elem("1,1;0,1");
  CHECK_THROWS_AS(GeneratorSet(1, {t}), Error);
  const auto closed = GeneratorSet::symmetric_closure(1, {t});
  CHECK(closed.size() == 2);
  CHECK(closed[1] == t.inverse());
  CHECK_THROWS_AS(GeneratorSet(1, {elem("1,0;0,2")}), Error);
  CHECK(GeneratorSet::symmetric_closure(1, {elem("0,-1;1,0") * elem("0,-1;1,0")}).size() == 1);
}

TEST_CASE("primitive part") {
  auto [p1, c1] = primitive_part(diag_elem({2, 2}));
  CHECK(p1 == SimilitudeElement::identity(1));
  CHECK(c1 == 2);
  auto [p2, c2] = primitive_part(diag_elem({2, 4}));
  CHECK(p2 == diag_elem({1, 2}));
  CHECK(c2 == 2);
  CHECK(p2.nu() == Rat(2));
  auto [p3, c3] = primitive_part(elem("1,1;0,1"));
  CHECK(p3 == elem("1,1;0,1"));
  CHECK(c3 == 1);
  CHECK_THROWS_AS(primitive_part(elem("1/2,0;0,2")), Error);
}

TEST_CASE("similitude is multiplicative and det = nu^g") {
  Rng rng(31);
  const auto chains = all_chains(2, 20);
  for (int t = 0; t < 100; ++t) {
    const std::size_t g = 1 + t % 2;
    const auto& pool = g == 1 ? all_chains(1, 20) : chains;
    const auto a = random_gamma_word(g, 6, rng) * chain_delta(pool[pick(rng, pool.size())]);
    const auto b = chain_delta(pool[pick(rng, pool.size())]) * random_gamma_word(g, 6, rng);
    const auto ab = a * b;
    CHECK(ab.nu() == a.nu() * b.nu());
    CHECK(similitude_character(ab.matrix()) == ab.nu());
    CHECK(ab.matrix().determinant() == pow_rat(ab.nu(), g));
    CHECK(a * a.inverse() == SimilitudeElement::identity(g));
    CHECK(a.inverse().matrix() == a.matrix().inverse());
  }
}
