#include <algorithm>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "bnskein/skein.hpp"
#include "bnskein/springer.hpp"

using namespace bnskein;

namespace {

RingElement mono(int n, unsigned support, Int coeff = 1) {
  RingElement e(n);
  e.add_term(support, coeff);
  return e;
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("ring element arithmetic") {
  auto f = mono(2, 0b0011, 2) + mono(2, 0b0101, -1);
  CHECK(f.terms.size() == 2);
  f.add_term(0b0011, -2);
  CHECK(f.terms.size() == 1);  // zeros are pruned
  CHECK((f - f).is_zero());
  CHECK((Int(3) * f).terms.at(0b0101) == -3);
  CHECK_THROWS_AS(f.add_term(1u << 4, 1), std::invalid_argument);
  RingElement other(3);
  CHECK_THROWS_AS(f += other, std::invalid_argument);
}

TEST_CASE("distinguished elements") {
  CHECK(ring_one(2) == mono(2, 0));
  CHECK(ring_variable(2, 3) == mono(2, 0b0100));
  CHECK_THROWS_AS(ring_variable(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(ring_variable(2, 5), std::invalid_argument);

  CHECK(elementary_symmetric(2, 0) == ring_one(2));
  auto e1 = elementary_symmetric(1, 1);
  CHECK(e1 == mono(1, 0b01) + mono(1, 0b10));
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 2 * n; ++k)
      CHECK(elementary_symmetric(n, k).terms.size() ==
            static_cast<std::size_t>(binom(2 * n, k)));
  CHECK_THROWS_AS(elementary_symmetric(2, 5), std::invalid_argument);
  CHECK_THROWS_AS(elementary_symmetric(2, -1), std::invalid_argument);
}

TEST_CASE("square-free products") {
  auto x1 = ring_variable(2, 1);
  auto x2 = ring_variable(2, 2);
  CHECK(square_free_product(x1, x1).is_zero());  // repeated variable dies
  CHECK(square_free_product(x1, x2) == mono(2, 0b0011));
  CHECK(square_free_product(x1 + x2, x1 + x2) == Int(2) * mono(2, 0b0011));
  CHECK(square_free_product(ring_one(2), x1 + x2) == x1 + x2);
  CHECK_THROWS_AS(square_free_product(x1, ring_variable(3, 1)),
                  std::invalid_argument);
}

TEST_CASE("graded ranks match the reversed quotient ranks") {
  const std::vector<std::vector<std::size_t>> expected{
      {1, 1},
      {1, 3, 2},
      {1, 5, 9, 5},
      {1, 7, 20, 28, 14},
  };
  for (int n = 1; n <= 4; ++n) {
    auto ring_ranks = ring_graded_ranks(n);
    CHECK(ring_ranks == expected[n - 1]);
    auto skein_ranks = graded_ranks(n).ranks;
    std::reverse(skein_ranks.begin(), skein_ranks.end());
    CHECK(ring_ranks == std::vector<std::size_t>(skein_ranks.begin(),
                                                 skein_ranks.end()));
  }
  CHECK_THROWS_AS(ring_graded_ranks(0), std::out_of_range);
  CHECK_THROWS_AS(ring_graded_ranks(6), std::out_of_range);
}

TEST_CASE("ranks agree with the lattice-path count at every size") {
  // independent closed form: rank in support size d is C(2n,d) - C(2n,d-1)
  for (int n = 1; n <= 5; ++n) {
    auto ranks = ring_graded_ranks(n);
    REQUIRE(ranks.size() == static_cast<std::size_t>(n + 1));
    for (int d = 0; d <= n; ++d)
      CHECK(ranks[d] == static_cast<std::size_t>(binom(2 * n, d) -
                                                 binom(2 * n, d - 1)));
  }
}

TEST_CASE("smallest ring written out") {
  SpringerRing ring(1);
  CHECK(ring.basis(0) == std::vector<unsigned>{0});
  CHECK(ring.basis(1) == std::vector<unsigned>{0b01});
  CHECK(ring.basis(2).empty());

  // x1 + x2 = 0 there, so x2 rewrites to -x1
  auto x1 = ring_variable(1, 1);
  auto x2 = ring_variable(1, 2);
  CHECK(ring.normal_form(x2) == Int(-1) * x1);
  CHECK(ring.coords(x2) == std::vector<Int>{0, -1});
  // x1 x2 is the degree-2 symmetric generator, hence zero
  CHECK(ring.multiply(x1, x2).is_zero());
  CHECK(ring.multiply(x1, x1).is_zero());
}

TEST_CASE("basis monomials at n=2") {
  SpringerRing ring(2);
  CHECK(ring.basis(1) == std::vector<unsigned>{0b0001, 0b0010, 0b0100});
  CHECK(ring.basis(2) == std::vector<unsigned>{0b0011, 0b0101});
  CHECK(ring.basis(3).empty());
  CHECK(ring.basis(4).empty());
  CHECK(ring.monomials(2).size() == 6);
  CHECK_THROWS_AS(ring.basis(5), std::invalid_argument);
  CHECK_THROWS_AS(ring.basis(-1), std::invalid_argument);

  auto x4 = ring_variable(2, 4);
  auto want = Int(-1) * (ring_variable(2, 1) + ring_variable(2, 2) +
                         ring_variable(2, 3));
  CHECK(ring.normal_form(x4) == want);
  // a basis monomial is its own normal form, with a unit coordinate
  for (int d = 0; d <= 2; ++d)
    for (unsigned m : ring.basis(d)) {
      auto f = mono(2, m);
      CHECK(ring.normal_form(f) == f);
      auto c = ring.coords(f);
      CHECK(std::count(c.begin(), c.end(), Int(1)) == 1);
      CHECK(std::count(c.begin(), c.end(), Int(0)) ==
            std::ssize(c) - 1);
    }
}

TEST_CASE("symmetric generators vanish against everything") {
  for (int n = 1; n <= 3; ++n) {
    SpringerRing ring(n);
    for (int d = 0; d <= n; ++d)
      for (unsigned m : ring.basis(d))
        for (int k = 1; k <= 2 * n; ++k) {
          CAPTURE(n, d, m, k);
          REQUIRE(ring.multiply(mono(n, m), elementary_symmetric(n, k))
                      .is_zero());
        }
  }
}

TEST_CASE("multiplication is associative, commutative, unital") {
  SpringerRing ring(2);
  std::vector<RingElement> gens;
  for (int d = 0; d <= 2; ++d)
    for (unsigned m : ring.basis(d)) gens.push_back(mono(2, m));
  for (const auto& a : gens)
    for (const auto& b : gens) {
      CHECK(ring.multiply(a, b) == ring.multiply(b, a));
      CHECK(ring.multiply(ring_one(2), a) == ring.normal_form(a));
      for (const auto& c : gens)
        CHECK(ring.multiply(ring.multiply(a, b), c) ==
              ring.multiply(a, ring.multiply(b, c)));
    }

  SpringerRing big(3);
  std::mt19937 rng(7192026u);
  std::uniform_int_distribution<unsigned> mask(0, (1u << 6) - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    RingElement a(3), b(3), c(3);
    for (int t = 0; t < 3; ++t) {
      a.add_term(mask(rng), coeff(rng));
      b.add_term(mask(rng), coeff(rng));
      c.add_term(mask(rng), coeff(rng));
    }
    CHECK(big.multiply(a, b) == big.multiply(b, a));
    CHECK(big.multiply(big.multiply(a, b), c) ==
          big.multiply(a, big.multiply(b, c)));
    // reduction is linear
    auto ca = big.coords(a), cb = big.coords(b), cs = big.coords(a + b);
    for (std::size_t i = 0; i < cs.size(); ++i)
      CHECK(cs[i] == ca[i] + cb[i]);
  }
}

TEST_CASE("mismatched parameters are rejected") {
  SpringerRing ring(2);
  CHECK_THROWS_AS(ring.normal_form(ring_one(3)), std::invalid_argument);
  CHECK_THROWS_AS(ring.multiply(ring_one(3), ring_one(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpringerRing(0), std::out_of_range);
  CHECK_THROWS_AS(SpringerRing(6), std::out_of_range);
}

TEST_CASE("dual-basis obstruction report") {
  auto r1 = frobenius_obstruction(1);
  CHECK(r1.degenerate);
  CHECK(r1.top_rank == 1);
  CHECK_FALSE(r1.has_two_generators);
  CHECK_FALSE(r1.not_frobenius);

  auto r2 = frobenius_obstruction(2);
  CHECK(r2.top_degree == 4);
  CHECK(r2.top_rank == 2);
  CHECK(r2.top_rank_is_two);
  CHECK(r2.has_two_generators);
  CHECK(r2.degree_zero_rank == 1);
  CHECK(r2.annihilation_verified);
  CHECK(r2.annihilation_checks == 10);  // 5 positive-degree basis x 2 top
  CHECK(r2.not_frobenius);
  CHECK_FALSE(r2.degenerate);

  // beyond n=2 the top piece is strictly bigger than two, yet the premises
  // behind the obstruction (rank >= 2, annihilation) still hold
  auto r3 = frobenius_obstruction(3);
  CHECK(r3.top_rank == 5);
  CHECK_FALSE(r3.top_rank_is_two);
  CHECK(r3.has_two_generators);
  CHECK(r3.annihilation_verified);
  CHECK(r3.annihilation_checks == (5 + 9 + 5) * 5);
  CHECK(r3.not_frobenius);
}
