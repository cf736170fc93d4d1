#include <doctest.h>

#include "bklib/module.hpp"

using namespace bk;

TEST_CASE("summand validation") {
  CHECK_THROWS_AS(CyclicSummand::pur(0, 1).validate(3), error);
  CHECK_THROWS_AS(CyclicSummand::fur(1, {3}, 2).validate(3), error);  // unit not a unit
  CHECK_NOTHROW(CyclicSummand::fur(1, {1, 3}, 2).validate(3));
}

TEST_CASE("canonical sort makes equality syntactic") {
  auto a = BKModule::from_summands({CyclicSummand::pur(1, 3), CyclicSummand::ppow(2)}, 3);
  auto b = BKModule::from_summands({CyclicSummand::ppow(2), CyclicSummand::pur(1, 3)}, 3);
  CHECK(a == b);
}

TEST_CASE("twist of summands") {
  // PUr(1,2) at p=3: exponent r multiplies by p
  auto m = BKModule::from_summands({CyclicSummand::pur(1, 2)}, 3);
  CHECK(twist(m, 1, 3) == BKModule::from_summands({CyclicSummand::pur(1, 6)}, 3));
  CHECK(twist(m, 0, 3) == m);
  // FUr(1,1,2) at p=2 -> FUr(2,1,4)
  auto f = BKModule::from_summands({CyclicSummand::fur(1, {1}, 2)}, 2);
  CHECK(twist(f, 1, 2) == BKModule::from_summands({CyclicSummand::fur(2, {1}, 4)}, 2));
}

TEST_CASE("twist composition") {
  auto m = BKModule::from_summands(
      {CyclicSummand::pur(2, 3), CyclicSummand::fur(2, {1, 2}, 3), CyclicSummand::ppow(1),
       CyclicSummand::free_rank_one()},
      2);
  for (int64_t n = 0; n <= 2; ++n)
    for (int64_t k = 0; k <= 2; ++k)
      CHECK(twist(twist(m, n, 2), k, 2) == twist(m, n + k, 2));
}

TEST_CASE("presentation twist applies frobenius entrywise") {
  RingParams pr(2, 2, 12);
  Presentation pres;
  pres.params = pr;
  pres.gens = 1;
  pres.relations = {{TruncatedSeries::monomial(pr, 2)}};
  auto m = BKModule::from_presentation(pres);
  auto t = twist(m, 1, 2);
  CHECK(t.presentation->relations[0][0] == TruncatedSeries::monomial(pr, 4));
  // degree 2 * 2^3 = 16 >= 12 overflows the truncation
  CHECK_THROWS_AS(twist(m, 3, 2), error);
}

TEST_CASE("filtration sorts by annihilator shape") {
  auto m = BKModule::from_summands(
      {CyclicSummand::pur(1, 3), CyclicSummand::ppow(2), CyclicSummand::free_rank_one()}, 3);
  auto f = filtration(m, 3);
  CHECK(f.u_infty == BKModule::from_summands({CyclicSummand::pur(1, 3)}, 3));
  CHECK(f.tor_u_tf == BKModule::from_summands({CyclicSummand::ppow(2)}, 3));
  CHECK(f.free_rank == 1);
  CHECK(f.mbar == BKModule::zero());

  auto z = filtration(BKModule::zero(), 3);
  CHECK(z.u_infty == BKModule::zero());
  CHECK(z.free_rank == 0);

  auto fu = filtration(BKModule::from_summands({CyclicSummand::fur(1, {1}, 2)}, 2), 2);
  CHECK(fu.u_infty == BKModule::from_summands({CyclicSummand::fur(1, {1}, 2)}, 2));
}

TEST_CASE("filtration pieces validation") {
  FiltrationPieces p;
  p.tor_u_tf = BKModule::from_summands({CyclicSummand::pur(1, 1)}, 2);  // wrong kind
  CHECK_THROWS_AS(p.validate(2), error);
}
