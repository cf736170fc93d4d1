#include <doctest.h>

#include "bklib/conjectures.hpp"

using namespace bk;
using namespace bk::conj;

TEST_CASE("derive_constants examples") {
  auto c = derive_constants(3, 4);
  CHECK(c.a == 1);
  CHECK(c.e_tilde == 2);
  c = derive_constants(2, 1);
  CHECK(c.a == 0);
  CHECK(c.e_tilde == 1);
  c = derive_constants(2, 12);
  CHECK(c.a == 4);  // 2^3 = 8 < 12 <= 16 = 2^4
  CHECK(c.e_tilde == 12);
}

TEST_CASE("derive_constants minimality invariants for p <= 13, e <= 200") {
  for (int64_t p : {2, 3, 5, 7, 11, 13}) {
    for (int64_t e = 1; e <= 200; ++e) {
      auto c = derive_constants(p, e);
      int64_t pa = 1;
      for (int64_t i = 0; i < c.a; ++i) pa *= p;
      CHECK(pa * (p - 1) >= e);
      if (c.a > 0) CHECK(pa / p * (p - 1) < e);
      CHECK((c.a == 0) == (e <= p - 1));
      CHECK(c.e_tilde * (p - 1) >= e);
      CHECK(e > (c.e_tilde - 1) * (p - 1));
    }
  }
}

TEST_CASE("beta_check") {
  auto c = derive_constants(3, 4);  // a = 1
  BetaProfile f;
  f.values = {3, 4, 4, 4};
  auto rep = beta_check(f, c);
  CHECK(rep.cond1);
  CHECK(rep.cond2);

  BetaProfile bad;
  bad.values = {5, 3};
  auto rb = beta_check(bad, derive_constants(2, 1));
  CHECK(!rb.cond2);
  CHECK(rb.violations == std::vector<int64_t>{0});

  BetaProfile zero;
  zero.values = {0, 0, 0};
  CHECK(beta_check(zero, c).pass());

  BetaProfile tooshort;
  tooshort.values = {1};
  CHECK_THROWS_AS(beta_check(tooshort, c), error);
}

TEST_CASE("main_inequality_check") {
  auto r = main_inequality_check(2, 24, 12);
  CHECK(r.pass());
  CHECK(r.slack_right == 0);  // equality on the right
  r = main_inequality_check(1, 4, 12);
  CHECK(r.pass());
  CHECK(r.slack_left > 0);
  CHECK(r.slack_right > 0);
  r = main_inequality_check(1, 0, 5);
  CHECK(!r.left_ok);
}

TEST_CASE("ledger_l_dR") {
  auto E = EisensteinPoly::default_poly(2, 3);
  FiltrationPieces zero;
  CHECK(ledger_l_dR(zero, 0, E, 2, 0) == 0);
  CHECK(ledger_l_dR(zero, 5, E, 2, 0) == 5);
  CHECK_THROWS_AS(ledger_l_dR(zero, 5, E, 2, 0, 4), error);  // q exceeds bound

  FiltrationPieces p1;
  p1.u_infty = BKModule::from_summands({CyclicSummand::pur(1, 1)}, 2);
  // twist n+1 = 1: min(3, 2*1) = 2
  CHECK(ledger_l_dR(p1, 0, E, 2, 0) == 2);
}

TEST_CASE("stability_check") {
  auto c = derive_constants(2, 2);  // a = 1
  LengthLedger good;
  good.degree = 2;
  good.l_crys = {1, 1, 1, 1};
  good.l_dR = {1, 2, 2, 2};
  CHECK(stability_check(good, c).pass());

  LengthLedger drift = good;
  drift.l_dR = {1, 2, 3, 2};
  auto rep = stability_check(drift, c);
  CHECK(!rep.pass());
  CHECK(!rep.failures.empty());

  LengthLedger short_window;
  short_window.l_crys = {1};
  short_window.l_dR = {1};
  CHECK_THROWS_AS(stability_check(short_window, c), error);

  LengthLedger nonconst;
  nonconst.l_crys = {1, 2};
  nonconst.l_dR = {1, 2};
  CHECK_THROWS_AS(stability_check(nonconst, c), error);
}

TEST_CASE("ledger decomposition invariants") {
  LengthLedger l;
  l.l_crys = {2, 2};
  l.l_dR = {5, 5};
  l.crys_exponents = {1, 1};
  l.dr_exponents = {3, 2};
  CHECK_NOTHROW(l.validate());
  l.dr_exponents = {3};
  CHECK_THROWS_AS(l.validate(), error);  // r != s
}

TEST_CASE("p_torsion_bound_check") {
  auto rep = p_torsion_bound_check({1, 1}, {3, 2}, 4);
  CHECK(rep.all_b_within_e);
  CHECK(rep.right_ok);   // 5 <= 8
  CHECK(rep.left_applicable);
  CHECK(rep.left_ok);    // 2 <= 5
  rep = p_torsion_bound_check({1}, {4}, 4);
  CHECK(rep.right_ok);
  CHECK_THROWS_AS(p_torsion_bound_check({1, 1}, {1}, 4), error);
}

TEST_CASE("li-petrov example") {
  auto rep = example_li_petrov(2);
  CHECK(rep.e == 12);
  CHECK(rep.l2_dR == 24);
  CHECK(rep.l3_dR == 4);
  CHECK(rep.pass());
  rep = example_li_petrov(3);
  CHECK(rep.e == 72);
  CHECK(rep.l2_dR == 144);
  CHECK(rep.l3_dR == 18);
  CHECK(rep.pass());
  for (int64_t p : {2, 3, 5, 7, 11, 13}) CHECK(example_li_petrov(p).pass());
}

TEST_CASE("bk group scheme example") {
  auto rep = example_bk_group_scheme(3);
  CHECK(rep.e == 5);
  CHECK(rep.matches_closed_form);
  CHECK(rep.beta.pass());
  // f(n) = min(5, 3^{n+1}): 3, 5, 5, ...
  CHECK(rep.profile.values[0] == 3);
  CHECK(rep.profile.values[1] == 5);
}

TEST_CASE("sweep over the theorem window finds no violations") {
  SweepConfig cfg;
  cfg.p_values = {2, 3};
  cfg.r_max = 3;
  cfg.max_summands = 2;
  cfg.jobs = 1;
  auto rep = sweep_beta(cfg);
  CHECK(rep.pass());
  CHECK(rep.cells_run > 0);
  CHECK(rep.cells_skipped == 0);
}

TEST_CASE("sweep with units beyond 1") {
  SweepConfig cfg;
  cfg.p_values = {3};
  cfg.r_max = 2;
  cfg.max_summands = 2;
  cfg.units = {{1}, {1, 3}, {2, 0, 3}};
  cfg.jobs = 1;
  auto rep = sweep_beta(cfg);
  CHECK(rep.pass());
}

TEST_CASE("empty sweep and mutant hook") {
  SweepConfig cfg;
  cfg.p_values = {};
  auto rep = sweep_beta(cfg);
  CHECK(rep.pass());
  CHECK(rep.cells_run == 0);

  cfg.inject_mutant = true;
  rep = sweep_beta(cfg);
  CHECK(!rep.pass());
  CHECK(rep.violations.size() == 1);
}

TEST_CASE("p-torsion profiles always satisfy beta") {
  // f(n) = sum min(e, p^{n+1} r_j) is non-decreasing with f(a) <= e*f(0)
  for (int64_t p : {2, 3}) {
    for (int64_t e = 1; e <= 2 * p * (p - 1); ++e) {
      auto consts = derive_constants(p, e);
      auto E = EisensteinPoly::default_poly(p, e);
      for (int64_t r1 = 1; r1 <= 3; ++r1)
        for (int64_t r2 = r1; r2 <= 3; ++r2) {
          auto m = BKModule::from_summands(
              {CyclicSummand::pur(1, r1), CyclicSummand::pur(1, r2)}, p);
          BetaProfile f;
          for (int64_t n = 0; n <= consts.a + 2; ++n)
            f.values.push_back(lengths::e_torsion_length(m, E, p, n + 1));
          CHECK(beta_check(f, consts).pass());
        }
    }
  }
}

TEST_CASE("stability consistency: ledgers assembled with full Q-lengths") {
  // l_dR(n) = modE(M^i, n+1) + etor(M^{i+1}, n+1) is constant and equal to
  // e * l_crys for n >= a, with l_crys defined by the stable value / e
  for (int64_t p : {2, 3}) {
    for (int64_t e = 1; e <= 6; ++e) {
      auto consts = derive_constants(p, e);
      auto E = EisensteinPoly::default_poly(p, e);
      FiltrationPieces deg_i;
      deg_i.u_infty = BKModule::from_summands({CyclicSummand::pur(1, 2)}, p);
      deg_i.tor_u_tf = BKModule::from_summands({CyclicSummand::ppow(1)}, p);
      deg_i.mbar = BKModule::from_summands({CyclicSummand::pur(1, 1)}, p);
      auto next = BKModule::from_summands({CyclicSummand::pur(1, 3)}, p);

      LengthLedger ledger;
      for (int64_t n = 0; n <= consts.a + 2; ++n) {
        int64_t q = lengths::e_torsion_length(next, E, p, n + 1);
        ledger.l_dR.push_back(ledger_l_dR(deg_i, q, E, p, n));
      }
      int64_t stable = ledger.l_dR[consts.a];
      REQUIRE(stable % e == 0);
      ledger.l_crys.assign(ledger.l_dR.size(), stable / e);
      CHECK(stability_check(ledger, consts).pass());
    }
  }
}

TEST_CASE("gamma monotonicity report on supplied Q-lengths") {
  auto c = derive_constants(2, 2);  // a = 1
  auto good = gamma_check({1, 2, 2, 3}, c);
  CHECK(good.pass());
  auto bad = gamma_check({2, 1, 3}, c);
  CHECK(!bad.pass());
  CHECK(!bad.monotone);
  CHECK(!bad.window_ok);  // Q^(a) = 1 < 2 = Q^(0)
  CHECK_THROWS_AS(gamma_check({1}, c), error);
}
