// Acceptance suite: each criterion runs at its stated scale and tolerance
// (exact integer equality throughout) and prints one pass/fail line.  The
// binary exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "bklib/cli.hpp"
#include "bklib/conjectures.hpp"
#include "bklib/lengths.hpp"
#include "bklib/verify.hpp"

using namespace bk;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass;
  double seconds;
  std::string detail;
};

std::vector<Criterion> g_results;

template <typename Fn>
void run(int id, const std::string& name, Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Criterion c{id, name, false, 0.0, ""};
  try {
    c = fn(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.id = id;
  c.name = name;
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g_results.push_back(c);
}

Criterion from_check(Criterion c, const verify::CheckResult& r) {
  c.pass = r.pass;
  std::ostringstream os;
  os << "cells=" << r.cells;
  if (r.skipped) os << " skipped(budget)=" << r.skipped;
  if (!r.failures.empty()) os << " first failure: " << r.failures[0];
  c.detail = os.str();
  return c;
}

}  // namespace

int main() {
  verify::Options full;
  full.full = true;
  full.jobs = 0;

  run(1, "formula-vs-oracle exactness", [&](Criterion c) {
    return from_check(c, verify::check_formula_vs_oracle(full));
  });

  run(2, "length identities on the grid", [&](Criterion c) {
    auto a = verify::check_etor_from_u_torsion(full);
    auto b = verify::check_etor_equals_mod_e(full);
    auto d = verify::check_tor_part_twist_invariant(full);
    auto t = verify::check_three_term_decomposition(full);
    c.pass = a.pass && b.pass && d.pass && t.pass;
    std::ostringstream os;
    os << "etor-uinfty=" << a.cells << " etor=modE=" << b.cells << " tor-part=" << d.cells
       << " three-term=" << t.cells;
    for (const auto* r : {&a, &b, &d, &t})
      if (!r->failures.empty()) os << " | " << r->failures[0];
    c.detail = os.str();
    return c;
  });

  run(3, "theorem sweep: zero beta violations", [&](Criterion c) {
    conj::SweepConfig cfg;  // i = 2, p in {2,3}, e < p(p-1), p*alpha != e,
    cfg.p_values = {2, 3};  // sums of <= 3 summands, r <= 4, n_max = a+2
    cfg.height = 2;
    cfg.r_max = 4;
    cfg.max_summands = 3;
    cfg.jobs = 0;
    auto rep = conj::sweep_beta(cfg);
    c.pass = rep.pass() && rep.cells_run > 0;
    std::ostringstream os;
    os << "cells=" << rep.cells_run << " skipped=" << rep.cells_skipped
       << " violations=" << rep.violations.size() << " (exit code "
       << (rep.pass() ? 0 : 1) << ")";
    c.detail = os.str();
    return c;
  });

  run(4, "valuation table vs ground truth", [&](Criterion c) {
    return from_check(c, verify::check_valuation_table(full));
  });

  run(5, "Li-Petrov worked example", [&](Criterion c) {
    bool ok = true;
    for (int64_t p : {2, 3, 5}) {
      auto rep = conj::example_li_petrov(p);
      int64_t p2 = p * p, p3 = p2 * p;
      ok &= rep.pass();
      ok &= rep.l2_dR == 2 * rep.e && rep.l2_dR == rep.e * rep.l2_crys;
      ok &= rep.l3_crys == 1 && rep.l3_dR == p3 - p2 && rep.l3_dR < rep.e * rep.l3_crys;
    }
    c.pass = ok;
    c.detail = "p in {2,3,5}, pure integer identities";
    return c;
  });

  run(6, "ring identities", [&](Criterion c) {
    auto a = verify::check_frobenius_homomorphism(full);
    auto b = verify::check_frobenius_lift(full);
    auto d = verify::check_eisenstein_mod_p(full);
    c.pass = a.pass && b.pass && d.pass;
    std::ostringstream os;
    os << "hom-cells=" << a.cells << " lift-cells=" << b.cells << " eis-cells=" << d.cells;
    c.detail = os.str();
    return c;
  });

  run(7, "derived constants minimality", [&](Criterion c) {
    return from_check(c, verify::check_constants(full));
  });

  run(8, "quasi-filtered validation and alpha bound", [&](Criterion c) {
    auto a = verify::check_qf_validation(full);
    auto b = verify::check_qf_alpha_bound(full);
    c.pass = a.pass && b.pass;
    std::ostringstream os;
    os << "validation-cells=" << a.cells << " alpha-cells=" << b.cells;
    for (const auto* r : {&a, &b})
      if (!r->failures.empty()) os << " | " << r->failures[0];
    c.detail = os.str();
    return c;
  });

  run(9, "mutation sensitivity: verify exits 1 under an injected fault", [&](Criterion c) {
    std::ostringstream sink;
    int rc = cli::cmd_verify("fast", 0, 1'000'000, true, sink);
    int rc_clean = cli::cmd_verify("fast", 0, 1'000'000, false, sink);
    c.pass = rc == cli::kExitCounterexample && rc_clean == cli::kExitPass;
    c.detail = "faulted rc=" + std::to_string(rc) + ", clean rc=" + std::to_string(rc_clean);
    return c;
  });

  bool all = true;
  for (const auto& c : g_results) {
    std::printf("criterion %d [%s] %-48s (%.1fs) %s\n", c.id, c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.seconds, c.detail.c_str());
    all &= c.pass;
  }
  std::printf("acceptance: %s\n", all ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
  return all ? 0 : 1;
}
