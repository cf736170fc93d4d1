#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lengths.hpp"
#include "module.hpp"

namespace bk::conj {

struct DerivedConstants {
  int64_t p = 2;
  int64_t e = 1;
  int64_t a = 0;       // least n >= 0 with p^n (p-1) >= e
  int64_t e_tilde = 1; // ceil(e / (p-1))
};

// Integer-exact: no floating point anywhere near the boundary cases.
DerivedConstants derive_constants(int64_t p, int64_t e);

enum class BetaSource { u_infty_torsion, mbar };

struct BetaProfile {
  BetaSource source = BetaSource::u_infty_torsion;
  std::vector<int64_t> values;  // f(n) for n = 0 .. n_max
};

struct BetaReport {
  bool cond1 = false;  // f(a) <= e * f(0)
  bool cond2 = false;  // f non-decreasing over the window
  std::vector<int64_t> violations;  // offending n for cond2 (and -1 for cond1)
  bool pass() const { return cond1 && cond2; }
};

BetaReport beta_check(const BetaProfile& profile, const DerivedConstants& consts);

struct InequalityReport {
  bool left_ok = false;   // l_crys <= l_dR
  bool right_ok = false;  // l_dR <= e * l_crys
  int64_t slack_left = 0;
  int64_t slack_right = 0;
  bool pass() const { return left_ok && right_ok; }
};

InequalityReport main_inequality_check(int64_t l_crys, int64_t l_dR, int64_t e);

// l_dR^{(n)} = l((M^{(n+1)}/E)[p^infty]) + l(Q^{(n)}): the module term is
// taken at twist n+1, following the exact sequence convention.
int64_t ledger_l_dR(const FiltrationPieces& pieces, int64_t q_len, const EisensteinPoly& E,
                    int64_t p, int64_t n, std::optional<int64_t> q_bound = std::nullopt,
                    const oracle::Options& opts = {});

struct LengthLedger {
  int64_t degree = 0;
  std::vector<int64_t> l_crys;     // per twist n
  std::vector<int64_t> l_dR;       // per twist n
  std::vector<int64_t> q_lengths;  // per twist n (optional, may be empty)
  std::vector<int64_t> crys_exponents;  // a_i decomposition (optional)
  std::vector<int64_t> dr_exponents;    // b_j decomposition (optional)

  void validate() const;  // l_crys constant; decomposition sums match
};

struct StabilityReport {
  bool identity_ok = false;   // l_dR^{(n)} = e * l_crys for all n >= a
  bool constant_ok = false;   // l_dR^{(n)} constant for n >= a
  std::vector<int64_t> failures;  // offending n
  bool pass() const { return identity_ok && constant_ok; }
};

StabilityReport stability_check(const LengthLedger& ledger, const DerivedConstants& consts);

// Monotonicity report on supplied Q-lengths: l(Q^(n+1)) >= l(Q^(n)) for all
// n, and l(Q^(a)) >= l(Q^(0)).  These are inputs, not computable from module
// data; the harness only reports whether they satisfy the inequalities.
struct GammaReport {
  bool window_ok = false;      // l(Q^(a)) >= l(Q^(0))
  bool monotone = false;
  std::vector<int64_t> violations;
  bool pass() const { return window_ok && monotone; }
};

GammaReport gamma_check(const std::vector<int64_t>& q_lengths, const DerivedConstants& consts);

struct PTorsionReport {
  bool all_b_within_e = false;
  bool right_ok = false;          // l_dR <= e * l_crys
  bool left_applicable = false;   // all a_i = 1
  bool left_ok = false;           // l_crys <= l_dR when applicable
};

PTorsionReport p_torsion_bound_check(const std::vector<int64_t>& a_exponents,
                                     const std::vector<int64_t>& b_exponents, int64_t e);

// ---- sweep over the small-height window -----------------------------------

struct SweepConfig {
  std::vector<int64_t> p_values = {2, 3};
  int64_t height = 2;
  std::vector<int64_t> e_values;  // empty: every e with e < p(p-1)
  int64_t r_max = 4;
  int64_t max_summands = 3;
  std::optional<int64_t> n_max;           // default a + 2 per (p, e)
  std::vector<std::vector<int64_t>> units = {{1}};  // FUr unit polynomials
  int64_t budget = 1'000'000;
  bool inject_mutant = false;  // test hook: adds one synthetic violating row
  int jobs = 0;                // 0: all processors; 1: serial reference
};

struct SweepRow {
  int64_t p = 0, e = 0, alpha = 0, n = 0;
  std::string module_desc;
  std::string condition;
  std::vector<int64_t> profile;
};

struct SweepReport {
  int64_t cells_run = 0;
  int64_t cells_skipped = 0;
  std::vector<SweepRow> violations;
  bool pass() const { return violations.empty(); }
};

SweepReport sweep_beta(const SweepConfig& config);

// ---- worked examples -------------------------------------------------------

struct LiPetrovReport {
  int64_t p = 0, e = 0;
  int64_t l2_crys = 0, l3_crys = 0, l2_dR = 0, l3_dR = 0;
  InequalityReport deg2, deg3;
  bool deg2_right_equality = false;  // l2_dR = e * l2_crys
  bool deg3_strict = false;          // 1 = l3_crys < l3_dR < e * l3_crys
  bool pass() const { return deg2.pass() && deg3.pass() && deg2_right_equality && deg3_strict; }
};

LiPetrovReport example_li_petrov(int64_t p);

struct BKGroupSchemeReport {
  int64_t p = 0, e = 0;
  BetaProfile profile;  // f(n) = min(e, p^{n+1}) for M = k
  BetaReport beta;
  bool matches_closed_form = false;
};

// M = S/(p, u), the Dieudonne module of the kernel example; e defaults to
// p(p-1) - 1 (the largest ramification inside the theorem window).
BKGroupSchemeReport example_bk_group_scheme(int64_t p, std::optional<int64_t> e = std::nullopt);

}  // namespace bk::conj
