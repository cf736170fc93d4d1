#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bk::verify {

struct CheckResult {
  std::string name;
  bool pass = true;
  int64_t cells = 0;
  int64_t skipped = 0;
  std::vector<std::string> failures;  // first few failure descriptions
};

struct Options {
  bool full = false;          // full grids (acceptance scale) vs the fast subset
  int jobs = 0;               // 0: all processors, 1: serial reference
  int64_t budget = 1'000'000; // oracle element budget
};

// The individual suites.  Each runs its grid and returns a keyed result.
CheckResult check_frobenius_homomorphism(const Options&);
CheckResult check_frobenius_lift(const Options&);
CheckResult check_eisenstein_mod_p(const Options&);
CheckResult check_frobenius_composition(const Options&);
CheckResult check_dvr_p_valuation(const Options&);
CheckResult check_valuation_table(const Options&);
CheckResult check_formula_vs_oracle(const Options&);
CheckResult check_etor_from_u_torsion(const Options&);
CheckResult check_etor_equals_mod_e(const Options&);
CheckResult check_tor_part_twist_invariant(const Options&);
CheckResult check_three_term_decomposition(const Options&);
CheckResult check_twist_composition(const Options&);
CheckResult check_filtration_additivity(const Options&);
CheckResult check_qf_validation(const Options&);
CheckResult check_qf_alpha_bound(const Options&);
CheckResult check_beta_sweep(const Options&);
CheckResult check_constants(const Options&);
CheckResult check_li_petrov(const Options&);
CheckResult check_stability_consistency(const Options&);
CheckResult check_p_torsion_bounds(const Options&);

std::vector<CheckResult> run_all_checks(const Options&);

}  // namespace bk::verify
