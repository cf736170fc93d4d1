#pragma once

#include <cstdint>
#include <vector>

#include "module.hpp"
#include "oracle.hpp"
#include "ring.hpp"

namespace bk::lengths {

// Test hook: when set, the PUr fast path is off by one.  Used only by the
// mutation-sensitivity check of the verify suite.
extern bool off_by_one_fault;

// p^n * r saturated well below the int64 ceiling, so min(e, .) stays exact.
int64_t twisted_exponent(int64_t p, int64_t n, int64_t r);

// --- the valuation v_n(E) of E in S/(f^(n)), f = u^alpha + p*x -------------

int64_t upsilon_fast(int64_t p, int64_t e, int64_t alpha, int64_t n);  // min(e, p^n*alpha)

// Hypothesis window of the three-case table: p <= e, 1 <= alpha and
// alpha <= floor(e/(p-1)) < p, with e != p*alpha.
bool upsilon_table_window(int64_t p, int64_t e, int64_t alpha);
// alpha; min(e, p*alpha); e   (only meaningful inside the window)
int64_t upsilon_table_value(int64_t e, int64_t p, int64_t alpha, int64_t n);

// Ground truth via dvr_valuation in S/(f^(n)), escalating the working
// p-precision until the value is certified (or provably indistinguishable
// from infinity at the largest representable precision).
Valuation upsilon_true(int64_t p, const EisensteinPoly& E, int64_t alpha,
                       const std::vector<int64_t>& unit, int64_t n);

// Dispatcher: the min formula inside the hypothesis window (where it provably
// equals the table and the true valuation), the true valuation otherwise.
Valuation upsilon_n_E(int64_t p, const EisensteinPoly& E, int64_t alpha,
                      const std::vector<int64_t>& unit, int64_t n);

// Convenience form with the default Eisenstein u^e - p and unit x = 1.
int64_t upsilon_n_E(int64_t p, int64_t e, int64_t alpha, int64_t n);

// --- lengths of E-torsion and mod-E reductions of twists -------------------

// l_{O_K}(M^(n)[E]).  Summand form uses the closed forms (PUr with a >= 2
// routes through the oracle); presentation form is pure oracle.
int64_t e_torsion_length(const BKModule& m, const EisensteinPoly& E, int64_t p, int64_t n,
                         const oracle::Options& opts = {});

// l_{O_K}(M^(n)/E), or of its p^infinity-torsion part when p_infty_only is
// set.  Free summands are infinite without the flag.
int64_t mod_e_length(const BKModule& m, const EisensteinPoly& E, int64_t p, int64_t n,
                     bool p_infty_only, const oracle::Options& opts = {});

// sum_j min(v_n(E), p^n r_j) over u-torsion cyclic summands (PUr with a = 1
// uses v = e).  MixedPPower for PUr with a >= 2: route through
// len_u_torsion_general instead.
int64_t len_u_torsion_sum(const std::vector<CyclicSummand>& summands, const EisensteinPoly& E,
                          int64_t p, int64_t n);

// Length of M^(n)[E] = M^(n)/E for a u-power-torsion module, following the
// p-power devissage: p-torsion layers get the closed form, mixed p-power
// summands are settled by the oracle (the committed ground truth; the graded
// pieces alone do not determine the length).
int64_t len_u_torsion_general(const BKModule& m, const EisensteinPoly& E, int64_t p, int64_t n,
                              const oracle::Options& opts = {});

struct Contributions {
  int64_t tor_u_tf = 0;  // l(M_{tor,u-tf}^(n)/E)
  int64_t u_infty = 0;   // l(M[u^infty]^(n)/E)
  int64_t mbar = 0;      // l(Mbar^(n)[E])
  int64_t total = 0;
};

Contributions length_contributions(const FiltrationPieces& pieces, const EisensteinPoly& E,
                                   int64_t p, int64_t n, const oracle::Options& opts = {});

struct GenBKTotal {
  int64_t etor = 0;          // l(M^(n)[E]) = l(M[u^infty]^(n)[E])
  int64_t mod_e_pinfty = 0;  // three-term total for l((M^(n)/E)[p^infty])
};

GenBKTotal len_genBK_total(const FiltrationPieces& pieces, const EisensteinPoly& E, int64_t p,
                           int64_t n, const oracle::Options& opts = {});

// Oracle-side lengths of the same quantities on an enumerable module, for
// cross-checks: kernel route and independent image-counting route.
int64_t oracle_etor_length(const BKModule& m, const EisensteinPoly& E, int64_t p, int64_t n,
                           const oracle::Options& opts = {});
int64_t oracle_mod_e_length_distinct(const BKModule& m, const EisensteinPoly& E, int64_t p,
                                     int64_t n, const oracle::Options& opts = {});

}  // namespace bk::lengths
