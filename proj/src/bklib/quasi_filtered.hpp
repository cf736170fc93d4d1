#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lengths.hpp"
#include "module.hpp"
#include "oracle.hpp"

namespace bk::qf {

// S-linear map between presentation-mode modules, as a matrix against the
// fixed generator lists (entry (row, col) multiplies source generator col
// into target generator row).
struct LinearMap {
  int32_t rows = 0;
  int32_t cols = 0;
  std::vector<TruncatedSeries> entries;  // row-major, rows*cols

  const TruncatedSeries& at(int32_t r, int32_t c) const { return entries[r * cols + c]; }
  static LinearMap identity(int32_t n, const RingParams& pr);
  static LinearMap zero(int32_t rows, int32_t cols, const RingParams& pr);
  static LinearMap scalar(int32_t n, const TruncatedSeries& s);
  LinearMap compose(const LinearMap& inner) const;  // this ∘ inner
  LinearMap operator-(const LinearMap& o) const;
};

// The quasi-filtered datum: modules M, N with maps f: M^(1) -> N,
// g: N -> M^(1), h: N -> M, h': M -> N subject to h injective and
// g∘f = E^{i-1}, f∘g = E^{i-1}, h'∘h = E, h∘h' = E.
struct QuasiFilteredBK {
  int64_t height = 1;
  BKModule M;  // presentation mode
  BKModule N;
  LinearMap f, g, h, h_prime;
};

enum class Condition {
  h_injective,
  gf_is_E_pow,       // g∘f = E^{i-1} id on M^(1)
  fg_is_E_pow,       // f∘g = E^{i-1} id on N
  hph_is_E,          // h'∘h = E id on N
  hhp_is_E,          // h∘h' = E id on M
  f_well_defined,
  g_well_defined,
  h_well_defined,
  hp_well_defined,
};

const char* condition_name(Condition c);

struct ValidationReport {
  std::vector<Condition> violations;
  bool valid() const { return violations.empty(); }
  bool violates(Condition c) const;
};

ValidationReport validate(const QuasiFilteredBK& qf, const EisensteinPoly& E, int64_t p,
                          const oracle::Options& opts = {});

struct DerivedFrobenius {
  LinearMap phi;  // h∘f : M^(1) -> M
  LinearMap psi;  // g∘h' : M -> M^(1)
  bool relations_hold = false;  // psi∘phi = E^i and phi∘psi = E^i
};

DerivedFrobenius derived_frobenius(const QuasiFilteredBK& qf, const EisensteinPoly& E, int64_t p,
                                   const oracle::Options& opts = {});

struct AlphaBoundReport {
  std::optional<int64_t> alpha;  // absent for the zero module
  int64_t bound = 0;             // floor(e(i-1)/(p-1))
  bool pass = false;
  bool twist_containment = false;  // E^{i-1}*Ann(M) lands in Ann(M^(1))
};

AlphaBoundReport check_alpha_bound(const QuasiFilteredBK& qf, const EisensteinPoly& E, int64_t p,
                                   const oracle::Options& opts = {});

struct CaseVerdict {
  bool applicable = false;
  bool conclusion_holds = false;
  std::string detail;
};

struct TheoremCases {
  CaseVerdict zero_module;        // e(i-1) < p-1  =>  M = 0
  CaseVerdict ann_is_pu;          // e(i-1) = p-1  =>  Ann(M) = (p, u)
  CaseVerdict ann_contains_ppow;  // e(i-1) < 2(p-1)  =>  Ann + (u) contains (p^{i-1}, u)
  CaseVerdict ann_plus_u_is_pu;   // i <= 2, e < p(p-1)  =>  Ann + (u) = (p, u)
};

TheoremCases theorem_cases(const BKModule& m, int64_t height, int64_t e, int64_t p,
                           const oracle::Options& opts = {});

struct SimpleAnnihilator {
  bool p_torsion = false;
  std::optional<int64_t> alpha;
  std::vector<int64_t> unit_coeffs;
};

// Either a p-torsion certificate or an element u^alpha + p*x in the
// annihilator with 1 <= alpha <= ceil(e/(p-1)) < p, for u-power-torsion
// modules in the window i <= 2, e < p(p-1).
SimpleAnnihilator simple_annihilator(const BKModule& m, int64_t height, int64_t e, int64_t p,
                                     const oracle::Options& opts = {});

}  // namespace bk::qf
