#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ring.hpp"

namespace bk {

// Cyclic summand shapes of generalised Breuil-Kisin modules.  These are the
// four quotients the length formulas manipulate:
//   Free        S
//   PPow(a)     S/p^a
//   PUr(a,r)    S/(p^a, u^r)
//   FUr(a,x,r)  S/(u^alpha + p*x, u^r), x a unit given by its coefficients
enum class SummandKind { Free, PPow, PUr, FUr };

struct CyclicSummand {
  SummandKind kind = SummandKind::Free;
  int64_t a = 0;                     // p-exponent (PPow, PUr)
  int64_t alpha = 0;                 // u-exponent in the binomial (FUr)
  int64_t r = 0;                     // u-power truncation (PUr, FUr)
  std::vector<int64_t> unit_coeffs;  // unit polynomial x (FUr)

  static CyclicSummand free_rank_one();
  static CyclicSummand ppow(int64_t a);
  static CyclicSummand pur(int64_t a, int64_t r);
  static CyclicSummand fur(int64_t alpha, std::vector<int64_t> unit_coeffs, int64_t r);

  void validate(int64_t p) const;
  bool operator==(const CyclicSummand& o) const;
  bool operator<(const CyclicSummand& o) const;  // canonical order
  std::string describe() const;
};

// A presentation S^gens / <columns of relations>.  Each relation is a column
// vector of series against the fixed generator list.
struct Presentation {
  RingParams params;
  int32_t gens = 0;
  std::vector<std::vector<TruncatedSeries>> relations;  // relations[c][row]

  void validate() const;
  int32_t max_relation_degree() const;
};

struct BKModule {
  std::optional<std::vector<CyclicSummand>> summands;  // canonical-sorted
  std::optional<Presentation> presentation;

  static BKModule from_summands(std::vector<CyclicSummand> s, int64_t p);
  static BKModule zero();
  static BKModule from_presentation(Presentation pres);

  bool has_summands() const { return summands.has_value(); }
  bool has_presentation() const { return presentation.has_value(); }
  bool is_zero_summand_form() const { return summands && summands->empty(); }
  bool operator==(const BKModule& o) const;
  std::string describe() const;
};

// Base change along phi^n.  Summand mode multiplies u-exponents by p^n and
// twists the unit; presentation mode applies frobenius entrywise to the
// relation matrix (raising InsufficientPrecision when a relation degree would
// overflow the truncation).
BKModule twist(const BKModule& m, int64_t n, int64_t p);
CyclicSummand twist_summand(const CyclicSummand& s, int64_t n, int64_t p);

// The canonical four-piece decomposition.  In summand mode mbar is zero; it
// measures the cokernel of M_tf inside its reflexive hull and is supplied
// independently when known.
struct FiltrationPieces {
  BKModule u_infty = BKModule::zero();   // killed by a power of p and of u
  BKModule tor_u_tf = BKModule::zero();  // killed by a power of p, u-torsion free
  int64_t free_rank = 0;
  BKModule mbar = BKModule::zero();      // killed by a power of (p, u)

  void validate(int64_t p) const;
};

FiltrationPieces filtration(const BKModule& m, int64_t p);

}  // namespace bk
