#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "howell.hpp"
#include "module.hpp"
#include "ring.hpp"

namespace bk::oracle {

// Brute-force ground truth.  A module is enumerated as the quotient of the
// finite ambient group (Z/p^m [u]/u^M)^gens by the relation lattice; the
// Howell form of the lattice makes coset representatives canonical, and the
// representative box is the explicit element set.  All length computations
// here are subgroup-index counts, independent of the formula fast paths.

struct Options {
  int64_t budget = 1'000'000;  // element-count ceiling for explicit listings
};

class Module {
 public:
  RingParams params;
  int32_t gens = 0;
  Presentation pres;  // the presentation the lattice was built from
  std::shared_ptr<const HowellForm> rel;

  // Subset mode (kernels): explicit canonical representatives.
  bool is_subset = false;
  std::vector<std::vector<int64_t>> subset_elements;

  int32_t dim() const { return gens * params.u_prec; }

  // log_p of the cardinality for the full quotient.
  int64_t full_length() const { return rel->log_quotient(); }

  uint64_t cardinality(const Options& opts) const;

  std::vector<int64_t> nf(std::vector<int64_t> v) const { return rel->reduce(std::move(v)); }
  bool is_zero_vec(const std::vector<int64_t>& v) const;

  std::vector<int64_t> generator(int32_t t) const;
  // multiply an ambient vector by a scalar series (params must match)
  std::vector<int64_t> scalar_apply(const TruncatedSeries& s, const std::vector<int64_t>& v) const;

  // Explicit element listing; BudgetExceeded beyond opts.budget.
  std::vector<std::vector<int64_t>> list_elements(const Options& opts) const;
};

// Working precision adequate for the summand list (and any scalar of degree
// within hint).  Exact: the truncated quotient equals the true module.
RingParams summand_working_params(const std::vector<CyclicSummand>& summands, int64_t p,
                                  const RingParams* hint);

// Presentation of a direct sum of cyclic summands at the given params.
Presentation summand_presentation(const std::vector<CyclicSummand>& summands,
                                  const RingParams& params);

// Enumerate a BKModule.  Summand form picks exact working parameters (hint
// enlarges them, e.g. to fit a scalar's degree); Free and Ppow summands raise
// InfiniteModule.  Presentation form enumerates at the presentation's own
// params and certifies that the truncation did not cut the module; when the
// module is not finite at that precision it raises InfiniteModule.
Module enumerate(const BKModule& m, int64_t p, const RingParams* hint, const Options& opts);

// Quotient at working precision without the finiteness certificate (for
// working-precision checks on infinite modules).
Module enumerate_quotient(const Presentation& pres);

// Same working-quotient construction as enumerate but without the element
// budget: only lattice-level (subgroup index) operations are intended.  A
// dimension guard still raises BudgetExceeded on absurdly large ambients.
Module lattice_view(const BKModule& m, int64_t p, const RingParams* hint);

int64_t length_via_cardinality(const Module& m, const Options& opts);

// Kernel of multiplication by s, as an explicit submodule listing.
Module kernel_of_scalar(const Module& m, const TruncatedSeries& s, const Options& opts);

// log_p |ker(s)| via subgroup indices; no element materialization.
int64_t kernel_length(const Module& m, const TruncatedSeries& s);

// log_p |im(s)| by applying s to every element and counting distinct images.
// Deliberately independent of kernel_length (used to cross-check it).
int64_t image_length_distinct(const Module& m, const TruncatedSeries& s, const Options& opts);

// Stable kernel of u^B (resp. p^B): doubles B until the kernel stops growing.
Module u_power_torsion(const Module& m, const Options& opts);
Module p_power_torsion(const Module& m, const Options& opts);

// On-demand consistency check for modules carrying both forms: the summand
// and presentation quotients must agree in cardinality and in the kernel
// profile of u, p and u+p at matched working precision.
bool summands_match_presentation(const BKModule& m, int64_t p, const Options& opts);

struct AnnihilatorShape {
  bool p_kills = false;
  std::optional<int64_t> alpha;  // Ann(N) + (p) = (p, u^alpha); absent for N = 0
  // (alpha, unit coefficients) with u^alpha + p*x in Ann(N), when found
  std::optional<std::pair<int64_t, std::vector<int64_t>>> simple_element;
};

struct AnnScanOptions {
  int32_t unit_degree = 3;   // scan units of degree < unit_degree
  int32_t digit_prec = 2;    // coefficients scanned mod p^digit_prec
};

AnnihilatorShape annihilator_shape(const Module& m, const AnnScanOptions& scan = {});

// Filtration data recovered from bounded quotient sizes.  u_infty_len is
// l(M[u^infty]); tor_rank_layers is the total k[[u]]-layer count of
// M_{tor,u-tf} (sum of p-exponents), whose mod-E length is e times it;
// mbar_len comes from l((M/p^N)[u^infty]) - l(M[u^infty]) at stabilized N.
struct BruteFiltration {
  int64_t u_infty_len = 0;
  int64_t tor_rank_layers = 0;
  int64_t free_rank = 0;
  int64_t mbar_len = 0;
};

BruteFiltration brute_force_filtration(const Presentation& pres, const Options& opts);

// log_p |M/(p^N, u^B)M| for a presentation at its own params (N <= p_prec,
// B <= u_prec; the ambient bound applies where the argument equals it).
int64_t bounded_quotient_length(const Presentation& pres, int32_t N, int32_t B);

}  // namespace bk::oracle
