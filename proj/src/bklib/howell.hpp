#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace bk {

// Echelon/Howell normal form for subgroups of (Z/p^m)^dim given by spanning
// rows.  The Howell property (every span element with leading zeros lies in
// the span of the later pivot rows) makes coset representatives canonical,
// which is what the oracle needs to enumerate quotient modules.
class HowellForm {
 public:
  HowellForm(int64_t p, int32_t p_prec, int32_t dim,
             const std::vector<std::vector<int64_t>>& rows);

  int32_t dim() const { return dim_; }
  int64_t modulus() const { return p_pow_; }

  // log_p of the span size.
  int64_t log_span() const { return log_span_; }
  // log_p of the quotient (Z/p^m)^dim / span.
  int64_t log_quotient() const { return (int64_t)p_prec_ * dim_ - log_span_; }

  // Canonical representative of v + span.
  std::vector<int64_t> reduce(std::vector<int64_t> v) const;
  bool contains(std::vector<int64_t> v) const;

  // Residue modulus per coordinate: p^{t_c} at pivot columns, p^m elsewhere.
  // The canonical representatives are exactly the product box of these.
  const std::vector<int64_t>& box() const { return box_; }

 private:
  int64_t p_;
  int32_t p_prec_;
  int64_t p_pow_;
  int32_t dim_;
  int64_t log_span_ = 0;
  std::vector<std::vector<int64_t>> pivot_rows_;  // indexed by pivot order
  std::vector<int32_t> pivot_col_;                // column of each pivot row
  std::vector<int64_t> pivot_val_;                // p^{t} at that column
  std::vector<int64_t> box_;
};

}  // namespace bk
