#include "howell.hpp"

#include <algorithm>

#include "ring.hpp"

namespace bk {

namespace {

int64_t mul_mod(int64_t a, int64_t b, int64_t m) { return int64_t((__int128)a * b % m); }

// v -= q*w (mod m)
void submul(std::vector<int64_t>& v, const std::vector<int64_t>& w, int64_t q, int64_t m) {
  if (q == 0) return;
  for (size_t i = 0; i < v.size(); ++i) {
    if (w[i] == 0) continue;
    int64_t t = v[i] - mul_mod(q, w[i], m);
    v[i] = t < 0 ? t + m : t;
  }
}

}  // namespace

HowellForm::HowellForm(int64_t p, int32_t p_prec, int32_t dim,
                       const std::vector<std::vector<int64_t>>& rows)
    : p_(p), p_prec_(p_prec), dim_(dim) {
  p_pow_ = checked_pow(p, p_prec);
  std::vector<std::vector<int64_t>> work;
  work.reserve(rows.size());
  for (const auto& r : rows) {
    if ((int32_t)r.size() != dim) fail(errc::invalid_input, "row dimension mismatch");
    std::vector<int64_t> v(r);
    for (auto& x : v) {
      x %= p_pow_;
      if (x < 0) x += p_pow_;
    }
    work.push_back(std::move(v));
  }

  for (int32_t c = 0; c < dim_; ++c) {
    // pick the row with minimal p-valuation at column c
    int best = -1;
    int64_t best_val = p_prec_ + 1;
    for (size_t i = 0; i < work.size(); ++i) {
      if (work[i][c] == 0) continue;
      int64_t v = 0, x = work[i][c];
      while (x % p_ == 0) { x /= p_; ++v; }
      if (v < best_val) { best_val = v; best = (int)i; }
    }
    if (best < 0) continue;

    std::vector<int64_t> piv = std::move(work[best]);
    work.erase(work.begin() + best);
    // normalize the pivot entry to p^t
    int64_t pt = checked_pow(p_, best_val);
    int64_t unit = piv[c] / pt;
    int64_t uinv = inverse_mod(unit, p_, p_pow_);
    for (auto& x : piv) x = mul_mod(x, uinv, p_pow_);

    for (auto& row : work) {
      if (row[c] == 0) continue;
      submul(row, piv, row[c] / pt, p_pow_);
    }
    // Howell augmentation: p^{m-t}*piv spans the column-c annihilator tail
    if (best_val > 0) {
      std::vector<int64_t> tail(piv);
      int64_t scale = p_pow_ / pt;  // p^{m-t}
      for (auto& x : tail) x = mul_mod(x, scale, p_pow_);
      bool nonzero = std::any_of(tail.begin(), tail.end(), [](int64_t v) { return v != 0; });
      if (nonzero) work.push_back(std::move(tail));
    }

    pivot_rows_.push_back(std::move(piv));
    pivot_col_.push_back(c);
    pivot_val_.push_back(pt);
    log_span_ += p_prec_ - best_val;
  }

  box_.assign(dim_, p_pow_);
  for (size_t k = 0; k < pivot_col_.size(); ++k) box_[pivot_col_[k]] = pivot_val_[k];

  // reduce pivot rows against later pivots so the stored form is canonical
  for (size_t k = 0; k < pivot_rows_.size(); ++k)
    for (size_t l = k + 1; l < pivot_rows_.size(); ++l) {
      int32_t c = pivot_col_[l];
      int64_t q = pivot_rows_[k][c] / pivot_val_[l];
      submul(pivot_rows_[k], pivot_rows_[l], q, p_pow_);
    }
}

std::vector<int64_t> HowellForm::reduce(std::vector<int64_t> v) const {
  if ((int32_t)v.size() != dim_) fail(errc::invalid_input, "vector dimension mismatch");
  for (auto& x : v) {
    x %= p_pow_;
    if (x < 0) x += p_pow_;
  }
  for (size_t k = 0; k < pivot_rows_.size(); ++k) {
    int64_t q = v[pivot_col_[k]] / pivot_val_[k];
    submul(v, pivot_rows_[k], q, p_pow_);
  }
  return v;
}

bool HowellForm::contains(std::vector<int64_t> v) const {
  auto r = reduce(std::move(v));
  return std::all_of(r.begin(), r.end(), [](int64_t x) { return x == 0; });
}

}  // namespace bk
