#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace bk {

// Exact arithmetic in Z_p[[u]] modulo (p^m, u^M).  Coefficients are residues
// in [0, p^m); series are truncated at u^M.  Everything is a value type and
// immutable after construction, so sharing across threads is safe.

struct RingParams {
  int64_t p = 2;       // prime
  int32_t p_prec = 1;  // m >= 1; coefficients live in Z/p^m
  int32_t u_prec = 1;  // M >= 1; series truncated at u^M
  int64_t p_pow = 2;   // cached p^m

  RingParams() = default;
  RingParams(int64_t p_, int32_t p_prec_, int32_t u_prec_);

  bool operator==(const RingParams& o) const {
    return p == o.p && p_prec == o.p_prec && u_prec == o.u_prec;
  }
};

bool is_prime(int64_t n);

// p^k, failing loudly on signed-64 overflow.
int64_t checked_pow(int64_t p, int64_t k);

// Multiplicative inverse of a mod p^m (a must be prime to p).
int64_t inverse_mod(int64_t a, int64_t p, int64_t p_pow);

class TruncatedSeries {
 public:
  explicit TruncatedSeries(const RingParams& params);
  static TruncatedSeries zero(const RingParams& params) { return TruncatedSeries(params); }
  static TruncatedSeries one(const RingParams& params);
  static TruncatedSeries monomial(const RingParams& params, int64_t deg, int64_t coeff = 1);
  // coeffs[j] is the coefficient of u^j; extra entries beyond u_prec are rejected.
  static TruncatedSeries from_coeffs(const RingParams& params, const std::vector<int64_t>& coeffs);

  const RingParams& params() const { return params_; }
  int64_t coeff(int32_t j) const { return j < params_.u_prec ? c_[j] : 0; }
  const std::vector<int64_t>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_unit() const { return c_[0] % params_.p != 0; }
  // largest j with nonzero coefficient, or -1.
  int32_t degree() const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  bool operator==(const TruncatedSeries& o) const;

  TruncatedSeries scalar_mul(int64_t c) const;
  TruncatedSeries shift(int32_t k) const;  // multiply by u^k

  // u |-> u^{p^n}; coefficients unchanged, terms of degree >= u_prec dropped.
  TruncatedSeries frobenius(int64_t n) const;

  // Unit inverse; throws invalid_input if the constant term is divisible by p.
  TruncatedSeries inverse() const;

  // Reinterpret with different precision.  Raising u_prec treats the value as
  // the polynomial formed by its stored coefficients; p_prec may only be
  // lowered (higher p-adic digits are unknown).
  TruncatedSeries with_params(const RingParams& np) const;

 private:
  RingParams params_;
  std::vector<int64_t> c_;  // size u_prec, residues in [0, p_pow)
  void check_same(const TruncatedSeries& o) const;
};

// Monic Eisenstein polynomial E = u^e + c_{e-1}u^{e-1} + ... + c_0 over Z,
// with p | c_j for all j and p^2 not dividing c_0.  Coefficients are kept as
// raw integers so E can be rendered at any working precision.
struct EisensteinPoly {
  int64_t e = 1;               // degree
  std::vector<int64_t> lower;  // c_0 .. c_{e-1}

  static EisensteinPoly default_poly(int64_t p, int64_t e);  // u^e - p
  void validate(int64_t p) const;
  TruncatedSeries to_series(const RingParams& params) const;  // needs u_prec >= e+1
};

// E(u^{p^n}) as a series; InsufficientPrecision unless u_prec >= p^n*e + 1.
TruncatedSeries twist_eisenstein(const EisensteinPoly& E, int64_t n, const RingParams& params);

struct Valuation {
  bool infinite = false;
  int64_t v = 0;

  static Valuation infinity() { return {true, 0}; }
  static Valuation finite(int64_t v) { return {false, v}; }
  bool operator==(const Valuation& o) const {
    return infinite == o.infinite && (infinite || v == o.v);
  }
};

int64_t min_with(const Valuation& v, int64_t cap);

// u-adic valuation of the image of x in S/(f) where f = u^alpha + p*f_unit
// and f_unit is a unit.  S/(f) is a complete DVR with uniformiser u in which
// p has valuation alpha.  Returns infinity when the image cannot be
// distinguished from 0 at working precision; throws insufficient_precision
// when a finite candidate valuation cannot be certified below the horizon
// min(p_prec*alpha, u_prec).
Valuation dvr_valuation(const TruncatedSeries& x, int64_t f_alpha, const TruncatedSeries& f_unit);

// Minimal u-truncation that keeps every twist and E-operation in a session
// exact: p^n_max * max(max_r, e, ceil(e/(p-1))) + 1.
int64_t required_u_prec(int64_t max_r, int64_t e, int64_t n_max, int64_t p);

}  // namespace bk
