#include "ring.hpp"

#include <algorithm>
#include <limits>

namespace bk {

namespace {

constexpr int64_t kMaxModulus = int64_t(1) << 62;

int64_t mod_reduce(int64_t v, int64_t m) {
  int64_t r = v % m;
  return r < 0 ? r + m : r;
}

int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
  return int64_t((__int128)a * b % m);
}

}  // namespace

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t checked_pow(int64_t p, int64_t k) {
  int64_t r = 1;
  for (int64_t i = 0; i < k; ++i) {
    if (r > std::numeric_limits<int64_t>::max() / p)
      fail(errc::overflow, "integer power overflows 64 bits");
    r *= p;
  }
  return r;
}

int64_t inverse_mod(int64_t a, int64_t p, int64_t p_pow) {
  a = mod_reduce(a, p_pow);
  if (a % p == 0) fail(errc::invalid_input, "not a unit mod p^m");
  // Hensel lift of the mod-p inverse; doubles correct digits each round.
  int64_t inv = 1;
  {
    int64_t am = a % p;
    for (int64_t c = 1; c < p; ++c)
      if (c * am % p == 1) { inv = c; break; }
  }
  while (mul_mod(a, inv, p_pow) != 1) {
    int64_t t = mod_reduce(2 - mul_mod(a, inv, p_pow), p_pow);
    inv = mul_mod(inv, t, p_pow);
  }
  return inv;
}

RingParams::RingParams(int64_t p_, int32_t p_prec_, int32_t u_prec_)
    : p(p_), p_prec(p_prec_), u_prec(u_prec_) {
  if (!is_prime(p)) fail(errc::invalid_input, "p must be prime");
  if (p_prec < 1 || u_prec < 1) fail(errc::invalid_input, "precisions must be >= 1");
  p_pow = 1;
  for (int32_t i = 0; i < p_prec; ++i) {
    if (p_pow > kMaxModulus / p)
      fail(errc::overflow, "p^p_prec exceeds the coefficient modulus ceiling");
    p_pow *= p;
  }
}

TruncatedSeries::TruncatedSeries(const RingParams& params)
    : params_(params), c_(params.u_prec, 0) {}

TruncatedSeries TruncatedSeries::one(const RingParams& params) {
  TruncatedSeries r(params);
  r.c_[0] = 1 % params.p_pow;
  return r;
}

TruncatedSeries TruncatedSeries::monomial(const RingParams& params, int64_t deg, int64_t coeff) {
  TruncatedSeries r(params);
  if (deg < 0) fail(errc::invalid_input, "negative degree");
  if (deg < params.u_prec) r.c_[deg] = mod_reduce(coeff, params.p_pow);
  return r;
}

TruncatedSeries TruncatedSeries::from_coeffs(const RingParams& params,
                                             const std::vector<int64_t>& coeffs) {
  if ((int64_t)coeffs.size() > params.u_prec)
    fail(errc::insufficient_precision, "coefficient list longer than u_prec");
  TruncatedSeries r(params);
  for (size_t j = 0; j < coeffs.size(); ++j) r.c_[j] = mod_reduce(coeffs[j], params.p_pow);
  return r;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](int64_t v) { return v == 0; });
}

int32_t TruncatedSeries::degree() const {
  for (int32_t j = params_.u_prec - 1; j >= 0; --j)
    if (c_[j] != 0) return j;
  return -1;
}

void TruncatedSeries::check_same(const TruncatedSeries& o) const {
  if (!(params_ == o.params_))
    fail(errc::params_mismatch, "mixed ring parameters in arithmetic");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_same(o);
  TruncatedSeries r(params_);
  for (int32_t j = 0; j < params_.u_prec; ++j) {
    int64_t v = c_[j] + o.c_[j];
    r.c_[j] = v >= params_.p_pow ? v - params_.p_pow : v;
  }
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_same(o);
  TruncatedSeries r(params_);
  for (int32_t j = 0; j < params_.u_prec; ++j) {
    int64_t v = c_[j] - o.c_[j];
    r.c_[j] = v < 0 ? v + params_.p_pow : v;
  }
  return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r(params_);
  for (int32_t j = 0; j < params_.u_prec; ++j)
    r.c_[j] = c_[j] == 0 ? 0 : params_.p_pow - c_[j];
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_same(o);
  TruncatedSeries r(params_);
  const int32_t M = params_.u_prec;
  for (int32_t i = 0; i < M; ++i) {
    if (c_[i] == 0) continue;
    for (int32_t j = 0; i + j < M; ++j) {
      if (o.c_[j] == 0) continue;
      int64_t& slot = r.c_[i + j];
      slot = (slot + mul_mod(c_[i], o.c_[j], params_.p_pow)) % params_.p_pow;
    }
  }
  return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return params_ == o.params_ && c_ == o.c_;
}

TruncatedSeries TruncatedSeries::scalar_mul(int64_t c) const {
  TruncatedSeries r(params_);
  c = mod_reduce(c, params_.p_pow);
  for (int32_t j = 0; j < params_.u_prec; ++j)
    r.c_[j] = mul_mod(c_[j], c, params_.p_pow);
  return r;
}

TruncatedSeries TruncatedSeries::shift(int32_t k) const {
  TruncatedSeries r(params_);
  for (int32_t j = 0; j + k < params_.u_prec; ++j) r.c_[j + k] = c_[j];
  return r;
}

TruncatedSeries TruncatedSeries::frobenius(int64_t n) const {
  if (n < 0) fail(errc::invalid_input, "negative Frobenius power");
  if (n == 0) return *this;
  TruncatedSeries r(params_);
  r.c_[0] = c_[0];
  int64_t step = 1;  // p^n, saturated once it exceeds u_prec
  for (int64_t i = 0; i < n && step <= params_.u_prec; ++i) step *= params_.p;
  if (step <= params_.u_prec)
    for (int32_t j = 1; j < params_.u_prec; ++j)
      if (c_[j] != 0 && j <= (params_.u_prec - 1) / step) r.c_[j * step] = c_[j];
  return r;
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (!is_unit()) fail(errc::invalid_input, "series is not a unit");
  TruncatedSeries r(params_);
  int64_t inv0 = inverse_mod(c_[0], params_.p, params_.p_pow);
  r.c_[0] = inv0;
  for (int32_t j = 1; j < params_.u_prec; ++j) {
    int64_t acc = 0;
    for (int32_t t = 1; t <= j; ++t)
      acc = (acc + mul_mod(c_[t], r.c_[j - t], params_.p_pow)) % params_.p_pow;
    r.c_[j] = mul_mod(params_.p_pow - acc, inv0, params_.p_pow) % params_.p_pow;
  }
  return r;
}

TruncatedSeries TruncatedSeries::with_params(const RingParams& np) const {
  if (np.p != params_.p) fail(errc::params_mismatch, "cannot change the prime");
  if (np.p_prec > params_.p_prec)
    fail(errc::insufficient_precision, "cannot raise p-adic precision of a residue");
  TruncatedSeries r(np);
  for (int32_t j = 0; j < std::min(np.u_prec, params_.u_prec); ++j)
    r.c_[j] = c_[j] % np.p_pow;
  return r;
}

EisensteinPoly EisensteinPoly::default_poly(int64_t p, int64_t e) {
  EisensteinPoly E;
  E.e = e;
  E.lower.assign(e, 0);
  E.lower[0] = -p;
  E.validate(p);
  return E;
}

void EisensteinPoly::validate(int64_t p) const {
  if (e < 1) fail(errc::invalid_input, "Eisenstein degree must be >= 1");
  if ((int64_t)lower.size() != e) fail(errc::invalid_input, "coefficient count must equal degree");
  for (int64_t c : lower)
    if (c % p != 0) fail(errc::invalid_input, "Eisenstein condition: p must divide every lower coefficient");
  if ((lower[0] / p) % p == 0)
    fail(errc::invalid_input, "Eisenstein condition: p^2 must not divide the constant term");
}

TruncatedSeries EisensteinPoly::to_series(const RingParams& params) const {
  if (params.u_prec < e + 1)
    fail(errc::insufficient_precision, "u_prec too small to hold the Eisenstein polynomial");
  std::vector<int64_t> c = lower;
  c.resize(e + 1, 0);
  c[e] = 1;
  return TruncatedSeries::from_coeffs(params, c);
}

TruncatedSeries twist_eisenstein(const EisensteinPoly& E, int64_t n, const RingParams& params) {
  if (n < 0) fail(errc::invalid_input, "negative twist");
  int64_t pn = checked_pow(params.p, n);
  if ((__int128)pn * E.e + 1 > params.u_prec)
    fail(errc::insufficient_precision, "u_prec < p^n*e + 1 for the twisted Eisenstein polynomial");
  TruncatedSeries r = TruncatedSeries::monomial(params, pn * E.e, 1);
  for (int64_t j = 0; j < E.e; ++j)
    if (E.lower[j] != 0)
      r = r + TruncatedSeries::monomial(params, pn * j, E.lower[j]);
  return r;
}

int64_t min_with(const Valuation& v, int64_t cap) {
  return v.infinite ? cap : std::min(v.v, cap);
}

Valuation dvr_valuation(const TruncatedSeries& x, int64_t f_alpha, const TruncatedSeries& f_unit) {
  if (!(x.params() == f_unit.params()))
    fail(errc::params_mismatch, "x and f_unit carry different ring parameters");
  if (f_alpha < 1) fail(errc::invalid_input, "f_alpha must be >= 1");
  if (!f_unit.is_unit()) fail(errc::invalid_input, "f_unit must be a unit");

  const RingParams& pr = x.params();
  const int32_t M = pr.u_prec;
  const int64_t mod = pr.p_pow;
  const int64_t p = pr.p;

  // Reduce x modulo f = u^alpha + p*f_unit by substituting u^alpha |-> -p*f_unit
  // until all terms of degree >= alpha have been pushed below it.  Every pass
  // multiplies the surviving high part by p, so p_prec passes suffice.
  std::vector<int64_t> r(x.coeffs());
  const int64_t alpha = std::min<int64_t>(f_alpha, M);  // degrees >= M are already gone
  for (int32_t pass = 0; pass <= pr.p_prec; ++pass) {
    bool high_nonzero = false;
    for (int64_t j = alpha; j < M; ++j)
      if (r[j] != 0) { high_nonzero = true; break; }
    if (!high_nonzero) break;
    std::vector<int64_t> next(r.begin(), r.begin() + alpha);
    next.resize(M, 0);
    for (int64_t j = alpha; j < M; ++j) {
      if (r[j] == 0) continue;
      // u^j = u^{j-alpha} * u^alpha == -p * f_unit * u^{j-alpha}
      int64_t c = (__int128)r[j] * (mod - p % mod) % mod;
      for (int64_t t = 0; j - alpha + t < M; ++t) {
        int64_t fu = f_unit.coeff((int32_t)t);
        if (fu == 0) continue;
        int64_t& slot = next[j - alpha + t];
        slot = (slot + (__int128)c * fu % mod) % mod;
      }
    }
    r.swap(next);
  }

  // The image now has a residue polynomial of degree < alpha (within u_prec);
  // in the DVR the valuation of c*u^j is j + alpha*v_p(c), and these values
  // are pairwise distinct across j, so the minimum is exact.
  const int64_t horizon = std::min<int64_t>((int64_t)pr.p_prec * f_alpha, M);
  bool any = false;
  int64_t best = 0;
  for (int64_t j = 0; j < alpha && j < M; ++j) {
    if (r[j] == 0) continue;
    int64_t vp = 0;
    int64_t c = r[j];
    while (c % p == 0) { c /= p; ++vp; }
    int64_t cand = j + f_alpha * vp;
    if (!any || cand < best) { best = cand; any = true; }
  }
  if (!any) return Valuation::infinity();
  if (best < horizon) return Valuation::finite(best);
  fail(errc::insufficient_precision,
       "valuation candidate not certifiable below the precision horizon");
}

int64_t required_u_prec(int64_t max_r, int64_t e, int64_t n_max, int64_t p) {
  if (max_r < 1 || e < 1 || n_max < 0 || p < 2)
    fail(errc::invalid_input, "required_u_prec expects positive inputs");
  int64_t alpha_bound = (e + p - 2) / (p - 1);  // ceil(e/(p-1))
  int64_t base = std::max({max_r, e, alpha_bound});
  int64_t pn = checked_pow(p, n_max);
  if (base > (std::numeric_limits<int64_t>::max() - 1) / pn)
    fail(errc::overflow, "required u-precision overflows 64 bits");
  return pn * base + 1;
}

}  // namespace bk
