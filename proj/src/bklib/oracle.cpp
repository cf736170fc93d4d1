#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace bk::oracle {

namespace {

int64_t mul_mod(int64_t a, int64_t b, int64_t m) { return int64_t((__int128)a * b % m); }

// ambient coordinate of (generator t, u-degree j)
inline int32_t coord(int32_t t, int32_t j, int32_t M) { return t * M + j; }

std::vector<std::vector<int64_t>> relation_rows(const Presentation& pres) {
  const int32_t M = pres.params.u_prec;
  const int32_t D = pres.gens * M;
  std::vector<std::vector<int64_t>> rows;
  rows.reserve(pres.relations.size() * M);
  for (const auto& col : pres.relations) {
    int32_t top = -1;
    for (const auto& s : col) top = std::max(top, s.degree());
    if (top < 0) continue;  // zero column
    for (int32_t shift = 0; shift < M; ++shift) {
      std::vector<int64_t> row(D, 0);
      bool nonzero = false;
      for (int32_t t = 0; t < pres.gens; ++t) {
        const auto& s = col[t];
        for (int32_t j = 0; j + shift < M; ++j) {
          int64_t c = s.coeff(j);
          if (c == 0) continue;
          row[coord(t, j + shift, M)] = c;
          nonzero = true;
        }
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  return rows;
}

void append_bound_rows(std::vector<std::vector<int64_t>>& rows, const Presentation& pres,
                       int32_t N, int32_t B) {
  const int32_t M = pres.params.u_prec;
  const int32_t D = pres.gens * M;
  const int64_t p = pres.params.p;
  if (N < pres.params.p_prec) {
    int64_t pN = checked_pow(p, N);
    for (int32_t t = 0; t < pres.gens; ++t)
      for (int32_t j = 0; j < M; ++j) {
        std::vector<int64_t> row(D, 0);
        row[coord(t, j, M)] = pN;
        rows.push_back(std::move(row));
      }
  }
  if (B < M) {
    for (int32_t t = 0; t < pres.gens; ++t)
      for (int32_t j = B; j < M; ++j) {
        std::vector<int64_t> row(D, 0);
        row[coord(t, j, M)] = 1;
        rows.push_back(std::move(row));
      }
  }
}

std::string presentation_key(const Presentation& pres) {
  std::ostringstream os;
  os << pres.params.p << ":" << pres.params.p_prec << ":" << pres.params.u_prec << ":"
     << pres.gens << "|";
  for (const auto& col : pres.relations) {
    for (const auto& s : col) {
      for (int64_t c : s.coeffs()) os << c << ",";
      os << ";";
    }
    os << "|";
  }
  return os.str();
}

std::mutex g_cache_mutex;
std::map<std::string, std::shared_ptr<const HowellForm>> g_howell_cache;

std::shared_ptr<const HowellForm> howell_for(const Presentation& pres) {
  std::string key = presentation_key(pres);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_howell_cache.find(key);
    if (it != g_howell_cache.end()) return it->second;
  }
  auto rows = relation_rows(pres);
  auto h = std::make_shared<const HowellForm>(pres.params.p, pres.params.p_prec,
                                              pres.gens * pres.params.u_prec, rows);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  if (g_howell_cache.size() > 64) g_howell_cache.clear();
  g_howell_cache.emplace(std::move(key), h);
  return h;
}

struct VecHash {
  size_t operator()(const std::vector<int64_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (int64_t x : v) {
      h ^= (uint64_t)x;
      h *= 1099511628211ull;
    }
    return (size_t)h;
  }
};

}  // namespace

uint64_t Module::cardinality(const Options& opts) const {
  if (is_subset) return subset_elements.size();
  double bits = 0;
  for (int64_t b : rel->box()) bits += std::log2((double)b);
  if (bits > 62) fail(errc::budget_exceeded, "module cardinality overflows the budget");
  uint64_t n = 1;
  for (int64_t b : rel->box()) n *= (uint64_t)b;
  if (n > (uint64_t)opts.budget)
    fail(errc::budget_exceeded, "module cardinality exceeds the enumeration budget");
  return n;
}

bool Module::is_zero_vec(const std::vector<int64_t>& v) const {
  return std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
}

std::vector<int64_t> Module::generator(int32_t t) const {
  std::vector<int64_t> v(dim(), 0);
  v[coord(t, 0, params.u_prec)] = 1;
  return v;
}

std::vector<int64_t> Module::scalar_apply(const TruncatedSeries& s,
                                          const std::vector<int64_t>& v) const {
  if (!(s.params() == params)) fail(errc::params_mismatch, "scalar params mismatch");
  const int32_t M = params.u_prec;
  const int64_t mod = params.p_pow;
  std::vector<int64_t> out(dim(), 0);
  for (int32_t t = 0; t < gens; ++t) {
    const int32_t base = t * M;
    for (int32_t j = 0; j < M; ++j) {
      int64_t c = v[base + j];
      if (c == 0) continue;
      for (int32_t k = 0; j + k < M; ++k) {
        int64_t sc = s.coeff(k);
        if (sc == 0) continue;
        int64_t& slot = out[base + j + k];
        slot = (slot + mul_mod(c, sc, mod)) % mod;
      }
    }
  }
  return out;
}

std::vector<std::vector<int64_t>> Module::list_elements(const Options& opts) const {
  if (is_subset) return subset_elements;
  uint64_t n = cardinality(opts);
  const auto& box = rel->box();
  std::vector<std::vector<int64_t>> out;
  out.reserve(n);
  std::vector<int64_t> cur(dim(), 0);
  while (true) {
    out.push_back(cur);
    int32_t i = 0;
    for (; i < dim(); ++i) {
      if (++cur[i] < box[i]) break;
      cur[i] = 0;
    }
    if (i == dim()) break;
  }
  return out;
}

RingParams summand_working_params(const std::vector<CyclicSummand>& summands, int64_t p,
                                  const RingParams* hint) {
  int32_t m_work = 2, M_work = 3;
  for (const auto& s : summands) {
    switch (s.kind) {
      case SummandKind::Free:
      case SummandKind::PPow:
        fail(errc::infinite_module,
             "free or Ppow summand is infinite at full precision; quotient first");
      case SummandKind::PUr:
        m_work = std::max<int32_t>(m_work, (int32_t)s.a + 1);
        M_work = std::max<int32_t>(M_work, (int32_t)s.r + 2);
        break;
      case SummandKind::FUr: {
        int64_t need = (s.r + s.alpha - 1) / s.alpha + 2;
        m_work = std::max<int32_t>(m_work, (int32_t)need);
        int64_t deg = (int64_t)s.unit_coeffs.size() - 1;
        M_work = std::max<int32_t>(M_work, (int32_t)std::max(s.r + 2, s.alpha + deg + 2));
        break;
      }
    }
  }
  if (hint) {
    m_work = std::max(m_work, hint->p_prec);
    M_work = std::max(M_work, hint->u_prec);
  }
  return RingParams(p, m_work, M_work);
}

Presentation summand_presentation(const std::vector<CyclicSummand>& summands,
                                  const RingParams& params) {
  Presentation pres;
  pres.params = params;
  pres.gens = std::max<int32_t>(1, (int32_t)summands.size());
  auto zero_col = [&]() {
    return std::vector<TruncatedSeries>(pres.gens, TruncatedSeries::zero(params));
  };
  if (summands.empty()) {
    auto col = zero_col();
    col[0] = TruncatedSeries::one(params);  // S/(1) = 0
    pres.relations.push_back(std::move(col));
    return pres;
  }
  for (size_t t = 0; t < summands.size(); ++t) {
    const auto& s = summands[t];
    switch (s.kind) {
      case SummandKind::Free:
        break;
      case SummandKind::PPow: {
        auto col = zero_col();
        col[t] = TruncatedSeries::from_coeffs(params, {checked_pow(params.p, s.a)});
        pres.relations.push_back(std::move(col));
        break;
      }
      case SummandKind::PUr: {
        auto col = zero_col();
        col[t] = TruncatedSeries::from_coeffs(params, {checked_pow(params.p, s.a)});
        pres.relations.push_back(std::move(col));
        col = zero_col();
        col[t] = TruncatedSeries::monomial(params, s.r);
        pres.relations.push_back(std::move(col));
        break;
      }
      case SummandKind::FUr: {
        auto col = zero_col();
        TruncatedSeries unit = TruncatedSeries::from_coeffs(params, s.unit_coeffs);
        col[t] = TruncatedSeries::monomial(params, s.alpha) + unit.scalar_mul(params.p);
        pres.relations.push_back(std::move(col));
        col = zero_col();
        col[t] = TruncatedSeries::monomial(params, s.r);
        pres.relations.push_back(std::move(col));
        break;
      }
    }
  }
  return pres;
}

Module enumerate_quotient(const Presentation& pres) {
  Module m;
  m.params = pres.params;
  m.gens = pres.gens;
  m.pres = pres;
  m.rel = howell_for(pres);
  return m;
}

namespace {

void certify_finite(const Presentation& pres, int32_t dim) {
  if (pres.params.p_prec < 2 || pres.params.u_prec < 2)
    fail(errc::insufficient_precision, "presentation precision too small to certify finiteness");
  auto rows = relation_rows(pres);
  int64_t plain = HowellForm(pres.params.p, pres.params.p_prec, dim, rows).log_span();
  append_bound_rows(rows, pres, pres.params.p_prec - 1, pres.params.u_prec - 1);
  int64_t bounded = HowellForm(pres.params.p, pres.params.p_prec, dim, rows).log_span();
  if (plain != bounded)
    fail(errc::infinite_module,
         "module is not certified finite at working precision; quotient first or raise precision");
}

}  // namespace

Module lattice_view(const BKModule& mod, int64_t p, const RingParams* hint) {
  if (mod.has_summands()) {
    RingParams wp = summand_working_params(*mod.summands, p, hint);
    Presentation pres = summand_presentation(*mod.summands, wp);
    if (pres.gens * wp.u_prec > 4096)
      fail(errc::budget_exceeded, "ambient dimension exceeds the lattice budget");
    return enumerate_quotient(pres);
  }
  if (!mod.has_presentation()) fail(errc::invalid_input, "module has neither form");
  if (mod.presentation->params.p != p) fail(errc::params_mismatch, "presentation prime differs");
  Module m = enumerate_quotient(*mod.presentation);
  certify_finite(*mod.presentation, m.dim());
  return m;
}

Module enumerate(const BKModule& mod, int64_t p, const RingParams* hint, const Options& opts) {
  if (mod.has_summands()) {
    RingParams wp = summand_working_params(*mod.summands, p, hint);
    Presentation pres = summand_presentation(*mod.summands, wp);
    Module m = enumerate_quotient(pres);
    m.cardinality(opts);  // budget check
    return m;
  }
  if (!mod.has_presentation()) fail(errc::invalid_input, "module has neither form");
  const Presentation& pres = *mod.presentation;
  if (pres.params.p != p) fail(errc::params_mismatch, "presentation prime differs");
  Module m = enumerate_quotient(pres);
  // the module must already be killed by (p^{m-1}, u^{M-1}); otherwise the
  // ambient truncation is doing the bounding.
  certify_finite(pres, m.dim());
  m.cardinality(opts);
  return m;
}

int64_t length_via_cardinality(const Module& m, const Options& opts) {
  if (!m.is_subset) {
    m.cardinality(opts);
    return m.full_length();
  }
  uint64_t n = m.subset_elements.size();
  if (n == 0) fail(errc::not_p_power, "empty element set");
  int64_t len = 0;
  uint64_t x = n;
  while (x % (uint64_t)m.params.p == 0) {
    x /= (uint64_t)m.params.p;
    ++len;
  }
  if (x != 1) fail(errc::not_p_power, "cardinality is not a power of p (upstream bug)");
  return len;
}

Module kernel_of_scalar(const Module& m, const TruncatedSeries& s, const Options& opts) {
  Module out;
  out.params = m.params;
  out.gens = m.gens;
  out.rel = m.rel;
  out.is_subset = true;
  auto elems = m.list_elements(opts);
  for (auto& v : elems) {
    auto img = m.nf(m.scalar_apply(s, v));
    if (m.is_zero_vec(img)) out.subset_elements.push_back(std::move(v));
  }
  return out;
}

int64_t kernel_length(const Module& m, const TruncatedSeries& s) {
  if (m.is_subset) fail(errc::invalid_input, "kernel_length expects a full module");
  // |ker s| = |M| / |sM| and |sM| = span(R + s*basis) / span(R)
  const int32_t M = m.params.u_prec;
  auto rows = relation_rows(m.pres);
  for (int32_t t = 0; t < m.gens; ++t)
    for (int32_t j = 0; j < M; ++j) {
      std::vector<int64_t> v(m.dim(), 0);
      v[coord(t, j, M)] = 1;
      rows.push_back(m.scalar_apply(s, v));
    }
  HowellForm h(m.params.p, m.params.p_prec, m.dim(), rows);
  int64_t im = h.log_span() - m.rel->log_span();
  return m.full_length() - im;
}

int64_t image_length_distinct(const Module& m, const TruncatedSeries& s, const Options& opts) {
  auto elems = m.list_elements(opts);
  std::unordered_set<std::vector<int64_t>, VecHash> images;
  images.reserve(elems.size());
  for (const auto& v : elems) images.insert(m.nf(m.scalar_apply(s, v)));
  uint64_t n = images.size();
  int64_t len = 0;
  uint64_t x = n;
  while (x % (uint64_t)m.params.p == 0) {
    x /= (uint64_t)m.params.p;
    ++len;
  }
  if (x != 1) fail(errc::not_p_power, "image cardinality is not a power of p");
  return len;
}

Module u_power_torsion(const Module& m, const Options& opts) {
  Module prev = kernel_of_scalar(m, TruncatedSeries::monomial(m.params, 1), opts);
  for (int32_t B = 2; B <= m.params.u_prec; B *= 2) {
    Module next = kernel_of_scalar(m, TruncatedSeries::monomial(m.params, B), opts);
    if (next.subset_elements.size() == prev.subset_elements.size()) return next;
    prev = std::move(next);
  }
  return prev;
}

Module p_power_torsion(const Module& m, const Options& opts) {
  auto pk = [&](int32_t B) {
    return TruncatedSeries::from_coeffs(m.params, {checked_pow(m.params.p, std::min<int64_t>(B, m.params.p_prec))});
  };
  Module prev = kernel_of_scalar(m, pk(1), opts);
  for (int32_t B = 2; B <= m.params.p_prec; B *= 2) {
    Module next = kernel_of_scalar(m, pk(B), opts);
    if (next.subset_elements.size() == prev.subset_elements.size()) return next;
    prev = std::move(next);
  }
  return prev;
}

bool summands_match_presentation(const BKModule& m, int64_t p, const Options& opts) {
  if (!m.has_summands() || !m.has_presentation()) return true;
  BKModule sum_only;
  sum_only.summands = m.summands;
  BKModule pres_only;
  pres_only.presentation = m.presentation;
  auto a = enumerate(sum_only, p, nullptr, opts);
  auto b = enumerate(pres_only, p, nullptr, opts);
  if (a.full_length() != b.full_length()) return false;
  for (int32_t d : {1, 2, 3}) {
    auto ua = TruncatedSeries::monomial(a.params, d);
    auto ub = TruncatedSeries::monomial(b.params, d);
    if (kernel_length(a, ua) != kernel_length(b, ub)) return false;
    auto pa = TruncatedSeries::from_coeffs(a.params, {checked_pow(p, std::min<int64_t>(d, a.params.p_prec - 1))});
    auto pb = TruncatedSeries::from_coeffs(b.params, {checked_pow(p, std::min<int64_t>(d, b.params.p_prec - 1))});
    if (kernel_length(a, pa) != kernel_length(b, pb)) return false;
    if (kernel_length(a, ua + pa) != kernel_length(b, ub + pb)) return false;
  }
  return true;
}

AnnihilatorShape annihilator_shape(const Module& m, const AnnScanOptions& scan) {
  if (m.is_subset) fail(errc::invalid_input, "annihilator_shape expects a full module");
  AnnihilatorShape out;
  const int64_t p = m.params.p;
  // s kills the module iff it kills every generator
  auto kills = [&](const TruncatedSeries& s) {
    for (int32_t t = 0; t < m.gens; ++t)
      if (!m.is_zero_vec(m.nf(m.scalar_apply(s, m.generator(t))))) return false;
    return true;
  };
  out.p_kills = kills(TruncatedSeries::from_coeffs(m.params, {p}));
  if (m.full_length() == 0) return out;  // zero module: alpha absent

  // alpha: least j with u^j * M contained in p*M
  Presentation aug;
  aug.params = m.params;
  aug.gens = m.gens;
  // membership lattice for pM + relations: p * u^j * e_t rows plus relations;
  // rebuild from the generators of the module
  std::vector<std::vector<int64_t>> rows;
  for (int32_t t = 0; t < m.gens; ++t)
    for (int32_t j = 0; j < m.params.u_prec; ++j) {
      std::vector<int64_t> v(m.dim(), 0);
      v[coord(t, j, m.params.u_prec)] = p % m.params.p_pow;
      rows.push_back(m.rel->reduce(std::move(v)));
    }
  // lattice containing x iff x in pM (inside the quotient): reduce then check
  HowellForm pm(m.params.p, m.params.p_prec, m.dim(), rows);
  auto in_pm = [&](const std::vector<int64_t>& v) { return pm.contains(m.rel->reduce(v)); };

  std::optional<int64_t> alpha;
  for (int32_t j = 0; j <= m.params.u_prec; ++j) {
    bool all_in = true;
    for (int32_t t = 0; t < m.gens && all_in; ++t) {
      auto v = m.scalar_apply(TruncatedSeries::monomial(m.params, j), m.generator(t));
      if (!in_pm(v)) all_in = false;
    }
    if (all_in) { alpha = j; break; }
  }
  if (!alpha)
    fail(errc::search_inconclusive, "no u-power annihilates the module mod p at precision");
  out.alpha = alpha;

  if (out.p_kills) {
    // u^alpha alone kills mod p*M = 0, so u^alpha + p*1 annihilates
    out.simple_element = {*alpha, {1}};
    return out;
  }
  // scan unit candidates x for u^alpha + p*x in Ann
  int64_t digit_mod = checked_pow(p, std::min<int32_t>(scan.digit_prec, m.params.p_prec));
  int32_t deg = std::min<int32_t>(scan.unit_degree, m.params.u_prec);
  std::vector<int64_t> c(deg, 0);
  c[0] = 1;
  while (true) {
    if (c[0] % p != 0) {
      TruncatedSeries x = TruncatedSeries::from_coeffs(m.params, c);
      TruncatedSeries f = TruncatedSeries::monomial(m.params, *alpha) + x.scalar_mul(p);
      if (kills(f)) {
        out.simple_element = {*alpha, c};
        return out;
      }
    }
    int32_t i = 0;
    for (; i < deg; ++i) {
      if (++c[i] < digit_mod) break;
      c[i] = 0;
    }
    if (i == deg) break;
  }
  fail(errc::search_inconclusive,
       "module is not p-torsion and no binomial-with-unit annihilator was found in the scan");
}

int64_t bounded_quotient_length(const Presentation& pres, int32_t N, int32_t B) {
  auto rows = relation_rows(pres);
  append_bound_rows(rows, pres, N, B);
  HowellForm h(pres.params.p, pres.params.p_prec, pres.gens * pres.params.u_prec, rows);
  return h.log_quotient();
}

namespace {

struct SlopeFit {
  int64_t slope = 0;
  int64_t intercept = 0;
  bool ok = false;
};

// Fit G(B) = slope*B + intercept for B large, certified by two consecutive
// matching slope/intercept pairs.  vals[i] holds the value at B = i+1.
SlopeFit fit_line(const std::vector<int64_t>& vals) {
  SlopeFit out;
  for (size_t i = 2; i < vals.size(); ++i) {
    int64_t s1 = vals[i - 1] - vals[i - 2];
    int64_t s2 = vals[i] - vals[i - 1];
    if (s1 != s2) continue;
    int64_t i1 = vals[i - 1] - (int64_t)i * s1;
    int64_t i2 = vals[i] - (int64_t)(i + 1) * s2;
    if (i1 == i2) {
      out.slope = s2;
      out.intercept = i2;
      out.ok = true;
      return out;  // first stabilization wins; later Bs only confirm
    }
  }
  return out;
}

}  // namespace

BruteFiltration brute_force_filtration(const Presentation& pres, const Options& opts) {
  const int32_t m = pres.params.p_prec;
  const int32_t M = pres.params.u_prec;
  if (m < 4 || M < 6)
    fail(errc::hypothesis_unmet,
         "filtration extraction needs p_prec >= 4 and u_prec >= 6 working precision");
  // the lattice computations are cubic in the ambient dimension
  if ((int64_t)pres.gens * M * m > opts.budget / 64)
    fail(errc::budget_exceeded, "bounded quotients exceed the filtration budget");

  // G(N, B) = log |M/(p^N, u^B)M| for B = 1..M-1, each N
  std::vector<int64_t> slope_N(m + 1, 0), inter_N(m + 1, 0);
  for (int32_t N = 1; N <= m; ++N) {
    std::vector<int64_t> g;
    for (int32_t B = 1; B <= M - 1; ++B) g.push_back(bounded_quotient_length(pres, N, B));
    auto fit = fit_line(g);
    if (!fit.ok)
      fail(errc::hypothesis_unmet, "u-direction growth did not stabilize; raise u_prec");
    slope_N[N] = fit.slope;
    inter_N[N] = fit.intercept;
  }

  // slope_N = N*free_rank + sum_j min(a_j, N); the difference stabilizes at
  // free_rank once N passes every a_j.
  BruteFiltration out;
  bool slope_ok = false;
  int32_t Nstar = 0;
  for (int32_t N = 2; N + 1 <= m; ++N) {
    int64_t d1 = slope_N[N] - slope_N[N - 1];
    int64_t d2 = slope_N[N + 1] - slope_N[N];
    if (d1 == d2) {
      out.free_rank = d2;
      Nstar = N;
      slope_ok = true;
      break;
    }
  }
  if (!slope_ok)
    fail(errc::hypothesis_unmet, "p-direction growth did not stabilize; raise p_prec");
  out.tor_rank_layers = slope_N[Nstar] - (int64_t)Nstar * out.free_rank;

  // S1 = l((M/p^N)[u^infty]) = l(M[u^infty]) + l(Mbar) once N >= 2n
  std::optional<int64_t> s1;
  for (int32_t N = Nstar; N + 1 <= m; ++N) {
    if (inter_N[N] == inter_N[N + 1]) { s1 = inter_N[N]; break; }
  }
  if (!s1) fail(errc::hypothesis_unmet, "(M/p^N)[u^infty] did not stabilize; raise p_prec");

  // The Mbar copy inside (M/p^N)[u^infty] is the deeply p-divisible part:
  // honest u-torsion dies under multiplication by p^K once K passes its
  // p-exponent, while the Mbar shadow persists for K up to N minus its
  // exponent.  A(N, K) = l((p^K (M/p^N))[u^infty]) therefore plateaus at
  // l(Mbar) on the interior K-window; take the longest plateau and require
  // agreement at two values of N.
  auto torsion_of_scaled = [&](int32_t N, int32_t K) {
    auto base_rows = relation_rows(pres);
    append_bound_rows(base_rows, pres, N, M);
    int64_t pK = checked_pow(pres.params.p, K);
    std::vector<int64_t> vals;
    for (int32_t B = 1; B <= M - 1; ++B) {
      auto rows_p = base_rows;
      auto rows_up = base_rows;
      for (int32_t t = 0; t < pres.gens; ++t)
        for (int32_t j = 0; j < M; ++j) {
          std::vector<int64_t> v(pres.gens * M, 0);
          v[coord(t, j, M)] = pK % pres.params.p_pow;
          rows_p.push_back(std::move(v));
          std::vector<int64_t> w(pres.gens * M, 0);
          if (j + B < M) w[coord(t, j + B, M)] = pK % pres.params.p_pow;
          rows_up.push_back(std::move(w));
        }
      int64_t sp = HowellForm(pres.params.p, m, pres.gens * M, rows_p).log_span();
      int64_t sub = HowellForm(pres.params.p, m, pres.gens * M, rows_up).log_span();
      vals.push_back(sp - sub);  // log |ker(u^B on p^K Q_N)|
    }
    auto fit = fit_line(vals);
    if (!fit.ok)
      fail(errc::hypothesis_unmet, "scaled torsion did not stabilize; raise u_prec");
    return fit.intercept;
  };

  auto longest_plateau = [&](int32_t N) -> std::optional<int64_t> {
    std::vector<int64_t> a;
    for (int32_t K = 1; K <= N - 1; ++K) a.push_back(torsion_of_scaled(N, K));
    if (a.empty()) return std::nullopt;
    int32_t best_len = 0;
    int64_t best_val = a.back();
    int32_t run = 1;
    for (size_t i = 1; i < a.size(); ++i) {
      run = (a[i] == a[i - 1]) ? run + 1 : 1;
      if (run > best_len) { best_len = run; best_val = a[i]; }
    }
    if (best_len < 2) return std::nullopt;
    return best_val;
  };

  auto mb1 = longest_plateau(m - 1);
  auto mb2 = longest_plateau(m);
  if (!mb1 || !mb2 || *mb1 != *mb2)
    fail(errc::hypothesis_unmet, "Mbar plateau did not stabilize; raise p_prec");
  out.mbar_len = *mb1;
  out.u_infty_len = *s1 - out.mbar_len;
  if (out.u_infty_len < 0)
    fail(errc::hypothesis_unmet, "negative u-torsion length; working precision inconsistent");
  return out;
}

}  // namespace bk::oracle
