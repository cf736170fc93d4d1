#include "module.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace bk {

CyclicSummand CyclicSummand::free_rank_one() { return {SummandKind::Free, 0, 0, 0, {}}; }

CyclicSummand CyclicSummand::ppow(int64_t a) { return {SummandKind::PPow, a, 0, 0, {}}; }

CyclicSummand CyclicSummand::pur(int64_t a, int64_t r) { return {SummandKind::PUr, a, 0, r, {}}; }

CyclicSummand CyclicSummand::fur(int64_t alpha, std::vector<int64_t> unit_coeffs, int64_t r) {
  return {SummandKind::FUr, 0, alpha, r, std::move(unit_coeffs)};
}

void CyclicSummand::validate(int64_t p) const {
  switch (kind) {
    case SummandKind::Free:
      break;
    case SummandKind::PPow:
      if (a < 1) fail(errc::invalid_input, "PPow exponent must be >= 1");
      break;
    case SummandKind::PUr:
      if (a < 1 || r < 1) fail(errc::invalid_input, "PUr exponents must be >= 1");
      break;
    case SummandKind::FUr:
      if (alpha < 1 || r < 1) fail(errc::invalid_input, "FUr exponents must be >= 1");
      if (unit_coeffs.empty() || unit_coeffs[0] % p == 0)
        fail(errc::invalid_input, "FUr unit must have constant coefficient prime to p");
      break;
  }
}

bool CyclicSummand::operator==(const CyclicSummand& o) const {
  return kind == o.kind && a == o.a && alpha == o.alpha && r == o.r &&
         unit_coeffs == o.unit_coeffs;
}

bool CyclicSummand::operator<(const CyclicSummand& o) const {
  return std::tie(kind, a, alpha, r, unit_coeffs) <
         std::tie(o.kind, o.a, o.alpha, o.r, o.unit_coeffs);
}

std::string CyclicSummand::describe() const {
  std::ostringstream os;
  switch (kind) {
    case SummandKind::Free: os << "Free"; break;
    case SummandKind::PPow: os << "Ppow(" << a << ")"; break;
    case SummandKind::PUr: os << "PUr(" << a << "," << r << ")"; break;
    case SummandKind::FUr: {
      os << "FUr(" << alpha << ",[";
      for (size_t i = 0; i < unit_coeffs.size(); ++i)
        os << (i ? "," : "") << unit_coeffs[i];
      os << "]," << r << ")";
      break;
    }
  }
  return os.str();
}

void Presentation::validate() const {
  if (gens < 1) fail(errc::invalid_input, "presentation needs at least one generator");
  for (const auto& col : relations) {
    if ((int32_t)col.size() != gens)
      fail(errc::invalid_input, "relation column length must equal generator count");
    for (const auto& s : col)
      if (!(s.params() == params)) fail(errc::params_mismatch, "relation entry params mismatch");
  }
}

int32_t Presentation::max_relation_degree() const {
  int32_t d = -1;
  for (const auto& col : relations)
    for (const auto& s : col) d = std::max(d, s.degree());
  return d;
}

BKModule BKModule::from_summands(std::vector<CyclicSummand> s, int64_t p) {
  for (const auto& x : s) x.validate(p);
  std::sort(s.begin(), s.end());
  BKModule m;
  m.summands = std::move(s);
  return m;
}

BKModule BKModule::zero() {
  BKModule m;
  m.summands = std::vector<CyclicSummand>{};
  return m;
}

BKModule BKModule::from_presentation(Presentation pres) {
  pres.validate();
  BKModule m;
  m.presentation = std::move(pres);
  return m;
}

bool BKModule::operator==(const BKModule& o) const {
  if (has_summands() != o.has_summands()) return false;
  if (has_summands()) return *summands == *o.summands;
  // presentation equality is syntactic
  if (has_presentation() != o.has_presentation()) return false;
  if (!has_presentation()) return true;
  const auto& a = *presentation;
  const auto& b = *o.presentation;
  if (!(a.params == b.params) || a.gens != b.gens) return false;
  if (a.relations.size() != b.relations.size()) return false;
  for (size_t c = 0; c < a.relations.size(); ++c)
    for (int32_t i = 0; i < a.gens; ++i)
      if (!(a.relations[c][i] == b.relations[c][i])) return false;
  return true;
}

std::string BKModule::describe() const {
  if (has_summands()) {
    if (summands->empty()) return "0";
    std::string s;
    for (size_t i = 0; i < summands->size(); ++i) {
      if (i) s += " + ";
      s += (*summands)[i].describe();
    }
    return s;
  }
  std::ostringstream os;
  os << "presentation(gens=" << presentation->gens
     << ", rels=" << presentation->relations.size() << ")";
  return os.str();
}

CyclicSummand twist_summand(const CyclicSummand& s, int64_t n, int64_t p) {
  if (n == 0) return s;
  int64_t pn = checked_pow(p, n);
  switch (s.kind) {
    case SummandKind::Free:
    case SummandKind::PPow:
      return s;  // phi fixes p
    case SummandKind::PUr:
      return CyclicSummand::pur(s.a, s.r * pn);
    case SummandKind::FUr: {
      // unit coefficients re-index u^j -> u^{p^n j}
      std::vector<int64_t> c((s.unit_coeffs.size() - 1) * pn + 1, 0);
      for (size_t j = 0; j < s.unit_coeffs.size(); ++j) c[j * pn] = s.unit_coeffs[j];
      return CyclicSummand::fur(s.alpha * pn, std::move(c), s.r * pn);
    }
  }
  fail(errc::invalid_input, "unknown summand kind");
}

BKModule twist(const BKModule& m, int64_t n, int64_t p) {
  if (n < 0) fail(errc::invalid_input, "negative twist");
  if (n == 0) return m;
  BKModule out;
  if (m.has_summands()) {
    std::vector<CyclicSummand> t;
    t.reserve(m.summands->size());
    for (const auto& s : *m.summands) t.push_back(twist_summand(s, n, p));
    out = BKModule::from_summands(std::move(t), p);
    if (m.has_presentation()) {
      BKModule prespart = twist(BKModule::from_presentation(*m.presentation), n, p);
      out.presentation = prespart.presentation;
    }
    return out;
  }
  const Presentation& pres = *m.presentation;
  int64_t pn = checked_pow(p, n);
  int32_t d = pres.max_relation_degree();
  if (d >= 0 && (__int128)d * pn >= pres.params.u_prec)
    fail(errc::insufficient_precision,
         "relation degree would overflow u_prec under the twist");
  Presentation t;
  t.params = pres.params;
  t.gens = pres.gens;
  for (const auto& col : pres.relations) {
    std::vector<TruncatedSeries> tc;
    tc.reserve(col.size());
    for (const auto& s : col) tc.push_back(s.frobenius(n));
    t.relations.push_back(std::move(tc));
  }
  return BKModule::from_presentation(std::move(t));
}

void FiltrationPieces::validate(int64_t p) const {
  auto all_of_kinds = [&](const BKModule& m, auto pred) {
    if (!m.has_summands()) return true;  // presentation pieces validated by oracle
    for (const auto& s : *m.summands)
      if (!pred(s)) return false;
    return true;
  };
  (void)p;
  if (!all_of_kinds(u_infty, [](const CyclicSummand& s) {
        return s.kind == SummandKind::PUr || s.kind == SummandKind::FUr;
      }))
    fail(errc::invalid_input, "u_infty piece must be killed by powers of p and u");
  if (!all_of_kinds(tor_u_tf, [](const CyclicSummand& s) { return s.kind == SummandKind::PPow; }))
    fail(errc::invalid_input, "tor_u_tf piece must be p-power torsion and u-torsion free");
  if (!all_of_kinds(mbar, [](const CyclicSummand& s) {
        return s.kind == SummandKind::PUr || s.kind == SummandKind::FUr;
      }))
    fail(errc::invalid_input, "mbar piece must be killed by a power of (p, u)");
  if (free_rank < 0) fail(errc::invalid_input, "free rank must be non-negative");
}

FiltrationPieces filtration(const BKModule& m, int64_t p) {
  if (!m.has_summands())
    fail(errc::unsupported_summand,
         "filtration needs summand form; use the oracle for presentations");
  FiltrationPieces out;
  std::vector<CyclicSummand> ui, tor;
  for (const auto& s : *m.summands) {
    switch (s.kind) {
      case SummandKind::Free: out.free_rank++; break;
      case SummandKind::PPow: tor.push_back(s); break;
      case SummandKind::PUr:
      case SummandKind::FUr: ui.push_back(s); break;
    }
  }
  out.u_infty = BKModule::from_summands(std::move(ui), p);
  out.tor_u_tf = BKModule::from_summands(std::move(tor), p);
  out.validate(p);
  return out;
}

}  // namespace bk
