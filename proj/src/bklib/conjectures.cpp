#include "conjectures.hpp"

#include <algorithm>
#include <sstream>

#include "grid.hpp"

namespace bk::conj {

DerivedConstants derive_constants(int64_t p, int64_t e) {
  if (!is_prime(p) || e < 1) fail(errc::invalid_input, "derive_constants expects prime p, e >= 1");
  DerivedConstants c;
  c.p = p;
  c.e = e;
  c.a = 0;
  int64_t pn = 1;
  while (pn * (p - 1) < e) {
    pn *= p;
    c.a += 1;
  }
  c.e_tilde = (e + p - 2) / (p - 1);
  return c;
}

BetaReport beta_check(const BetaProfile& profile, const DerivedConstants& consts) {
  const auto& f = profile.values;
  if ((int64_t)f.size() <= consts.a)
    fail(errc::window_too_short, "profile window must cover n = 0 .. a");
  BetaReport rep;
  rep.cond1 = f[consts.a] <= consts.e * f[0];
  if (!rep.cond1) rep.violations.push_back(-1);
  rep.cond2 = true;
  for (size_t n = 0; n + 1 < f.size(); ++n) {
    if (f[n] > f[n + 1]) {
      rep.cond2 = false;
      rep.violations.push_back((int64_t)n);
    }
  }
  return rep;
}

InequalityReport main_inequality_check(int64_t l_crys, int64_t l_dR, int64_t e) {
  if (l_crys < 0 || l_dR < 0 || e < 1) fail(errc::invalid_input, "lengths must be non-negative");
  InequalityReport rep;
  rep.left_ok = l_crys <= l_dR;
  rep.right_ok = l_dR <= e * l_crys;
  rep.slack_left = l_dR - l_crys;
  rep.slack_right = e * l_crys - l_dR;
  return rep;
}

int64_t ledger_l_dR(const FiltrationPieces& pieces, int64_t q_len, const EisensteinPoly& E,
                    int64_t p, int64_t n, std::optional<int64_t> q_bound,
                    const oracle::Options& opts) {
  if (q_len < 0) fail(errc::invalid_input, "Q-length must be non-negative");
  if (q_bound && q_len > *q_bound)
    fail(errc::q_exceeds_bound, "supplied Q-length exceeds the E-torsion bound");
  return lengths::length_contributions(pieces, E, p, n + 1, opts).total + q_len;
}

void LengthLedger::validate() const {
  for (size_t n = 1; n < l_crys.size(); ++n)
    if (l_crys[n] != l_crys[0])
      fail(errc::invalid_input, "l_crys must be constant in the twist");
  if (!crys_exponents.empty() || !dr_exponents.empty()) {
    if (crys_exponents.size() != dr_exponents.size())
      fail(errc::count_mismatch, "crystalline and de Rham summand counts must agree (r = s)");
    int64_t sa = 0, sb = 0;
    for (int64_t a : crys_exponents) sa += a;
    for (int64_t b : dr_exponents) sb += b;
    if (!l_crys.empty() && sa != l_crys[0])
      fail(errc::invalid_input, "sum of a_i must equal l_crys");
    if (!l_dR.empty() && sb != l_dR[0])
      fail(errc::invalid_input, "sum of b_j must equal l_dR");
  }
}

StabilityReport stability_check(const LengthLedger& ledger, const DerivedConstants& consts) {
  ledger.validate();
  if ((int64_t)ledger.l_dR.size() <= consts.a || ledger.l_crys.empty())
    fail(errc::window_too_short, "ledger must cover n = 0 .. a");
  StabilityReport rep;
  rep.identity_ok = true;
  rep.constant_ok = true;
  int64_t stable = ledger.l_dR[consts.a];
  for (size_t n = consts.a; n < ledger.l_dR.size(); ++n) {
    if (ledger.l_dR[n] != consts.e * ledger.l_crys[0]) {
      rep.identity_ok = false;
      rep.failures.push_back((int64_t)n);
    }
    if (ledger.l_dR[n] != stable) {
      rep.constant_ok = false;
      rep.failures.push_back((int64_t)n);
    }
  }
  return rep;
}

GammaReport gamma_check(const std::vector<int64_t>& q_lengths, const DerivedConstants& consts) {
  if ((int64_t)q_lengths.size() <= consts.a)
    fail(errc::window_too_short, "Q-length window must cover n = 0 .. a");
  GammaReport rep;
  rep.window_ok = q_lengths[consts.a] >= q_lengths[0];
  if (!rep.window_ok) rep.violations.push_back(-1);
  rep.monotone = true;
  for (size_t n = 0; n + 1 < q_lengths.size(); ++n)
    if (q_lengths[n] > q_lengths[n + 1]) {
      rep.monotone = false;
      rep.violations.push_back((int64_t)n);
    }
  return rep;
}

PTorsionReport p_torsion_bound_check(const std::vector<int64_t>& a_exponents,
                                     const std::vector<int64_t>& b_exponents, int64_t e) {
  if (a_exponents.size() != b_exponents.size())
    fail(errc::count_mismatch, "exponent counts differ (r != s)");
  for (int64_t b : b_exponents)
    if (b < 1) fail(errc::invalid_input, "b_j must be >= 1");
  for (int64_t a : a_exponents)
    if (a < 1) fail(errc::invalid_input, "a_i must be >= 1");
  PTorsionReport rep;
  rep.all_b_within_e = std::all_of(b_exponents.begin(), b_exponents.end(),
                                   [&](int64_t b) { return b <= e; });
  int64_t l_crys = 0, l_dR = 0;
  for (int64_t a : a_exponents) l_crys += a;
  for (int64_t b : b_exponents) l_dR += b;
  if (rep.all_b_within_e) rep.right_ok = l_dR <= e * l_crys;
  rep.left_applicable =
      std::all_of(a_exponents.begin(), a_exponents.end(), [](int64_t a) { return a == 1; });
  if (rep.left_applicable) rep.left_ok = l_crys <= l_dR;
  return rep;
}

namespace {

struct SweepCell {
  int64_t p, e, alpha;  // alpha = 0 marks a p-torsion cell
  std::vector<int64_t> unit;
  std::vector<int64_t> rs;
  int64_t n_max;
};

void multisets(int64_t r_max, int64_t size, int64_t start, std::vector<int64_t>& cur,
               std::vector<std::vector<int64_t>>& out) {
  if ((int64_t)cur.size() == size) {
    out.push_back(cur);
    return;
  }
  for (int64_t r = start; r <= r_max; ++r) {
    cur.push_back(r);
    multisets(r_max, size, r, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int64_t>> all_multisets(int64_t r_max, int64_t max_size) {
  std::vector<std::vector<int64_t>> out;
  std::vector<int64_t> cur;
  for (int64_t s = 1; s <= max_size; ++s) multisets(r_max, s, 1, cur, out);
  return out;
}

std::string desc_of(const SweepCell& c) {
  std::ostringstream os;
  if (c.alpha == 0) {
    os << "sum of k[u]/u^r for r in {";
  } else {
    os << "sum of S/(u^" << c.alpha << "+p*x, u^r) for r in {";
  }
  for (size_t i = 0; i < c.rs.size(); ++i) os << (i ? "," : "") << c.rs[i];
  os << "}";
  if (c.alpha != 0) {
    os << ", x=[";
    for (size_t i = 0; i < c.unit.size(); ++i) os << (i ? "," : "") << c.unit[i];
    os << "]";
  }
  return os.str();
}

}  // namespace

SweepReport sweep_beta(const SweepConfig& config) {
  std::vector<SweepCell> cells;
  for (int64_t p : config.p_values) {
    std::vector<int64_t> es = config.e_values;
    if (es.empty())
      for (int64_t e = 1; e < p * (p - 1); ++e) es.push_back(e);
    for (int64_t e : es) {
      if (e >= p * (p - 1)) continue;  // outside the theorem window
      auto consts = derive_constants(p, e);
      int64_t n_max = config.n_max.value_or(consts.a + 2);
      auto shapes = all_multisets(config.r_max, config.max_summands);
      // p-torsion cells
      for (const auto& rs : shapes) cells.push_back({p, e, 0, {}, rs, n_max});
      // binomial-annihilator cells: one shared (alpha, x) per module, with
      // alpha within the height-2 bound and p*alpha != e
      int64_t alpha_max = e * (config.height - 1) / (p - 1);
      for (int64_t alpha = 1; alpha <= alpha_max; ++alpha) {
        if (p * alpha == e) continue;
        for (const auto& unit : config.units)
          for (const auto& rs : shapes) cells.push_back({p, e, alpha, unit, rs, n_max});
      }
    }
  }

  oracle::Options opts;
  opts.budget = config.budget;
  auto outcomes = grid::run_cells(
      cells.size(),
      [&](size_t i) {
        const SweepCell& c = cells[i];
        grid::CellOutcome out;
        std::ostringstream key;
        key << "p=" << c.p << " e=" << c.e << " alpha=" << c.alpha << " " << desc_of(c);
        out.key = key.str();
        auto E = EisensteinPoly::default_poly(c.p, c.e);
        std::vector<CyclicSummand> summands;
        for (int64_t r : c.rs) {
          if (c.alpha == 0)
            summands.push_back(CyclicSummand::pur(1, r));
          else if (r > c.alpha)  // r <= alpha collapses to the p-torsion shape
            summands.push_back(CyclicSummand::fur(c.alpha, c.unit, r));
          else
            summands.push_back(CyclicSummand::pur(1, r));
        }
        auto m = BKModule::from_summands(std::move(summands), c.p);
        BetaProfile profile;
        for (int64_t n = 0; n <= c.n_max; ++n)
          profile.values.push_back(lengths::e_torsion_length(m, E, c.p, n + 1, opts));
        auto consts = derive_constants(c.p, c.e);
        auto rep = beta_check(profile, consts);
        if (!rep.pass()) {
          std::ostringstream detail;
          detail << (rep.cond1 ? "" : "f(a) > e*f(0); ") << (rep.cond2 ? "" : "not monotone; ");
          detail << "profile:";
          for (int64_t v : profile.values) detail << " " << v;
          out.pass = false;
          out.detail = detail.str();
        }
        return out;
      },
      config.jobs);

  SweepReport rep;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.skipped) {
      rep.cells_skipped++;
      continue;
    }
    rep.cells_run++;
    if (!o.pass) {
      SweepRow row;
      row.p = cells[i].p;
      row.e = cells[i].e;
      row.alpha = cells[i].alpha;
      row.module_desc = desc_of(cells[i]);
      row.condition = o.detail;
      rep.violations.push_back(std::move(row));
    }
  }
  if (config.inject_mutant) {
    SweepRow row;
    row.p = config.p_values.empty() ? 2 : config.p_values[0];
    row.e = 1;
    row.module_desc = "synthetic mutant profile (test hook)";
    row.condition = "injected violation";
    row.profile = {5, 3};
    rep.violations.push_back(std::move(row));
  }
  return rep;
}

LiPetrovReport example_li_petrov(int64_t p) {
  if (!is_prime(p)) fail(errc::invalid_input, "p must be prime");
  LiPetrovReport rep;
  rep.p = p;
  int64_t p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  rep.e = p4 - p2;
  rep.l2_crys = 2;
  rep.l3_crys = 1;
  rep.l2_dR = (2 * rep.e - p3 + p2) + (p3 - p2);  // = 2e
  rep.l3_dR = p3 - p2;
  rep.deg2 = main_inequality_check(rep.l2_crys, rep.l2_dR, rep.e);
  rep.deg3 = main_inequality_check(rep.l3_crys, rep.l3_dR, rep.e);
  rep.deg2_right_equality = rep.l2_dR == rep.e * rep.l2_crys;
  rep.deg3_strict = rep.l3_crys == 1 && rep.l3_crys < rep.l3_dR && rep.l3_dR < rep.e * rep.l3_crys;
  return rep;
}

BKGroupSchemeReport example_bk_group_scheme(int64_t p, std::optional<int64_t> e_opt) {
  BKGroupSchemeReport rep;
  rep.p = p;
  rep.e = e_opt.value_or(p * (p - 1) - 1);
  if (rep.e < 1) fail(errc::invalid_input, "e must be >= 1");
  auto E = EisensteinPoly::default_poly(p, rep.e);
  auto consts = derive_constants(p, rep.e);
  auto m = BKModule::from_summands({CyclicSummand::pur(1, 1)}, p);  // M = k
  rep.matches_closed_form = true;
  for (int64_t n = 0; n <= consts.a + 2; ++n) {
    int64_t f = lengths::e_torsion_length(m, E, p, n + 1);
    rep.profile.values.push_back(f);
    int64_t closed = std::min(rep.e, lengths::twisted_exponent(p, n + 1, 1));
    if (f != closed) rep.matches_closed_form = false;
  }
  rep.beta = beta_check(rep.profile, consts);
  return rep;
}

}  // namespace bk::conj
