#include "spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bk::cli {

using nlohmann::json;

namespace {

json summand_to_json(const CyclicSummand& s) {
  json j;
  switch (s.kind) {
    case SummandKind::Free: j["kind"] = "Free"; break;
    case SummandKind::PPow:
      j["kind"] = "Ppow";
      j["a"] = s.a;
      break;
    case SummandKind::PUr:
      j["kind"] = "PUr";
      j["a"] = s.a;
      j["r"] = s.r;
      break;
    case SummandKind::FUr:
      j["kind"] = "FUr";
      j["alpha"] = s.alpha;
      j["r"] = s.r;
      j["unit_coeffs"] = s.unit_coeffs;
      break;
  }
  return j;
}

CyclicSummand summand_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Free") return CyclicSummand::free_rank_one();
  if (kind == "Ppow") return CyclicSummand::ppow(j.at("a").get<int64_t>());
  if (kind == "PUr") return CyclicSummand::pur(j.at("a").get<int64_t>(), j.at("r").get<int64_t>());
  if (kind == "FUr")
    return CyclicSummand::fur(j.at("alpha").get<int64_t>(),
                              j.at("unit_coeffs").get<std::vector<int64_t>>(),
                              j.at("r").get<int64_t>());
  fail(errc::invalid_input, "unknown summand kind: " + kind);
}

json entry_to_json(const ModuleEntry& m) {
  json j;
  if (m.summands) {
    json arr = json::array();
    for (const auto& s : *m.summands) arr.push_back(summand_to_json(s));
    j["summands"] = arr;
  }
  if (m.presentation) {
    j["presentation"] = {{"gens", m.presentation->gens},
                         {"relations", m.presentation->relations}};
  }
  return j;
}

ModuleEntry entry_from_json(const json& j) {
  ModuleEntry m;
  if (j.contains("summands")) {
    std::vector<CyclicSummand> out;
    for (const auto& s : j.at("summands")) out.push_back(summand_from_json(s));
    m.summands = std::move(out);
  }
  if (j.contains("presentation")) {
    ModuleEntry::RawPresentation rp;
    rp.gens = j.at("presentation").at("gens").get<int32_t>();
    rp.relations =
        j.at("presentation").at("relations").get<std::vector<std::vector<std::vector<int64_t>>>>();
    m.presentation = std::move(rp);
  }
  if (!m.summands && !m.presentation)
    fail(errc::invalid_input, "module entry needs summands or a presentation");
  return m;
}

}  // namespace

std::string to_json(const ModuleSpecDocument& doc) {
  json j;
  j["format_version"] = doc.format_version;
  j["ring"] = {{"p", doc.p}, {"p_prec", doc.p_prec}, {"u_prec", doc.u_prec}};
  if (doc.eisenstein.is_default) {
    j["eisenstein"] = {{"kind", "default"}, {"e", doc.eisenstein.e}};
  } else {
    j["eisenstein"] = {{"kind", "explicit"}, {"e", doc.eisenstein.e},
                       {"coeffs", doc.eisenstein.coeffs}};
  }
  j["modules"] = json::object();
  for (const auto& [name, m] : doc.modules) j["modules"][name] = entry_to_json(m);
  j["ledgers"] = json::object();
  for (const auto& [name, l] : doc.ledgers) {
    json lj = {{"degree", l.degree}, {"l_crys", l.l_crys}, {"l_dR", l.l_dR}};
    if (!l.q_lengths.empty()) lj["q_lengths"] = l.q_lengths;
    if (!l.crys_exponents.empty()) lj["crys_exponents"] = l.crys_exponents;
    if (!l.dr_exponents.empty()) lj["dr_exponents"] = l.dr_exponents;
    j["ledgers"][name] = lj;
  }
  if (doc.sweep) {
    json sj = {{"p_values", doc.sweep->p_values}, {"height", doc.sweep->height},
               {"r_max", doc.sweep->r_max},       {"max_summands", doc.sweep->max_summands},
               {"units", doc.sweep->units}};
    if (!doc.sweep->e_values.empty()) sj["e_values"] = doc.sweep->e_values;
    if (doc.sweep->n_max) sj["n_max"] = *doc.sweep->n_max;
    j["sweep"] = sj;
  }
  return j.dump(2) + "\n";
}

ModuleSpecDocument parse_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(errc::invalid_input, std::string("spec file is not valid JSON: ") + e.what());
  }
  try {
    ModuleSpecDocument doc;
    doc.format_version = j.at("format_version").get<int64_t>();
    if (doc.format_version != 1)
      fail(errc::invalid_input, "unsupported format_version (expected 1)");
    doc.p = j.at("ring").at("p").get<int64_t>();
    doc.p_prec = j.at("ring").at("p_prec").get<int32_t>();
    doc.u_prec = j.at("ring").at("u_prec").get<int32_t>();
    const auto& ej = j.at("eisenstein");
    doc.eisenstein.e = ej.at("e").get<int64_t>();
    doc.eisenstein.is_default = ej.at("kind").get<std::string>() == "default";
    if (!doc.eisenstein.is_default)
      doc.eisenstein.coeffs = ej.at("coeffs").get<std::vector<int64_t>>();
    if (j.contains("modules"))
      for (const auto& [name, mj] : j.at("modules").items())
        doc.modules[name] = entry_from_json(mj);
    if (j.contains("ledgers"))
      for (const auto& [name, lj] : j.at("ledgers").items()) {
        LedgerEntry l;
        l.degree = lj.value("degree", int64_t(0));
        l.l_crys = lj.value("l_crys", std::vector<int64_t>{});
        l.l_dR = lj.value("l_dR", std::vector<int64_t>{});
        l.q_lengths = lj.value("q_lengths", std::vector<int64_t>{});
        l.crys_exponents = lj.value("crys_exponents", std::vector<int64_t>{});
        l.dr_exponents = lj.value("dr_exponents", std::vector<int64_t>{});
        doc.ledgers[name] = std::move(l);
      }
    if (j.contains("sweep")) {
      SweepSpec s;
      const auto& sj = j.at("sweep");
      s.p_values = sj.value("p_values", std::vector<int64_t>{2, 3});
      s.height = sj.value("height", int64_t(2));
      s.e_values = sj.value("e_values", std::vector<int64_t>{});
      s.r_max = sj.value("r_max", int64_t(4));
      s.max_summands = sj.value("max_summands", int64_t(3));
      if (sj.contains("n_max") && !sj.at("n_max").is_null())
        s.n_max = sj.at("n_max").get<int64_t>();
      s.units = sj.value("units", std::vector<std::vector<int64_t>>{{1}});
      doc.sweep = std::move(s);
    }
    // validate eagerly so malformed documents fail at load time
    ring_params(doc);
    eisenstein(doc);
    for (const auto& [name, m] : doc.modules) instantiate(doc, name);
    return doc;
  } catch (const json::exception& e) {
    fail(errc::invalid_input, std::string("malformed spec document: ") + e.what());
  }
}

ModuleSpecDocument load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_input, "cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

RingParams ring_params(const ModuleSpecDocument& doc) {
  return RingParams(doc.p, doc.p_prec, doc.u_prec);
}

EisensteinPoly eisenstein(const ModuleSpecDocument& doc) {
  if (doc.eisenstein.is_default) return EisensteinPoly::default_poly(doc.p, doc.eisenstein.e);
  EisensteinPoly E{doc.eisenstein.e, doc.eisenstein.coeffs};
  E.validate(doc.p);
  return E;
}

BKModule instantiate(const ModuleSpecDocument& doc, const std::string& name) {
  auto it = doc.modules.find(name);
  if (it == doc.modules.end()) fail(errc::invalid_input, "no module named '" + name + "'");
  const ModuleEntry& entry = it->second;
  if (entry.summands) return BKModule::from_summands(*entry.summands, doc.p);
  RingParams pr = ring_params(doc);
  Presentation pres;
  pres.params = pr;
  pres.gens = entry.presentation->gens;
  for (const auto& col : entry.presentation->relations) {
    if ((int32_t)col.size() != pres.gens)
      fail(errc::invalid_input, "relation column length must equal gens");
    std::vector<TruncatedSeries> c;
    for (const auto& coeffs : col) c.push_back(TruncatedSeries::from_coeffs(pr, coeffs));
    pres.relations.push_back(std::move(c));
  }
  return BKModule::from_presentation(std::move(pres));
}

conj::LengthLedger ledger(const ModuleSpecDocument& doc, const std::string& name) {
  auto it = doc.ledgers.find(name);
  if (it == doc.ledgers.end()) fail(errc::invalid_input, "no ledger named '" + name + "'");
  conj::LengthLedger l;
  l.degree = it->second.degree;
  l.l_crys = it->second.l_crys;
  l.l_dR = it->second.l_dR;
  l.q_lengths = it->second.q_lengths;
  l.crys_exponents = it->second.crys_exponents;
  l.dr_exponents = it->second.dr_exponents;
  return l;
}

conj::SweepConfig sweep_config(const ModuleSpecDocument& doc) {
  conj::SweepConfig cfg;
  if (!doc.sweep) return cfg;
  cfg.p_values = doc.sweep->p_values;
  cfg.height = doc.sweep->height;
  cfg.e_values = doc.sweep->e_values;
  cfg.r_max = doc.sweep->r_max;
  cfg.max_summands = doc.sweep->max_summands;
  cfg.n_max = doc.sweep->n_max;
  cfg.units = doc.sweep->units;
  return cfg;
}

}  // namespace bk::cli
