#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conjectures.hpp"
#include "module.hpp"

namespace bk::cli {

// A module entry is either a summand list or a presentation given by raw
// coefficient arrays (so documents are precision-independent until loaded).
struct ModuleEntry {
  std::optional<std::vector<CyclicSummand>> summands;
  struct RawPresentation {
    int32_t gens = 0;
    // relations[c][g] = coefficient array of the series at column c, row g
    std::vector<std::vector<std::vector<int64_t>>> relations;
    bool operator==(const RawPresentation&) const = default;
  };
  std::optional<RawPresentation> presentation;
  bool operator==(const ModuleEntry&) const = default;
};

struct EisensteinSpec {
  bool is_default = true;          // u^e - p
  int64_t e = 1;
  std::vector<int64_t> coeffs;     // c_0..c_{e-1} when explicit
  bool operator==(const EisensteinSpec&) const = default;
};

struct LedgerEntry {
  int64_t degree = 0;
  std::vector<int64_t> l_crys, l_dR, q_lengths, crys_exponents, dr_exponents;
  bool operator==(const LedgerEntry&) const = default;
};

struct SweepSpec {
  std::vector<int64_t> p_values = {2, 3};
  int64_t height = 2;
  std::vector<int64_t> e_values;
  int64_t r_max = 4;
  int64_t max_summands = 3;
  std::optional<int64_t> n_max;
  std::vector<std::vector<int64_t>> units = {{1}};
  bool operator==(const SweepSpec&) const = default;
};

struct ModuleSpecDocument {
  int64_t format_version = 1;
  int64_t p = 2;
  int32_t p_prec = 4;
  int32_t u_prec = 64;
  EisensteinSpec eisenstein;
  std::map<std::string, ModuleEntry> modules;
  std::map<std::string, LedgerEntry> ledgers;
  std::optional<SweepSpec> sweep;
  bool operator==(const ModuleSpecDocument&) const = default;
};

std::string to_json(const ModuleSpecDocument& doc);
ModuleSpecDocument parse_spec(const std::string& json_text);
ModuleSpecDocument load_spec_file(const std::string& path);

// Materialize pieces of a document.
RingParams ring_params(const ModuleSpecDocument& doc);
EisensteinPoly eisenstein(const ModuleSpecDocument& doc);
BKModule instantiate(const ModuleSpecDocument& doc, const std::string& name);
conj::LengthLedger ledger(const ModuleSpecDocument& doc, const std::string& name);
conj::SweepConfig sweep_config(const ModuleSpecDocument& doc);

}  // namespace bk::cli
