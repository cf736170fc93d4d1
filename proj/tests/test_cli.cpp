#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bklib/cli.hpp"
#include "bklib/spec_io.hpp"

using namespace bk;
using namespace bk::cli;

namespace {

ModuleSpecDocument sample_doc() {
  ModuleSpecDocument doc;
  doc.p = 3;
  doc.p_prec = 4;
  doc.u_prec = 64;
  doc.eisenstein.is_default = true;
  doc.eisenstein.e = 4;
  ModuleEntry m;
  m.summands = {CyclicSummand::pur(1, 2), CyclicSummand::fur(1, {1}, 3)};
  doc.modules["torsion"] = m;
  ModuleEntry pres;
  ModuleEntry::RawPresentation rp;
  rp.gens = 2;
  rp.relations = {{{0, 1}, {-3}}};
  pres.presentation = rp;
  doc.modules["ideal"] = pres;
  LedgerEntry l;
  l.degree = 2;
  l.l_crys = {1, 1, 1};
  l.l_dR = {2, 4, 4};
  doc.ledgers["sample"] = l;
  SweepSpec s;
  doc.sweep = s;
  return doc;
}

std::string temp_path(const std::string& stem) {
  return std::string("/tmp/bkctl_test_") + stem + ".json";
}

}  // namespace

TEST_CASE("spec document round-trip") {
  auto doc = sample_doc();
  auto text = to_json(doc);
  auto back = parse_spec(text);
  CHECK(back == doc);
  // and a second serialize is byte-identical
  CHECK(to_json(back) == text);
}

TEST_CASE("spec validation failures") {
  CHECK_THROWS_AS(parse_spec("not json"), error);
  CHECK_THROWS_AS(parse_spec("{}"), error);
  // bad Eisenstein: constant term divisible by p^2
  std::string bad = R"({"format_version":1,"ring":{"p":2,"p_prec":3,"u_prec":16},
    "eisenstein":{"kind":"explicit","e":2,"coeffs":[4,2]},"modules":{}})";
  CHECK_THROWS_AS(parse_spec(bad), error);
  std::string badver = R"({"format_version":2,"ring":{"p":2,"p_prec":3,"u_prec":16},
    "eisenstein":{"kind":"default","e":2},"modules":{}})";
  CHECK_THROWS_AS(parse_spec(badver), error);
}

TEST_CASE("instantiate modules from a document") {
  auto doc = sample_doc();
  auto m = instantiate(doc, "torsion");
  CHECK(m.has_summands());
  CHECK(m.summands->size() == 2);
  auto ideal = instantiate(doc, "ideal");
  CHECK(ideal.has_presentation());
  CHECK(ideal.presentation->gens == 2);
  CHECK_THROWS_AS(instantiate(doc, "missing"), error);
}

TEST_CASE("report determinism modulo the timestamp line") {
  Report rep;
  ReportRow row;
  row.check = "demo";
  row.p = "3";
  row.verdict = "pass";
  rep.add(row);
  auto strip = [](std::string s) {
    if (s.rfind("# generated-at:", 0) == 0) return s.substr(s.find('\n') + 1);
    return s;
  };
  CHECK(strip(to_csv(rep)) == strip(to_csv(rep)));
  CHECK(to_csv(rep, false) == to_csv(rep, false));
  CHECK(to_json(rep, false) == to_json(rep, false));
}

TEST_CASE("cmd_lengths through a spec file") {
  auto doc = sample_doc();
  ModuleEntry empty;
  empty.summands = std::vector<CyclicSummand>{};
  doc.modules["empty"] = empty;
  ModuleEntry freemod;
  freemod.summands = {CyclicSummand::free_rank_one()};
  doc.modules["free"] = freemod;
  auto path = temp_path("lengths");
  write_file(path, to_json(doc));
  CommonFlags flags;
  flags.spec_file = path;
  flags.n_max = 2;
  std::ostringstream os;
  int rc = cmd_lengths(flags, "torsion", os);
  CHECK(rc == kExitPass);
  CHECK(os.str().find("yes") != std::string::npos);

  // the empty module reports all zeros, the free module zero torsion rows
  std::ostringstream os2;
  CHECK(cmd_lengths(flags, "empty", os2) == kExitPass);
  CHECK(os2.str().find(" 0") != std::string::npos);
  std::ostringstream os3;
  CHECK(cmd_lengths(flags, "free", os3) == kExitPass);
  std::remove(path.c_str());
}

TEST_CASE("cmd_lengths rejects unknown modules with exit 2 semantics") {
  auto doc = sample_doc();
  auto path = temp_path("badmod");
  write_file(path, to_json(doc));
  CommonFlags flags;
  flags.spec_file = path;
  std::ostringstream os;
  CHECK_THROWS_AS(cmd_lengths(flags, "missing", os), error);
  try {
    cmd_lengths(flags, "missing", os);
  } catch (const error& e) {
    CHECK(exit_code_for(e) == kExitUsage);
  }
  std::remove(path.c_str());
}

TEST_CASE("precision errors map to exit 3") {
  error e(errc::insufficient_precision, "x");
  CHECK(exit_code_for(e) == kExitPrecision);
}

TEST_CASE("cmd_sweep_beta exit codes") {
  CommonFlags flags;
  flags.jobs = 1;
  std::ostringstream os;
  CHECK(cmd_sweep_beta(flags, false, os) == kExitPass);
  CHECK(cmd_sweep_beta(flags, true, os) == kExitCounterexample);
}

TEST_CASE("cmd_example") {
  CommonFlags flags;
  std::ostringstream os;
  CHECK(cmd_example(flags, "li-petrov", 2, os) == kExitPass);
  CHECK(cmd_example(flags, "bk-group-scheme", 3, os) == kExitPass);
  CHECK(cmd_example(flags, "p-torsion", 5, os) == kExitPass);
  CHECK_THROWS_AS(cmd_example(flags, "nope", 2, os), error);
}

TEST_CASE("cmd_ledger") {
  auto doc = sample_doc();
  auto path = temp_path("ledger");
  write_file(path, to_json(doc));
  CommonFlags flags;
  flags.spec_file = path;
  std::ostringstream os;
  CHECK(cmd_ledger(flags, "sample", os) == kExitPass);
  std::remove(path.c_str());
}

TEST_CASE("report files are written in both formats") {
  CommonFlags flags;
  flags.jobs = 1;
  flags.out_file = temp_path("report");
  flags.format = "json";
  std::ostringstream os;
  CHECK(cmd_sweep_beta(flags, false, os) == kExitPass);
  std::ifstream in(*flags.out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("format_version") != std::string::npos);
  std::remove(flags.out_file->c_str());
}

TEST_CASE("budget environment override") {
  CHECK(effective_budget(int64_t(42)) == 42);
  setenv("BKCTL_BUDGET", "777", 1);
  CHECK(effective_budget(std::nullopt) == 777);
  unsetenv("BKCTL_BUDGET");
  CHECK(effective_budget(std::nullopt) == 1'000'000);
}
