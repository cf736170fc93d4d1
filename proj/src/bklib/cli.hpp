#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "report.hpp"

namespace bk::cli {

// Exit codes: 0 pass, 1 mathematical counterexample or check failure,
// 2 usage/input error, 3 precision error.
constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;

struct CommonFlags {
  std::optional<std::string> spec_file;
  std::optional<std::string> out_file;
  std::string format = "csv";  // csv | json
  int jobs = 0;
  int64_t budget = 1'000'000;
  int64_t n_max = 3;
};

int cmd_lengths(const CommonFlags& flags, const std::string& module_name, std::ostream& os);
int cmd_sweep_beta(const CommonFlags& flags, bool inject_mutant, std::ostream& os);
int cmd_example(const CommonFlags& flags, const std::string& name, int64_t p, std::ostream& os);
int cmd_ledger(const CommonFlags& flags, const std::string& ledger_name, std::ostream& os);
int cmd_verify(const std::string& level, int jobs, int64_t budget, bool inject_fault,
               std::ostream& os);

// map a thrown bk::error to the exit-code contract
int exit_code_for(const error& e);

// read BKCTL_BUDGET when the flag was not given
int64_t effective_budget(std::optional<int64_t> flag_value);

void emit_report(const Report& report, const CommonFlags& flags, std::ostream& os);

}  // namespace bk::cli
