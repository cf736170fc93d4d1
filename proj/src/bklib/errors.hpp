#pragma once

#include <stdexcept>
#include <string>

namespace bk {

enum class errc {
  params_mismatch,
  insufficient_precision,
  overflow,
  budget_exceeded,
  infinite_module,
  not_p_power,
  unsupported_summand,
  mixed_p_power,
  search_inconclusive,
  hypothesis_unmet,
  window_too_short,
  q_exceeds_bound,
  count_mismatch,
  invalid_input,
};

// All library failures are thrown as bk::error. The CLI layer maps codes to
// process exit statuses.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::params_mismatch: return "params_mismatch";
    case errc::insufficient_precision: return "insufficient_precision";
    case errc::overflow: return "overflow";
    case errc::budget_exceeded: return "budget_exceeded";
    case errc::infinite_module: return "infinite_module";
    case errc::not_p_power: return "not_p_power";
    case errc::unsupported_summand: return "unsupported_summand";
    case errc::mixed_p_power: return "mixed_p_power";
    case errc::search_inconclusive: return "search_inconclusive";
    case errc::hypothesis_unmet: return "hypothesis_unmet";
    case errc::window_too_short: return "window_too_short";
    case errc::q_exceeds_bound: return "q_exceeds_bound";
    case errc::count_mismatch: return "count_mismatch";
    case errc::invalid_input: return "invalid_input";
  }
  return "unknown";
}

}  // namespace bk
