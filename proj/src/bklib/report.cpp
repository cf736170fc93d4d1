#include "report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace bk::cli {

namespace {

std::string now_iso8601() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

bool Report::all_pass() const {
  for (const auto& r : rows)
    if (r.verdict == "fail") return false;
  return true;
}

std::string to_csv(const Report& report, bool with_timestamp) {
  std::ostringstream os;
  if (with_timestamp) os << "# generated-at: " << now_iso8601() << "\n";
  os << "check,p,e,alpha,module,n,value,oracle,verdict,detail\n";
  for (const auto& r : report.rows) {
    os << csv_escape(r.check) << ',' << r.p << ',' << r.e << ',' << r.alpha << ','
       << csv_escape(r.module_id) << ',' << r.n << ',' << r.value << ',' << r.oracle << ','
       << r.verdict << ',' << csv_escape(r.detail) << "\n";
  }
  return os.str();
}

std::string to_json(const Report& report, bool with_timestamp) {
  nlohmann::json j;
  j["format_version"] = 1;
  if (with_timestamp) j["generated_at"] = now_iso8601();
  j["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) {
    j["rows"].push_back({{"check", r.check},
                         {"p", r.p},
                         {"e", r.e},
                         {"alpha", r.alpha},
                         {"module", r.module_id},
                         {"n", r.n},
                         {"value", r.value},
                         {"oracle", r.oracle},
                         {"verdict", r.verdict},
                         {"detail", r.detail}});
  }
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(errc::invalid_input, "cannot write file: " + path);
  out << content;
}

}  // namespace bk::cli
