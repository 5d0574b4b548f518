#ifndef OAX_REPORT_HPP
#define OAX_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <oax/version.hpp>

namespace oax {

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string digest_hex(std::string_view data) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(data);
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return s;
}

// One verified identity. `anchor` names the identity being checked so a
// report line can be traced back to its source equation tag.
struct CheckRecord {
  std::string id;
  std::string anchor;
  std::string verdict;  // "pass" | "fail" | "info"
  std::string witness;
  double seconds = 0.0;
};

struct Report {
  std::string command;
  std::string input_id;
  std::string input_digest;
  std::uint64_t seed = 0;
  int order = 0;
  std::vector<CheckRecord> records;

  bool all_pass() const {
    for (const auto& r : records)
      if (r.verdict == "fail") return false;
    return true;
  }

  int fail_count() const {
    int c = 0;
    for (const auto& r : records) c += r.verdict == "fail" ? 1 : 0;
    return c;
  }

  void add(std::string id, std::string anchor, bool pass, std::string witness = "", double seconds = 0.0) {
    records.push_back(CheckRecord{std::move(id), std::move(anchor), pass ? "pass" : "fail", std::move(witness), seconds});
  }

  void add_info(std::string id, std::string anchor, std::string note, double seconds = 0.0) {
    records.push_back(CheckRecord{std::move(id), std::move(anchor), "info", std::move(note), seconds});
  }

  void sort_records() {
    std::stable_sort(records.begin(), records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  }

  // canonical form: sorted keys, records sorted by id; timings only on demand
  nlohmann::json to_json(bool with_timings = false) const {
    nlohmann::json j;
    j["command"] = command;
    j["input"] = input_id;
    j["input_digest"] = input_digest;
    j["seed"] = seed;
    j["order"] = order;
    j["version"] = kVersion;
    j["summary"] = {{"checks", records.size()}, {"failures", fail_count()}, {"all_pass", all_pass()}};
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records) {
      nlohmann::json jr;
      jr["id"] = r.id;
      jr["anchor"] = r.anchor;
      jr["verdict"] = r.verdict;
      if (!r.witness.empty()) jr["witness"] = r.witness;
      if (with_timings) jr["seconds"] = r.seconds;
      recs.push_back(std::move(jr));
    }
    j["checks"] = std::move(recs);
    return j;
  }

  std::string to_text(bool with_timings = false) const { return to_json(with_timings).dump(2) + "\n"; }
};

// container for several per-command reports serialized as one document
struct SuiteReport {
  std::uint64_t seed = 0;
  int order = 0;
  std::vector<Report> reports;

  bool all_pass() const {
    for (const auto& r : reports)
      if (!r.all_pass()) return false;
    return true;
  }

  nlohmann::json to_json(bool with_timings = false) const {
    nlohmann::json j;
    j["seed"] = seed;
    j["order"] = order;
    j["version"] = kVersion;
    bool ok = all_pass();
    int fails = 0;
    for (const auto& r : reports) fails += r.fail_count();
    j["summary"] = {{"reports", reports.size()}, {"failures", fails}, {"all_pass", ok}};
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : reports) rs.push_back(r.to_json(with_timings));
    j["reports"] = std::move(rs);
    return j;
  }

  std::string to_text(bool with_timings = false) const { return to_json(with_timings).dump(2) + "\n"; }
};

}  // namespace oax

#endif
